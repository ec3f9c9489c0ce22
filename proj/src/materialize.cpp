#include "conelab/catalog.hpp"

#include "conelab/error.hpp"

namespace conelab {

DivisorClass resolve(const ClassSpec& spec, const SymbolTable& symbols, std::size_t rank) {
  if (const auto* s = std::get_if<std::string>(&spec.value)) return parse_class_expression(*s, symbols, rank);
  const auto& v = std::get<Vector>(spec.value);
  if (v.size() != rank) {
    throw Error(ErrorCode::dimension_mismatch, "coefficient row has " + std::to_string(v.size()) +
                                                   " entries, lattice rank is " + std::to_string(rank));
  }
  return DivisorClass(v);
}

namespace {

std::vector<std::size_t> indices_of(const SurfaceLattice& lat, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  for (const auto& n : names) {
    auto i = lat.index_of(n);
    if (!i) throw Error(ErrorCode::invalid_argument, "reduce_to names unknown basis class " + n);
    idx.push_back(*i);
  }
  return idx;
}

// Replaces lat by a sub-basis; symbols map every original name to its image.
SurfaceLattice reduce(const SurfaceLattice& lat, const std::vector<std::string>& to, SymbolTable& symbols) {
  const auto& names = lat.basis_names();
  if (to.empty()) {
    for (std::size_t i = 0; i < lat.rank(); ++i) symbols[names[i]] = lat.basis_class(i);
    return lat;
  }
  auto idx = indices_of(lat, to);
  ReducedLattice red = reduce_to_basis(lat, idx);
  for (std::size_t i = 0; i < lat.rank(); ++i) symbols[names[i]] = red.images[i];
  return red.lattice;
}

}  // namespace

MaterializedEntry materialize(const SurfaceEntry& entry) {
  MaterializedEntry m;
  std::optional<SurfaceLattice> lat;
  const LatticeSpec& spec = entry.lattice;

  if (const auto* e = std::get_if<ExplicitLatticeSpec>(&spec.kind)) {
    lat = reduce(SurfaceLattice(e->gram, e->basis), e->reduce_to, m.symbols);
  } else if (const auto* d = std::get_if<DelPezzoLatticeSpec>(&spec.kind)) {
    BlowupLattice bl = build_blowup_lattice(d->config.r);
    lat = bl.lattice;
    for (std::size_t i = 0; i < lat->rank(); ++i) m.symbols[lat->basis_names()[i]] = lat->basis_class(i);
    m.realization = realize(d->config);
    for (const auto& rec : m.realization->realized) {
      m.curve_labels.push_back(rec.label);
      m.curve_classes[rec.label] = rec.cls;
      m.declared_genus[rec.label] = rec.genus;
    }
  } else {
    const auto& p = std::get<PqLatticeSpec>(spec.kind);
    PqLattice pq = build_pq_lattice(p.incidence);
    lat = reduce(pq.lattice, p.reduce_to, m.symbols);
    for (const auto& name : pq.lattice.basis_names()) {
      m.curve_labels.push_back(name);
      m.curve_classes[name] = m.symbols.at(name);
      m.declared_genus[name] = pq.genera.at(name);
    }
  }

  const std::size_t rank = lat->rank();
  for (const auto& c : entry.curves) {
    DivisorClass cls = resolve(c.cls, m.symbols, rank);
    if (m.curve_classes.count(c.label)) throw Error(ErrorCode::invalid_argument, "curve " + c.label + " listed twice");
    auto sym = m.symbols.find(c.label);
    if (sym != m.symbols.end() && !(sym->second == cls))
      throw Error(ErrorCode::invalid_argument, "curve label " + c.label + " clashes with a basis class");
    m.symbols[c.label] = cls;
    m.curve_labels.push_back(c.label);
    m.curve_classes[c.label] = cls;
    if (c.genus) m.declared_genus[c.label] = *c.genus;
  }

  if (spec.solve_canonical) {
    std::vector<PairingConstraint> cons;
    for (const auto& label : m.curve_labels) {
      auto g = m.declared_genus.find(label);
      if (g == m.declared_genus.end()) continue;
      const DivisorClass& c = m.curve_classes.at(label);
      cons.push_back({c, adjunction_k_degree(*lat, c, g->second)});
    }
    lat = lat->with_canonical(solve_class_from_pairings(*lat, cons));
  } else if (spec.canonical) {
    lat = lat->with_canonical(resolve(*spec.canonical, m.symbols, rank));
  }
  if (!lat->canonical()) throw Error(ErrorCode::canonical_missing, "entry " + entry.id + " has no canonical class");
  if (!spec.torsion_note.empty())
    lat = SurfaceLattice(lat->gram(), lat->basis_names(), lat->canonical(), std::nullopt, spec.torsion_note);
  m.symbols["K"] = *lat->canonical();
  m.lattice = std::make_shared<const SurfaceLattice>(*lat);

  if (entry.cover) {
    CoverDescriptor cov;
    cov.degree = entry.cover->degree;
    cov.canonical_multiplier = entry.cover->canonical_multiplier;
    cov.canonical_pullback = resolve(entry.cover->canonical_pullback, m.symbols, rank);
    cov.ramification = entry.cover->ramification;
    cov.base = m.lattice;
    cov.roster = m.curve_classes;
    validate(cov);
    m.cover = std::move(cov);
  }

  if (entry.eff_generators) {
    for (const auto& g : *entry.eff_generators) m.eff.push_back(resolve(g, m.symbols, rank));
  } else {
    for (const auto& label : m.curve_labels) m.eff.push_back(m.curve_classes.at(label));
  }
  if (entry.nef_generators) {
    m.nef.emplace();
    for (const auto& g : *entry.nef_generators) m.nef->push_back(resolve(g, m.symbols, rank));
  }
  return m;
}

}  // namespace conelab

#include "conelab/catalog.hpp"

#include "conelab/error.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace conelab {

using nlohmann::json;

namespace {

const std::set<std::string> kFamilies{"fake_projective_plane", "isogenous_unmixed", "inoue", "chen",
                                      "kulikov",               "burniat",           "pq"};

struct Reader {
  LoadMode mode;
  std::vector<std::string>* warnings;

  [[noreturn]] static void fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::schema, path + ": " + msg);
  }

  void keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : obj.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || k == a;
      if (known) continue;
      if (mode == LoadMode::strict) fail(path + "." + k, "unknown field");
      warnings->push_back(path + "." + k + ": unknown field ignored");
    }
  }

  static const json& need(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing field \"") + key + "\"");
    return *it;
  }

  static std::string str(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  static long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long>();
  }

  static bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
  }

  static Rational rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(path, "expected a rational string \"p/q\"");
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  static const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }

  static std::vector<std::string> strings(const json& j, const std::string& path) {
    std::vector<std::string> out;
    std::size_t i = 0;
    for (const auto& x : array(j, path)) out.push_back(str(x, path + "[" + std::to_string(i++) + "]"));
    return out;
  }

  static std::vector<int> ints(const json& j, const std::string& path) {
    std::vector<int> out;
    std::size_t i = 0;
    for (const auto& x : array(j, path)) out.push_back(static_cast<int>(integer(x, path + "[" + std::to_string(i++) + "]")));
    return out;
  }

  static ClassSpec class_spec(const json& j, const std::string& path) {
    if (j.is_string()) return {j.get<std::string>()};
    if (j.is_array()) {
      Vector v;
      std::size_t i = 0;
      for (const auto& x : j) v.push_back(rational(x, path + "[" + std::to_string(i++) + "]"));
      return {std::move(v)};
    }
    fail(path, "expected a class expression or coefficient array");
  }

  static std::vector<ClassSpec> class_list(const json& j, const std::string& path) {
    std::vector<ClassSpec> out;
    std::size_t i = 0;
    for (const auto& x : array(j, path)) out.push_back(class_spec(x, path + "[" + std::to_string(i++) + "]"));
    return out;
  }

  Matrix gram(const json& j, const std::string& path) const {
    const auto& rows = array(j, path);
    const std::size_t n = rows.size();
    if (n == 0) fail(path, "empty Gram matrix");
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string rp = path + "[" + std::to_string(i) + "]";
      const auto& row = array(rows[i], rp);
      if (row.size() != n) fail(rp, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
      for (std::size_t c = 0; c < n; ++c) m(i, c) = rational(row[c], rp + "[" + std::to_string(c) + "]");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = i + 1; c < n; ++c) {
        if (m(i, c) != m(c, i)) {
          fail(path, "Gram matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(c) + "): " +
                         to_string(m(i, c)) + " vs " + to_string(m(c, i)));
        }
      }
    }
    return m;
  }

  LatticeSpec lattice(const json& j, const std::string& path) const {
    LatticeSpec spec;
    const std::string kind = str(need(j, "kind", path), path + ".kind");
    if (kind == "explicit") {
      keys(j, path, {"kind", "basis", "gram", "reduce_to", "canonical", "torsion_note"});
      ExplicitLatticeSpec e;
      e.basis = strings(need(j, "basis", path), path + ".basis");
      e.gram = gram(need(j, "gram", path), path + ".gram");
      if (e.gram.rows() != e.basis.size()) fail(path + ".gram", "size does not match the basis");
      if (j.contains("reduce_to")) e.reduce_to = strings(j["reduce_to"], path + ".reduce_to");
      spec.kind = std::move(e);
    } else if (kind == "del_pezzo") {
      keys(j, path, {"kind", "r", "infinitely_near", "collinear", "coconic", "config_notes", "canonical",
                     "torsion_note"});
      DelPezzoLatticeSpec d;
      d.config.r = static_cast<int>(integer(need(j, "r", path), path + ".r"));
      if (j.contains("infinitely_near")) {
        std::size_t i = 0;
        for (const auto& p : array(j["infinitely_near"], path + ".infinitely_near")) {
          const std::string pp = path + ".infinitely_near[" + std::to_string(i++) + "]";
          auto v = ints(p, pp);
          if (v.size() != 2) fail(pp, "expected [child, parent]");
          d.config.infinitely_near.emplace_back(v[0], v[1]);
        }
      }
      auto sets = [&](const char* key) {
        std::vector<std::vector<int>> out;
        if (!j.contains(key)) return out;
        std::size_t i = 0;
        for (const auto& s : array(j[key], path + "." + key))
          out.push_back(ints(s, path + "." + key + "[" + std::to_string(i++) + "]"));
        return out;
      };
      d.config.collinear = sets("collinear");
      d.config.coconic = sets("coconic");
      if (j.contains("config_notes")) d.config.notes = str(j["config_notes"], path + ".config_notes");
      try {
        validate(d.config);
      } catch (const Error& e) {
        fail(path, e.what());
      }
      spec.kind = std::move(d);
    } else if (kind == "product_quotient") {
      keys(j, path, {"kind", "points", "f_fibers", "g_fibers", "cross_pairings", "reduce_to", "canonical",
                     "torsion_note"});
      PqLatticeSpec p;
      std::size_t i = 0;
      for (const auto& pt : array(need(j, "points", path), path + ".points")) {
        const std::string pp = path + ".points[" + std::to_string(i++) + "]";
        keys(pt, pp, {"label", "n", "k"});
        p.incidence.points.push_back({str(need(pt, "label", pp), pp + ".label"), integer(need(pt, "n", pp), pp + ".n"),
                                      integer(need(pt, "k", pp), pp + ".k")});
      }
      auto fibers = [&](const char* key) {
        std::vector<ReducedFiber> out;
        std::size_t n = 0;
        for (const auto& f : array(need(j, key, path), path + "." + key)) {
          const std::string fp = path + "." + key + "[" + std::to_string(n++) + "]";
          keys(f, fp, {"name", "points", "genus", "multiplicity"});
          ReducedFiber fib{str(need(f, "name", fp), fp + ".name"), strings(need(f, "points", fp), fp + ".points"),
                           rational(need(f, "genus", fp), fp + ".genus"), std::nullopt};
          if (f.contains("multiplicity")) fib.multiplicity = integer(f["multiplicity"], fp + ".multiplicity");
          out.push_back(std::move(fib));
        }
        return out;
      };
      p.incidence.f_fibers = fibers("f_fibers");
      p.incidence.g_fibers = fibers("g_fibers");
      i = 0;
      for (const auto& c : array(need(j, "cross_pairings", path), path + ".cross_pairings")) {
        const std::string cp = path + ".cross_pairings[" + std::to_string(i++) + "]";
        if (!c.is_array() || c.size() != 3) fail(cp, "expected [F, G, value]");
        p.incidence.cross_pairings[{str(c[0], cp + "[0]"), str(c[1], cp + "[1]")}] = rational(c[2], cp + "[2]");
      }
      if (j.contains("reduce_to")) p.reduce_to = strings(j["reduce_to"], path + ".reduce_to");
      spec.kind = std::move(p);
    } else {
      fail(path + ".kind", "unknown lattice kind \"" + kind + "\"");
    }
    if (j.contains("canonical")) {
      const json& c = j["canonical"];
      if (c.is_object()) {
        keys(c, path + ".canonical", {"solve"});
        if (str(need(c, "solve", path + ".canonical"), path + ".canonical.solve") != "adjunction")
          fail(path + ".canonical.solve", "only \"adjunction\" is supported");
        spec.solve_canonical = true;
      } else {
        spec.canonical = class_spec(c, path + ".canonical");
      }
    }
    if (j.contains("torsion_note")) spec.torsion_note = str(j["torsion_note"], path + ".torsion_note");
    return spec;
  }

  Witness witness(const json& j, const std::string& path) const {
    const std::string type = str(need(j, "type", path), path + ".type");
    if (type == "numerical_equivalence") {
      keys(j, path, {"type", "lhs", "rhs", "spanning"});
      return NumericalEquivalenceWitness{class_spec(need(j, "lhs", path), path + ".lhs"),
                                         class_spec(need(j, "rhs", path), path + ".rhs"),
                                         class_list(need(j, "spanning", path), path + ".spanning")};
    }
    if (type == "gram_determinant") {
      keys(j, path, {"type", "classes", "value"});
      return GramDeterminantWitness{class_list(need(j, "classes", path), path + ".classes"),
                                    rational(need(j, "value", path), path + ".value")};
    }
    if (type == "semiample_case") {
      keys(j, path, {"type", "name", "kind", "subset", "vector", "negative_against", "positive_against", "equivalents"});
      SemiampleWitness w;
      w.name = str(need(j, "name", path), path + ".name");
      const std::string kind = str(need(j, "kind", path), path + ".kind");
      if (kind == "not_nef") {
        w.kind = SemiampleCase::Kind::not_nef;
      } else if (kind == "nef") {
        w.kind = SemiampleCase::Kind::nef;
      } else {
        fail(path + ".kind", "expected \"nef\" or \"not_nef\"");
      }
      w.subset = class_list(need(j, "subset", path), path + ".subset");
      w.vector = class_spec(need(j, "vector", path), path + ".vector");
      if (j.contains("negative_against")) w.negative_against = class_spec(j["negative_against"], path + ".negative_against");
      if (j.contains("positive_against")) w.positive_against = class_spec(j["positive_against"], path + ".positive_against");
      if (j.contains("equivalents")) w.equivalents = class_list(j["equivalents"], path + ".equivalents");
      return w;
    }
    auto expect = [&](const json& o) {
      const std::string e = str(need(o, "expect", path), path + ".expect");
      if (e != "match" && e != "mismatch") fail(path + ".expect", "expected \"match\" or \"mismatch\"");
      return e == "match";
    };
    auto note = [&](const json& o) { return o.contains("note") ? str(o["note"], path + ".note") : std::string(); };
    if (type == "canonical_claim") {
      keys(j, path, {"type", "expression", "expect", "note"});
      return CanonicalClaimWitness{class_spec(need(j, "expression", path), path + ".expression"), expect(j), note(j)};
    }
    if (type == "count_claim") {
      keys(j, path, {"type", "subject", "claimed", "expect", "note"});
      CountClaimWitness w{str(need(j, "subject", path), path + ".subject"),
                          integer(need(j, "claimed", path), path + ".claimed"), expect(j), note(j)};
      if (w.subject != "negative_curves" && w.subject != "y_minus1_curves" && w.subject != "y_minus2_curves")
        fail(path + ".subject", "unknown count subject \"" + w.subject + "\"");
      return w;
    }
    if (type == "blowup_identity") {
      keys(j, path, {"type", "r", "lhs", "rhs", "orthogonal_to", "note"});
      BlowupIdentityWitness w;
      w.r = static_cast<int>(integer(need(j, "r", path), path + ".r"));
      w.lhs = str(need(j, "lhs", path), path + ".lhs");
      w.rhs = str(need(j, "rhs", path), path + ".rhs");
      if (j.contains("orthogonal_to")) w.orthogonal_to = strings(j["orthogonal_to"], path + ".orthogonal_to");
      w.note = note(j);
      return w;
    }
    if (type == "exclusion") {
      keys(j, path, {"type", "class"});
      return ExclusionWitness{str(need(j, "class", path), path + ".class")};
    }
    fail(path + ".type", "unknown witness type \"" + type + "\"");
  }

  SurfaceEntry entry(const json& j, const std::string& path) const {
    keys(j, path, {"id", "family", "group", "K2", "provenance", "lattice", "curves", "cover", "eff_generators",
                   "nef_generators", "expected_negatives", "witnesses", "imported_claims", "notes"});
    SurfaceEntry e;
    e.id = str(need(j, "id", path), path + ".id");
    e.family = str(need(j, "family", path), path + ".family");
    if (!kFamilies.count(e.family)) fail(path + ".family", "unknown family \"" + e.family + "\"");
    if (j.contains("group")) e.group = str(j["group"], path + ".group");
    e.k2 = integer(need(j, "K2", path), path + ".K2");
    if (j.contains("provenance")) e.provenance = str(j["provenance"], path + ".provenance");
    e.lattice = lattice(need(j, "lattice", path), path + ".lattice");
    if (j.contains("curves")) {
      std::size_t i = 0;
      for (const auto& c : array(j["curves"], path + ".curves")) {
        const std::string cp = path + ".curves[" + std::to_string(i++) + "]";
        keys(c, cp, {"label", "class", "genus"});
        CurveSpec cs{str(need(c, "label", cp), cp + ".label"), class_spec(need(c, "class", cp), cp + ".class"),
                     std::nullopt};
        if (c.contains("genus")) cs.genus = rational(c["genus"], cp + ".genus");
        e.curves.push_back(std::move(cs));
      }
    }
    if (j.contains("cover")) {
      const json& c = j["cover"];
      const std::string cp = path + ".cover";
      keys(c, cp, {"degree", "canonical_multiplier", "canonical_pullback", "ramification", "base_K2"});
      CoverSpec cov;
      cov.degree = static_cast<int>(integer(need(c, "degree", cp), cp + ".degree"));
      cov.canonical_multiplier = static_cast<int>(integer(need(c, "canonical_multiplier", cp), cp + ".canonical_multiplier"));
      cov.canonical_pullback = class_spec(need(c, "canonical_pullback", cp), cp + ".canonical_pullback");
      const json& ram = need(c, "ramification", cp);
      if (!ram.is_object()) fail(cp + ".ramification", "expected an object");
      for (const auto& [k, v] : ram.items())
        cov.ramification[k] = static_cast<int>(integer(v, cp + ".ramification." + k));
      if (c.contains("base_K2")) cov.base_k2 = rational(c["base_K2"], cp + ".base_K2");
      e.cover = std::move(cov);
    }
    if (j.contains("eff_generators")) e.eff_generators = class_list(j["eff_generators"], path + ".eff_generators");
    if (j.contains("nef_generators")) e.nef_generators = class_list(j["nef_generators"], path + ".nef_generators");
    std::size_t i = 0;
    for (const auto& t : array(need(j, "expected_negatives", path), path + ".expected_negatives")) {
      const std::string tp = path + ".expected_negatives[" + std::to_string(i++) + "]";
      if (!t.is_array() || t.size() != 3) fail(tp, "expected [self_int, genus, multiplicity]");
      NegativeCount n{integer(t[0], tp + "[0]"), integer(t[1], tp + "[1]"), integer(t[2], tp + "[2]")};
      if (n.self_int >= 0 || n.genus < 0 || n.multiplicity < 1) fail(tp, "not a negative-curve count");
      e.expected_negatives.push_back(n);
    }
    if (j.contains("witnesses")) {
      i = 0;
      for (const auto& w : array(j["witnesses"], path + ".witnesses"))
        e.witnesses.push_back(witness(w, path + ".witnesses[" + std::to_string(i++) + "]"));
    }
    if (j.contains("imported_claims")) e.imported_claims = strings(j["imported_claims"], path + ".imported_claims");
    if (j.contains("notes")) e.notes = strings(j["notes"], path + ".notes");
    return e;
  }
};

// ---- writing ----

json rational_json(const Rational& r) { return to_string(r); }

json class_json(const ClassSpec& c) {
  if (const auto* s = std::get_if<std::string>(&c.value)) return *s;
  json a = json::array();
  for (const auto& x : std::get<Vector>(c.value)) a.push_back(rational_json(x));
  return a;
}

json class_list_json(const std::vector<ClassSpec>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(class_json(c));
  return a;
}

json lattice_json(const LatticeSpec& spec) {
  json j;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ExplicitLatticeSpec>) {
          j["kind"] = "explicit";
          j["basis"] = k.basis;
          json g = json::array();
          for (std::size_t r = 0; r < k.gram.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < k.gram.cols(); ++c) row.push_back(rational_json(k.gram(r, c)));
            g.push_back(row);
          }
          j["gram"] = g;
          if (!k.reduce_to.empty()) j["reduce_to"] = k.reduce_to;
        } else if constexpr (std::is_same_v<T, DelPezzoLatticeSpec>) {
          j["kind"] = "del_pezzo";
          j["r"] = k.config.r;
          if (!k.config.infinitely_near.empty()) {
            json a = json::array();
            for (auto [c, p] : k.config.infinitely_near) a.push_back({c, p});
            j["infinitely_near"] = a;
          }
          if (!k.config.collinear.empty()) j["collinear"] = k.config.collinear;
          if (!k.config.coconic.empty()) j["coconic"] = k.config.coconic;
          if (!k.config.notes.empty()) j["config_notes"] = k.config.notes;
        } else {
          j["kind"] = "product_quotient";
          json pts = json::array();
          for (const auto& p : k.incidence.points) pts.push_back({{"label", p.label}, {"n", p.n}, {"k", p.k}});
          j["points"] = pts;
          auto fibers = [](const std::vector<ReducedFiber>& fs) {
            json a = json::array();
            for (const auto& f : fs) {
              json o{{"name", f.name}, {"points", f.points}, {"genus", rational_json(f.genus)}};
              if (f.multiplicity) o["multiplicity"] = *f.multiplicity;
              a.push_back(o);
            }
            return a;
          };
          j["f_fibers"] = fibers(k.incidence.f_fibers);
          j["g_fibers"] = fibers(k.incidence.g_fibers);
          json cp = json::array();
          for (const auto& [key, v] : k.incidence.cross_pairings) cp.push_back({key.first, key.second, rational_json(v)});
          j["cross_pairings"] = cp;
          if (!k.reduce_to.empty()) j["reduce_to"] = k.reduce_to;
        }
      },
      spec.kind);
  if (spec.solve_canonical) {
    j["canonical"] = {{"solve", "adjunction"}};
  } else if (spec.canonical) {
    j["canonical"] = class_json(*spec.canonical);
  }
  if (!spec.torsion_note.empty()) j["torsion_note"] = spec.torsion_note;
  return j;
}

json witness_json(const Witness& w) {
  json j;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NumericalEquivalenceWitness>) {
          j = {{"type", "numerical_equivalence"}, {"lhs", class_json(x.lhs)}, {"rhs", class_json(x.rhs)},
               {"spanning", class_list_json(x.spanning)}};
        } else if constexpr (std::is_same_v<T, GramDeterminantWitness>) {
          j = {{"type", "gram_determinant"}, {"classes", class_list_json(x.classes)}, {"value", rational_json(x.value)}};
        } else if constexpr (std::is_same_v<T, SemiampleWitness>) {
          j = {{"type", "semiample_case"},
               {"name", x.name},
               {"kind", x.kind == SemiampleCase::Kind::nef ? "nef" : "not_nef"},
               {"subset", class_list_json(x.subset)},
               {"vector", class_json(x.vector)}};
          if (x.negative_against) j["negative_against"] = class_json(*x.negative_against);
          if (x.positive_against) j["positive_against"] = class_json(*x.positive_against);
          if (!x.equivalents.empty()) j["equivalents"] = class_list_json(x.equivalents);
        } else if constexpr (std::is_same_v<T, CanonicalClaimWitness>) {
          j = {{"type", "canonical_claim"}, {"expression", class_json(x.expression)},
               {"expect", x.expect_match ? "match" : "mismatch"}};
          if (!x.note.empty()) j["note"] = x.note;
        } else if constexpr (std::is_same_v<T, CountClaimWitness>) {
          j = {{"type", "count_claim"}, {"subject", x.subject}, {"claimed", x.claimed},
               {"expect", x.expect_match ? "match" : "mismatch"}};
          if (!x.note.empty()) j["note"] = x.note;
        } else if constexpr (std::is_same_v<T, BlowupIdentityWitness>) {
          j = {{"type", "blowup_identity"}, {"r", x.r}, {"lhs", x.lhs}, {"rhs", x.rhs}};
          if (!x.orthogonal_to.empty()) j["orthogonal_to"] = x.orthogonal_to;
          if (!x.note.empty()) j["note"] = x.note;
        } else {
          j = {{"type", "exclusion"}, {"class", x.cls}};
        }
      },
      w);
  return j;
}

json entry_json(const SurfaceEntry& e) {
  json j;
  j["id"] = e.id;
  j["family"] = e.family;
  if (e.group) j["group"] = *e.group;
  j["K2"] = e.k2;
  if (!e.provenance.empty()) j["provenance"] = e.provenance;
  j["lattice"] = lattice_json(e.lattice);
  if (!e.curves.empty()) {
    json a = json::array();
    for (const auto& c : e.curves) {
      json o{{"label", c.label}, {"class", class_json(c.cls)}};
      if (c.genus) o["genus"] = rational_json(*c.genus);
      a.push_back(o);
    }
    j["curves"] = a;
  }
  if (e.cover) {
    json c{{"degree", e.cover->degree},
           {"canonical_multiplier", e.cover->canonical_multiplier},
           {"canonical_pullback", class_json(e.cover->canonical_pullback)}};
    json ram = json::object();
    for (const auto& [k, v] : e.cover->ramification) ram[k] = v;
    c["ramification"] = ram;
    if (e.cover->base_k2) c["base_K2"] = rational_json(*e.cover->base_k2);
    j["cover"] = c;
  }
  if (e.eff_generators) j["eff_generators"] = class_list_json(*e.eff_generators);
  if (e.nef_generators) j["nef_generators"] = class_list_json(*e.nef_generators);
  json neg = json::array();
  for (const auto& n : e.expected_negatives) neg.push_back({n.self_int, n.genus, n.multiplicity});
  j["expected_negatives"] = neg;
  if (!e.witnesses.empty()) {
    json a = json::array();
    for (const auto& w : e.witnesses) a.push_back(witness_json(w));
    j["witnesses"] = a;
  }
  if (!e.imported_claims.empty()) j["imported_claims"] = e.imported_claims;
  if (!e.notes.empty()) j["notes"] = e.notes;
  return j;
}

bool is_scalar(const json& j) { return !j.is_array() && !j.is_object(); }

void print(const json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(k).dump() + ": ";
      print(v, indent + 2, out);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return is_scalar(x); });
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      print(j[i], indent + 2, out);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else {
    out += j.dump();
  }
}

std::string pretty(const json& j) {
  std::string out;
  print(j, 0, out);
  return out + "\n";
}

}  // namespace

Catalog parse_catalog(const std::string& text, LoadMode mode) {
  Catalog cat;
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) return cat;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::schema, std::string("catalogue is not valid JSON: ") + e.what());
  }
  Reader rd{mode, &cat.warnings};
  rd.keys(root, "$", {"catalog_version", "entries"});
  cat.version = static_cast<int>(Reader::integer(Reader::need(root, "catalog_version", "$"), "$.catalog_version"));
  if (cat.version != 1) Reader::fail("$.catalog_version", "unsupported version " + std::to_string(cat.version));
  std::set<std::string> ids;
  std::size_t i = 0;
  for (const auto& e : Reader::array(Reader::need(root, "entries", "$"), "$.entries")) {
    const std::string path = "$.entries[" + std::to_string(i++) + "]";
    SurfaceEntry se = rd.entry(e, path);
    if (!ids.insert(se.id).second) Reader::fail(path + ".id", "duplicate entry id \"" + se.id + "\"");
    cat.entries.push_back(std::move(se));
  }
  return cat;
}

Catalog load_catalog(const std::filesystem::path& path, LoadMode mode) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::schema, "cannot open catalogue " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), mode);
}

std::filesystem::path default_catalog_path() {
  if (const char* env = std::getenv("CONELAB_CATALOG"); env && *env) return env;
  return CONELAB_CATALOG_DEFAULT;
}

std::string serialize_catalog(const Catalog& catalog) {
  json root;
  root["catalog_version"] = catalog.version;
  json entries = json::array();
  for (const auto& e : catalog.entries) entries.push_back(entry_json(e));
  root["entries"] = entries;
  return pretty(root);
}

std::string normalize_json(const std::string& text) { return pretty(json::parse(text)); }

}  // namespace conelab

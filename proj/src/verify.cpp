#include "conelab/verify.hpp"

#include "conelab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace conelab {

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<NegativeCount> canonical_multiset(std::vector<NegativeCount> counts) {
  std::map<std::pair<long, long>, long> merged;
  for (const auto& c : counts) merged[{c.self_int, c.genus}] += c.multiplicity;
  std::vector<NegativeCount> out;
  for (const auto& [k, m] : merged) out.push_back({k.first, k.second, m});
  std::sort(out.begin(), out.end(), [](const NegativeCount& a, const NegativeCount& b) {
    return std::make_tuple(-a.multiplicity, -a.self_int, a.genus) < std::make_tuple(-b.multiplicity, -b.self_int, b.genus);
  });
  return out;
}

std::string format_negatives(const std::vector<NegativeCount>& counts) {
  if (counts.empty()) return "None";
  std::string s;
  for (const auto& c : canonical_multiset(counts)) {
    if (!s.empty()) s += ", ";
    if (c.multiplicity != 1) s += std::to_string(c.multiplicity);
    s += "(" + std::to_string(c.self_int) + "," + std::to_string(c.genus) + ")";
  }
  return s;
}

namespace {

long total(const std::vector<NegativeCount>& v) {
  long t = 0;
  for (const auto& c : v) t += c.multiplicity;
  return t;
}

class Driver {
 public:
  explicit Driver(const SurfaceEntry& e) : e_(e) {
    rep_.id = e.id;
    rep_.family = e.family;
    rep_.k2 = e.k2;
    rep_.imported_claims = e.imported_claims;
  }

  VerificationReport run() {
    bool ok = check("materialize", [&] {
      m_ = materialize(e_);
      return std::string("rank ") + std::to_string(m_.lattice->rank());
    });
    if (!ok) return rep_;
    const SurfaceLattice& lat = *m_.lattice;
    check("gram_symmetric", [&] {
      if (!lat.gram().is_symmetric()) throw Error(ErrorCode::inconsistent, "Gram not symmetric");
      return std::string();
    });
    check_genera();
    check_k2();
    eff_ = std::make_unique<Cone>(m_.lattice, m_.eff);
    check("eff_pointed", [&] {
      if (!eff_->is_pointed()) throw Error(ErrorCode::inconsistent, "effective cone contains a line");
      return std::to_string(eff_->frame().rays.size()) + " extremal rays";
    });
    check_duality();
    check_negatives();
    if (m_.realization) check_realization();
    if (m_.cover) check_cover();
    for (std::size_t i = 0; i < e_.witnesses.size(); ++i) check_witness(e_.witnesses[i], i);
    return rep_;
  }

 private:
  bool check(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{name, false, {}};
    try {
      r.detail = body();
      r.pass = true;
    } catch (const std::exception& ex) {
      r.detail = ex.what();
    }
    rep_.checks.push_back(r);
    return r.pass;
  }

  [[noreturn]] static void fail(const std::string& msg) { throw Error(ErrorCode::inconsistent, msg); }

  void check_genera() {
    check("curve_genus", [&] {
      const SurfaceLattice& lat = *m_.lattice;
      for (const auto& label : m_.curve_labels) {
        Rational g = arithmetic_genus(lat, m_.curve_classes.at(label));
        if (g.get_den() != 1 || g < 0) fail("curve " + label + " has genus " + to_string(g));
        auto d = m_.declared_genus.find(label);
        if (d != m_.declared_genus.end() && d->second != g)
          fail("curve " + label + " declared genus " + to_string(d->second) + ", adjunction gives " + to_string(g));
      }
      return std::to_string(m_.curve_labels.size()) + " curves";
    });
  }

  void check_k2() {
    check("canonical_k2", [&] {
      const SurfaceLattice& lat = *m_.lattice;
      Rational k2;
      std::string detail;
      if (m_.cover) {
        SurfaceLattice x = pullback_lattice(*m_.cover);
        k2 = self_intersection(x, *x.canonical());
        Rational ky2 = self_intersection(lat, *lat.canonical());
        detail = "K_Y^2=" + to_string(ky2) + " ";
        if (e_.cover->base_k2 && *e_.cover->base_k2 != ky2)
          fail("base K^2 is " + to_string(ky2) + ", declared " + to_string(*e_.cover->base_k2));
      } else {
        k2 = self_intersection(lat, *lat.canonical());
      }
      if (k2 != e_.k2) fail("K^2 computed " + to_string(k2) + ", declared " + std::to_string(e_.k2));
      return detail + "K^2=" + to_string(k2);
    });
  }

  void check_duality() {
    const SurfaceLattice& lat = *m_.lattice;
    Cone dual_eff = dual_cone(*eff_);
    for (const auto& r : extremal_rays(dual_eff)) rep_.nef_rays.push_back(format_class(r, lat.basis_names()));
    if (!m_.nef) return;
    Cone nef(m_.lattice, *m_.nef);
    check("duality_dd", [&] {
      if (!cone_equal(dual_eff, nef)) fail("dual of Eff differs from the declared Nef cone");
      if (!cone_equal(dual_cone(nef), *eff_)) fail("dual of Nef differs from the declared Eff cone");
      return std::to_string(extremal_rays(dual_eff).size()) + " nef rays";
    });
    check("duality_scan", [&] {
      FacetScan s = annihilator_facet_scan_detailed(lat, m_.eff);
      auto dd = extremal_rays(dual_eff);
      if (!same_rays(s.normals, dd)) fail("facet scan of Eff disagrees with the double description");
      auto s2 = annihilator_facet_scan(lat, *m_.nef);
      if (!same_rays(s2, extremal_rays(dual_cone(nef)))) fail("facet scan of Nef disagrees with the double description");
      if (!cone_equal(Cone(m_.lattice, s.normals), nef)) fail("scanned normals do not generate the declared Nef cone");
      return std::to_string(s.subsets) + " subsets, " + std::to_string(s.normals.size()) + " normals";
    });
  }

  // Curves on the extremal rays of Eff; throws when a ray has no curve.
  std::vector<std::string> ray_curves() {
    std::vector<std::string> out;
    for (const auto& ray : extremal_rays(*eff_)) {
      std::string found;
      for (const auto& label : m_.curve_labels) {
        if (positively_proportional(ray.coeffs(), m_.curve_classes.at(label).coeffs())) {
          found = label;
          break;
        }
      }
      if (found.empty()) fail("extremal ray " + format_class(ray, m_.lattice->basis_names()) + " carries no listed curve");
      out.push_back(found);
    }
    return out;
  }

  static bool form_nonnegative(const SurfaceLattice& lat, const std::vector<DivisorClass>& gens) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i; j < gens.size(); ++j)
        if (pairing(lat, gens[i], gens[j]) < 0) return false;
    return true;
  }

  void check_negatives() {
    const SurfaceLattice& lat = *m_.lattice;
    std::vector<NegativeCount> found;
    bool computed = check("negative_curves_computed", [&] {
      if (form_nonnegative(lat, m_.eff)) {
        return std::string("intersection form is nonnegative on Eff: no negative curves");
      }
      auto labels = ray_curves();
      for (const auto& label : m_.curve_labels) {
        const DivisorClass& c = m_.curve_classes.at(label);
        if (self_intersection(lat, c) < 0 && std::find(labels.begin(), labels.end(), label) == labels.end())
          fail("negative curve " + label + " is not an extremal ray of Eff");
      }
      for (const auto& label : labels) {
        const DivisorClass& c = m_.curve_classes.at(label);
        if (self_intersection(lat, c) >= 0) continue;
        if (m_.cover) {
          ReducedPullback p = reduced_pullback(*m_.cover, label);
          found.push_back({to_long(p.record.self_int), to_long(p.record.genus), 1});
        } else {
          found.push_back({to_long(self_intersection(lat, c)), to_long(arithmetic_genus(lat, c)), 1});
        }
      }
      return std::to_string(labels.size()) + " extremal rays matched to curves";
    });
    if (!computed) return;
    rep_.negatives = canonical_multiset(found);
    for (const auto& n : rep_.negatives) rep_.b_x = std::max(rep_.b_x, -n.self_int);
    check("negative_curves_expected", [&] {
      auto want = canonical_multiset(e_.expected_negatives);
      if (want != rep_.negatives)
        fail("computed " + format_negatives(rep_.negatives) + ", expected " + format_negatives(want));
      return std::to_string(total(rep_.negatives)) + ": " + format_negatives(rep_.negatives);
    });
  }

  void check_realization() {
    const Realization& r = *m_.realization;
    const SurfaceLattice& lat = *m_.lattice;
    check("realized_pairwise_nonnegative", [&] {
      for (std::size_t i = 0; i < r.realized.size(); ++i)
        for (std::size_t j = i + 1; j < r.realized.size(); ++j)
          if (pairing(lat, r.realized[i].cls, r.realized[j].cls) < 0)
            fail(r.realized[i].label + " and " + r.realized[j].label + " meet negatively");
      return std::to_string(r.realized.size()) + " realized curves";
    });
    check("realization_complete", [&] {
      if (!r.undecided.empty()) fail(std::to_string(r.undecided.size()) + " candidate classes undecided, first " +
                                     format_blowup_class(r.undecided.front()));
      return std::to_string(r.excluded.size()) + " candidates excluded";
    });
    check("weak_del_pezzo", [&] {
      const auto& d = std::get<DelPezzoLatticeSpec>(e_.lattice.kind);
      WeakDelPezzoReport w = weak_dp_check(d.config);
      if (!w.weak()) fail("-K is not nef and big on the realized curves");
      return std::string(w.del_pezzo() ? "del Pezzo" : "weak del Pezzo, ") +
             (w.del_pezzo() ? "" : std::to_string(w.anticanonical_zero) + " (-2)-curves");
    });
  }

  void check_cover() {
    const CoverDescriptor& cov = *m_.cover;
    const SurfaceLattice& y = *m_.lattice;
    check("cover_genus_integral", [&] {
      for (const auto& label : m_.curve_labels) {
        if (!cov.ramification.count(label)) fail("curve " + label + " has no ramification index");
        reduced_pullback(cov, label);
      }
      return std::to_string(m_.curve_labels.size()) + " reduced pullbacks";
    });
    check("cover_pairing_scaling", [&] {
      SurfaceLattice x = pullback_lattice(cov);
      for (std::size_t i = 0; i < y.rank(); ++i)
        for (std::size_t j = 0; j < y.rank(); ++j)
          if (pairing(x, x.basis_class(i), x.basis_class(j)) != cov.degree * pairing(y, y.basis_class(i), y.basis_class(j)))
            fail("pullback pairing is not d times the base pairing");
      return "d=" + std::to_string(cov.degree);
    });
    check("cover_transport", [&] {
      Cone nef_y = m_.nef ? Cone(m_.lattice, *m_.nef) : dual_cone(*eff_);
      TransportedCones t = transport_cones(cov, *eff_, nef_y);
      auto count_negative = [](const Cone& c) {
        std::size_t n = 0;
        for (const auto& r : extremal_rays(c))
          if (self_intersection(c.lattice(), r) < 0) ++n;
        return n;
      };
      const std::size_t down = count_negative(*eff_), up = count_negative(t.eff);
      if (down != up) fail(std::to_string(up) + " negative rays upstairs, " + std::to_string(down) + " downstairs");
      return std::to_string(up) + " negative extremal rays on both sides";
    });
  }

  void check_witness(const Witness& w, std::size_t index) {
    const SurfaceLattice& lat = *m_.lattice;
    const std::size_t rank = lat.rank();
    auto res = [&](const ClassSpec& c) { return resolve(c, m_.symbols, rank); };
    auto resl = [&](const std::vector<ClassSpec>& v) {
      std::vector<DivisorClass> out;
      for (const auto& c : v) out.push_back(res(c));
      return out;
    };
    auto spec_text = [](const ClassSpec& c) {
      if (const auto* s = std::get_if<std::string>(&c.value)) return *s;
      return std::string("<coefficients>");
    };
    const std::string tag = "witness[" + std::to_string(index) + "] ";
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, NumericalEquivalenceWitness>) {
            check(tag + "numerical_equivalence", [&] {
              if (!verify_numerical_equivalence(lat, res(x.lhs), res(x.rhs), resl(x.spanning)))
                fail(spec_text(x.lhs) + " and " + spec_text(x.rhs) + " differ numerically");
              return spec_text(x.lhs) + " == " + spec_text(x.rhs);
            });
          } else if constexpr (std::is_same_v<T, GramDeterminantWitness>) {
            check(tag + "gram_determinant", [&] {
              Rational d = gram_determinant(lat, resl(x.classes));
              if (d != x.value) fail("determinant " + to_string(d) + ", claimed " + to_string(x.value));
              return "det=" + to_string(d);
            });
          } else if constexpr (std::is_same_v<T, SemiampleWitness>) {
            check(tag + "semiample_case " + x.name, [&] {
              SemiampleCase c{x.name, x.kind, resl(x.subset), res(x.vector), std::nullopt, std::nullopt,
                              resl(x.equivalents)};
              if (x.negative_against) c.negative_against = res(*x.negative_against);
              if (x.positive_against) c.positive_against = res(*x.positive_against);
              SemiampleReport r = semiample_witness_check(lat, {c}, m_.eff);
              if (!r.all_pass()) {
                std::string why;
                for (const auto& f : r.cases.front().failures) why += (why.empty() ? "" : "; ") + f;
                fail(why);
              }
              return std::string(x.kind == SemiampleCase::Kind::nef ? "nef" : "not nef") + ", claims hold";
            });
          } else if constexpr (std::is_same_v<T, CanonicalClaimWitness>) {
            check(tag + "canonical_claim", [&] {
              DivisorClass claimed = res(x.expression);
              std::vector<DivisorClass> basis;
              for (std::size_t i = 0; i < rank; ++i) basis.push_back(lat.basis_class(i));
              bool match = verify_numerical_equivalence(lat, claimed, *lat.canonical(), basis);
              if (match != x.expect_match)
                fail("printed canonical class " + spec_text(x.expression) + (match ? " matches" : " does not match") +
                     " the solved K " + format_class(*lat.canonical(), lat.basis_names()));
              if (!match)
                rep_.discrepancies.push_back("printed K = " + spec_text(x.expression) + " differs from solved K = " +
                                             format_class(*lat.canonical(), lat.basis_names()) +
                                             (x.note.empty() ? "" : " (" + x.note + ")"));
              return std::string(match ? "matches" : "expected mismatch recorded");
            });
          } else if constexpr (std::is_same_v<T, CountClaimWitness>) {
            check(tag + "count_claim " + x.subject, [&] {
              long actual = 0;
              if (x.subject == "negative_curves") {
                actual = total(rep_.negatives);
              } else {
                if (!m_.realization) fail("count subject needs a del Pezzo configuration");
                const long want = x.subject == "y_minus1_curves" ? -1 : -2;
                for (const auto& r : m_.realization->realized)
                  if (r.self_int == want) ++actual;
              }
              const bool match = actual == x.claimed;
              if (match != x.expect_match)
                fail("claimed " + std::to_string(x.claimed) + ", computed " + std::to_string(actual));
              if (!match)
                rep_.discrepancies.push_back("printed count " + std::to_string(x.claimed) + " for " + x.subject +
                                             ", computed " + std::to_string(actual) +
                                             (x.note.empty() ? "" : " (" + x.note + ")"));
              return "computed " + std::to_string(actual);
            });
          } else if constexpr (std::is_same_v<T, BlowupIdentityWitness>) {
            check(tag + "blowup_identity", [&] {
              BlowupLattice bl = build_blowup_lattice(x.r);
              SymbolTable sym;
              for (std::size_t i = 0; i < bl.lattice.rank(); ++i)
                sym[bl.lattice.basis_names()[i]] = bl.lattice.basis_class(i);
              const std::size_t n = bl.lattice.rank();
              DivisorClass l = parse_class_expression(x.lhs, sym, n), r = parse_class_expression(x.rhs, sym, n);
              if (!(l == r)) fail(x.lhs + " != " + x.rhs);
              for (const auto& o : x.orthogonal_to)
                if (pairing(bl.lattice, l, parse_class_expression(o, sym, n)) != 0) fail(x.lhs + " meets " + o);
              if (!x.note.empty()) rep_.discrepancies.push_back(x.note + " (checked: " + x.lhs + " == " + x.rhs + ")");
              return x.lhs + " == " + x.rhs;
            });
          } else {
            check(tag + "exclusion", [&] {
              if (!m_.realization) fail("exclusion needs a del Pezzo configuration");
              DivisorClass d = parse_class_expression(x.cls, m_.symbols, rank);
              for (const auto& ex : m_.realization->excluded) {
                if (ex.cls == d) {
                  if (!(ex.product < 0)) fail("recorded product is not negative");
                  return x.cls + " excluded by " + ex.witness + " (product " + to_string(ex.product) + ")";
                }
              }
              fail(x.cls + " is not excluded");
            });
          }
        },
        w);
  }

  const SurfaceEntry& e_;
  VerificationReport rep_;
  MaterializedEntry m_;
  std::unique_ptr<Cone> eff_;
};

}  // namespace

VerificationReport verify_entry(const SurfaceEntry& entry) { return Driver(entry).run(); }

std::vector<VerificationReport> verify_catalog(const Catalog& catalog) {
  std::vector<VerificationReport> out;
  for (const auto& e : catalog.entries) out.push_back(verify_entry(e));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

std::string negative_curve_table(const std::vector<VerificationReport>& reports) {
  std::vector<const VerificationReport*> order;
  for (const auto& r : reports) {
    if (!r.pass()) throw Error(ErrorCode::unverified, "entry " + r.id + " did not verify; no table");
    order.push_back(&r);
  }
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return std::make_pair(-a->k2, a->id) < std::make_pair(-b->k2, b->id);
  });
  std::ostringstream os;
  for (const auto* r : order) {
    os << r->id << std::string(r->id.size() < 22 ? 22 - r->id.size() : 1, ' ') << "K2=" << r->k2 << "  b_X=" << r->b_x
       << "  ";
    if (r->negatives.empty()) {
      os << "None\n";
    } else {
      os << total(r->negatives) << ": " << format_negatives(r->negatives) << "\n";
    }
  }
  return os.str();
}

std::string reports_to_text(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << (r.pass() ? "PASS " : "FAIL ") << r.id << " (" << r.family << ", K2=" << r.k2 << ")\n";
    for (const auto& c : r.checks)
      os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    os << "  negatives: " << format_negatives(r.negatives) << ", b_X=" << r.b_x << "\n";
    for (const auto& d : r.discrepancies) os << "  discrepancy: " << d << "\n";
    for (const auto& c : r.imported_claims) os << "  imported: " << c << "\n";
  }
  return os.str();
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    nlohmann::json neg = nlohmann::json::array();
    for (const auto& n : r.negatives) neg.push_back({n.self_int, n.genus, n.multiplicity});
    a.push_back({{"id", r.id},
                 {"family", r.family},
                 {"K2", r.k2},
                 {"pass", r.pass()},
                 {"checks", checks},
                 {"negatives", neg},
                 {"negatives_text", format_negatives(r.negatives)},
                 {"b_X", r.b_x},
                 {"nef_rays", r.nef_rays},
                 {"discrepancies", r.discrepancies},
                 {"imported_claims", r.imported_claims}});
  }
  return nlohmann::json{{"reports", a}}.dump(2) + "\n";
}

}  // namespace conelab

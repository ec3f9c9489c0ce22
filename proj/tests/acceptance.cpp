// Acceptance run: one PASS/FAIL line per criterion.
#include "conelab/cone.hpp"
#include "conelab/covers.hpp"
#include "conelab/error.hpp"
#include "conelab/pqsurf.hpp"
#include "conelab/verify.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

using namespace conelab;
using namespace testing_support;

namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

int failures = 0;

void criterion(int n, const std::string& title, const std::function<std::string()>& body) {
  std::string detail;
  bool ok = false;
  try {
    detail = body();
    ok = true;
  } catch (const Failure& f) {
    detail = f.what;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << n << ": " << title << " - " << detail << std::endl;
}

std::vector<DivisorClass> resolved(const MaterializedEntry& m, const std::vector<ClassSpec>& specs) {
  std::vector<DivisorClass> out;
  for (auto& s : specs) out.push_back(resolve(s, m.symbols, m.lattice->rank()));
  return out;
}

std::vector<DivisorClass> random_pointed(std::size_t rank, std::size_t count, long spread) {
  std::vector<DivisorClass> out;
  while (out.size() < count) {
    Vector v{Rational(uniform(1, 4))};
    for (std::size_t i = 1; i < rank; ++i) v.emplace_back(uniform(-spread, spread));
    out.emplace_back(v);
  }
  return out;
}

// the printed lists, one per entry
const std::map<std::string, std::string> printed = {
    {"fake-projective-plane", "None"},
    {"isogenous-unmixed", "None"},
    {"inoue", "2(-1,1), (-1,2)"},
    {"chen", "(-1,1), (-1,2), (-1,3), (-4,2)"},
    {"kulikov", "6(-1,1)"},
    {"burniat-k6", "6(-1,1)"},
    {"burniat-k5", "9(-1,1), (-4,0)"},
    {"burniat-k4-nonnodal", "12(-1,1), 4(-4,0)"},
    {"burniat-k4-nodal", "10(-1,1), 2(-4,0), (-2,0)"},
    {"burniat-k3", "9(-1,1), 3(-2,0), 3(-4,0)"},
    {"burniat-k2", "6(-1,1), 6(-2,0), 4(-4,0)"},
    {"pq-k6-d4xz2", "2(-2,0), (-1,1), (-1,2)"},
    {"pq-k4-z4xz2", "4(-1,1), 4(-2,0)"},
};

// tie order inside a printed list is not canonical
std::multiset<std::string> items(const std::string& s) {
  std::multiset<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find("), ", start);
    std::size_t end = comma == std::string::npos ? s.size() : comma + 1;
    out.insert(s.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 3;
  }
  return out;
}

}  // namespace

int main() {
  const Catalog& cat = bundled();

  criterion(1, "negative-curve multisets reproduce the printed lists", [&] {
    auto t0 = std::chrono::steady_clock::now();
    auto reports = verify_catalog(cat);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    expect(reports.size() == printed.size(), std::to_string(reports.size()) + " entries");
    std::set<std::string> families;
    for (auto& r : reports) {
      expect(r.pass(), r.id + " failed verification");
      auto it = printed.find(r.id);
      expect(it != printed.end(), "unexpected entry " + r.id);
      expect(items(format_negatives(r.negatives)) == items(it->second),
             r.id + ": computed " + format_negatives(r.negatives) + ", printed " + it->second);
      families.insert(r.family);
    }
    expect(secs < 5.0, "took " + std::to_string(secs) + " s");
    std::ostringstream os;
    os << reports.size() << " entries, " << families.size() << " family tags, " << secs << " s";
    return os.str();
  });

  criterion(2, "K^2 recomputed from the canonical class or the cover", [&] {
    const std::map<std::string, long> k2 = {{"inoue", 7},          {"chen", 7},
                                            {"kulikov", 6},        {"burniat-k6", 6},
                                            {"burniat-k5", 5},     {"burniat-k4-nonnodal", 4},
                                            {"burniat-k4-nodal", 4}, {"burniat-k3", 3},
                                            {"burniat-k2", 2},     {"pq-k6-d4xz2", 6},
                                            {"pq-k4-z4xz2", 4}};
    for (auto& [id, want] : k2) {
      auto m = materialize(entry(id));
      Rational got;
      if (m.cover) {
        auto up = pullback_lattice(*m.cover);
        got = self_intersection(up, *up.canonical());
      } else {
        got = self_intersection(*m.lattice, *m.lattice->canonical());
      }
      expect(got == want, id + ": K^2 = " + to_string(got));
    }
    return std::to_string(k2.size()) + " entries";
  });

  criterion(3, "Eff and Nef are mutually dual by both algorithms", [&] {
    std::size_t n = 0;
    for (auto& e : cat.entries) {
      if (!e.nef_generators) continue;
      auto m = materialize(e);
      Cone eff(m.lattice, m.eff);
      Cone nef(m.lattice, resolved(m, *e.nef_generators));
      expect(cone_equal(dual_cone(eff), nef) && cone_equal(dual_cone(nef), eff), e.id + ": double description");
      expect(same_rays(annihilator_facet_scan(*m.lattice, m.eff), extremal_rays(nef)), e.id + ": scan of Eff");
      expect(same_rays(annihilator_facet_scan(*m.lattice, nef.generators()), extremal_rays(eff)),
             e.id + ": scan of Nef");
      ++n;
    }
    expect(n >= 6, std::to_string(n) + " entries declare Nef");
    return std::to_string(n) + " entries";
  });

  criterion(4, "PQ K^2=4 determinant, equivalences and semiample cases", [&] {
    const auto& e = entry("pq-k4-z4xz2");
    auto m = materialize(e);
    std::vector<DivisorClass> six;
    for (auto name : {"F1", "E1", "G2", "E4", "F2", "E3"}) six.push_back(sym(m, name));
    Rational det = gram_determinant(*m.lattice, six);
    expect(det == -1, "determinant " + to_string(det));
    expect(cofactor_det(pairing_matrix(*m.lattice, six)) == -1, "cofactor determinant");
    auto r = [&](const ClassSpec& s) { return resolve(s, m.symbols, m.lattice->rank()); };
    std::size_t eq = 0;
    std::vector<SemiampleCase> cases;
    for (auto& w : e.witnesses) {
      if (auto* ne = std::get_if<NumericalEquivalenceWitness>(&w)) {
        std::vector<DivisorClass> span;
        for (auto& s : ne->spanning) span.push_back(r(s));
        expect(verify_numerical_equivalence(*m.lattice, r(ne->lhs), r(ne->rhs), span), "equivalence " + std::to_string(eq));
        ++eq;
      } else if (auto* s = std::get_if<SemiampleWitness>(&w)) {
        SemiampleCase c;
        c.name = s->name;
        c.kind = s->kind;
        for (auto& x : s->subset) c.subset.push_back(r(x));
        c.vector = r(s->vector);
        if (s->negative_against) c.negative_against = r(*s->negative_against);
        if (s->positive_against) c.positive_against = r(*s->positive_against);
        for (auto& x : s->equivalents) c.equivalents.push_back(r(x));
        cases.push_back(std::move(c));
      }
    }
    expect(eq == 4, std::to_string(eq) + " equivalences");
    expect(cases.size() == 10, std::to_string(cases.size()) + " semiample cases");
    auto report = semiample_witness_check(*m.lattice, cases, m.eff);
    for (auto& c : report.cases) expect(c.pass, "case " + c.name);
    return "det -1, 4 equivalences, 10 cases";
  });

  criterion(5, "fiber self-intersection and Hirzebruch-Jung round trip", [&] {
    expect(polizzi_fiber_selfint({{2, 1}, {2, 1}}) == -1, "formula");
    for (auto id : {"pq-k6-d4xz2", "pq-k4-z4xz2"}) {
      auto m = materialize(entry(id));
      expect(self_intersection(*m.lattice, sym(m, "F1")) == -1, std::string(id) + ": F1^2");
    }
    std::size_t pairs = 0;
    for (long n = 2; n <= 50; ++n)
      for (long k = 1; k < n; ++k) {
        if (std::gcd(n, k) != 1) continue;
        auto s = hj_expansion(n, k);
        expect(hj_evaluate(s.coefficients) == Rational(n, k) / 1, "1/" + std::to_string(n) + "(1," + std::to_string(k) + ")");
        ++pairs;
      }
    return std::to_string(pairs) + " coprime pairs";
  });

  criterion(6, "(-1)-class counts agree with brute force", [&] {
    const std::size_t want[] = {6, 10, 16, 27};
    std::string out;
    for (int r = 3; r <= 6; ++r) {
      auto got = enumerate_classes(build_blowup_lattice(r), -1, -1);
      auto brute = brute_force_classes(r, -1, -1, 4, 2);
      std::set<Vector> a, b(brute.begin(), brute.end());
      for (auto& c : got) a.insert(c.coeffs());
      expect(got.size() == want[r - 3], "r=" + std::to_string(r) + ": " + std::to_string(got.size()));
      expect(a == b, "r=" + std::to_string(r) + ": brute force disagrees");
      out += (out.empty() ? "" : ", ") + std::to_string(got.size());
    }
    return out;
  });

  criterion(7, "named classes are excluded with a negative product", [&] {
    const std::pair<const char*, const char*> cases[] = {{"burniat-k4-nodal", "2H-E1-E2-E3-E4-E5"},
                                                         {"burniat-k3", "2H-E1-E2-E3-E4-E5"},
                                                         {"burniat-k2", "2H-E1-E2-E3-E4-E5"},
                                                         {"burniat-k2", "3H-2E1-E2-E3-E4-E5-E6-E7"}};
    std::string out;
    for (auto [id, name] : cases) {
      auto real = realize(std::get<DelPezzoLatticeSpec>(entry(id).lattice.kind).config);
      bool found = false;
      for (auto& x : real.excluded) {
        if (format_blowup_class(x.cls) != name) continue;
        expect(x.product < 0, std::string(id) + ": product " + to_string(x.product));
        out += (out.empty() ? "" : "; ") + std::string(id) + " " + name + " by " + x.witness + " (" + to_string(x.product) + ")";
        found = true;
      }
      expect(found, std::string(id) + ": " + name + " not excluded");
      expect(real.undecided.empty(), std::string(id) + ": undecided candidates");
    }
    return out;
  });

  criterion(8, "cover transport properties and random cone properties", [&] {
    std::size_t covers = 0;
    for (auto& e : cat.entries) {
      if (!e.cover) continue;
      auto m = materialize(e);
      const auto& cov = *m.cover;
      auto up = pullback_lattice(cov);
      for (int i = 0; i < 10; ++i) {
        auto a = random_class(cov.base->rank()), b = random_class(cov.base->rank());
        expect(pairing(up, a, b) == Rational(cov.degree) * pairing(*cov.base, a, b), e.id + ": scaling");
      }
      for (auto& [label, c] : cov.roster) {
        auto rp = reduced_pullback(cov, label);
        expect(rp.record.genus.get_den() == 1 && rp.record.genus >= 0, e.id + ": genus of " + label);
      }
      Cone eff(m.lattice, m.eff);
      auto t = transport_cones(cov, eff, dual_cone(eff));
      std::size_t down = 0, upc = 0;
      for (auto& r : extremal_rays(eff)) down += self_intersection(*m.lattice, r) < 0;
      for (auto& r : extremal_rays(t.eff)) upc += self_intersection(*t.lattice, r) < 0;
      expect(down == upc, e.id + ": negative rays " + std::to_string(down) + " vs " + std::to_string(upc));
      ++covers;
    }
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t rank = static_cast<std::size_t>(uniform(2, 4));
      auto lat = shared(SurfaceLattice(Matrix::identity(rank), {}));
      auto gens = random_pointed(rank, static_cast<std::size_t>(uniform(2, 8)), 3);
      Cone c(lat, gens);
      expect(cone_equal(dual_cone(dual_cone(c)), c), "double dual, trial " + std::to_string(trial));
      std::vector<DivisorClass> extremal;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<Vector> others;
        for (std::size_t j = 0; j < gens.size(); ++j)
          if (!positively_proportional(gens[i].coeffs(), gens[j].coeffs())) others.push_back(gens[j].coeffs());
        if (!lp_member(others, gens[i].coeffs())) extremal.push_back(gens[i]);
      }
      expect(same_rays(extremal_rays(c), extremal), "irredundancy, trial " + std::to_string(trial));
    }
    return std::to_string(covers) + " covers, 100 random cones";
  });

  return failures == 0 ? 0 : 1;
}

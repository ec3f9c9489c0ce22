#include <doctest.h>

#include "conelab/error.hpp"
#include "conelab/pqsurf.hpp"
#include "conelab/verify.hpp"
#include "support.hpp"

#include <numeric>

using namespace conelab;
using namespace testing_support;

namespace {

std::vector<SemiampleCase> semiample_cases(const std::string& id, const MaterializedEntry& m) {
  std::vector<SemiampleCase> out;
  auto r = [&](const ClassSpec& s) { return resolve(s, m.symbols, m.lattice->rank()); };
  for (const auto& w : entry(id).witnesses) {
    const auto* s = std::get_if<SemiampleWitness>(&w);
    if (!s) continue;
    SemiampleCase c;
    c.name = s->name;
    c.kind = s->kind;
    for (auto& x : s->subset) c.subset.push_back(r(x));
    c.vector = r(s->vector);
    if (s->negative_against) c.negative_against = r(*s->negative_against);
    if (s->positive_against) c.positive_against = r(*s->positive_against);
    for (auto& x : s->equivalents) c.equivalents.push_back(r(x));
    out.push_back(std::move(c));
  }
  return out;
}

FiberIncidence two_point_incidence() {
  FiberIncidence inc;
  inc.points = {{"E1", 2, 1}, {"E2", 2, 1}};
  inc.f_fibers = {{"F1", {"E1", "E2"}, 1, std::nullopt}};
  inc.g_fibers = {{"G1", {"E1", "E2"}, 2, std::nullopt}};
  inc.cross_pairings[{"F1", "G1"}] = 0;
  return inc;
}

ErrorCode code_of(const FiberIncidence& inc) {
  try {
    (void)build_pq_lattice(inc);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::schema;
}

}  // namespace

TEST_SUITE("pqsurf") {
  TEST_CASE("Hirzebruch-Jung strings") {
    CHECK(hj_expansion(2, 1).coefficients == std::vector<long>{2});
    CHECK(hj_expansion(3, 1).coefficients == std::vector<long>{3});
    CHECK(hj_expansion(3, 2).coefficients == std::vector<long>{2, 2});
    CHECK(hj_expansion(5, 2).coefficients == std::vector<long>{3, 2});
    CHECK(hj_expansion(7, 3).coefficients == std::vector<long>{3, 2, 2});
    CHECK(hj_expansion(4, 3).coefficients == std::vector<long>{2, 2, 2});
    for (auto [n, k] : {std::pair{4L, 2L}, std::pair{1L, 1L}, std::pair{5L, 0L}, std::pair{5L, 5L}, std::pair{5L, -1L}}) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK_THROWS_AS(hj_expansion(n, k), Error);
    }
  }

  TEST_CASE("round trip for every coprime pair up to 50") {
    std::size_t pairs = 0;
    for (long n = 2; n <= 50; ++n) {
      for (long k = 1; k < n; ++k) {
        if (std::gcd(n, k) != 1) continue;
        ++pairs;
        auto s = hj_expansion(n, k);
        CHECK(hj_evaluate(s.coefficients) == Rational(n, k) / 1);
        for (long b : s.coefficients) CHECK(b >= 2);
        // the string of k^-1 mod n is the reversed string
        long kinv = 1;
        while ((kinv * k) % n != 1) ++kinv;
        auto rev = hj_expansion(n, kinv).coefficients;
        std::reverse(rev.begin(), rev.end());
        CHECK(rev == s.coefficients);
      }
    }
    CHECK(pairs == 773);
  }

  TEST_CASE("fiber self-intersection") {
    CHECK(polizzi_fiber_selfint({{2, 1}, {2, 1}}) == -1);
    CHECK(polizzi_fiber_selfint({{3, 1}, {3, 2}}) == -1);
    CHECK(polizzi_fiber_selfint({{5, 2}}) == Rational(-2, 5));
    CHECK(polizzi_fiber_selfint({}) == 0);
  }

  TEST_CASE("fiber self-intersection in both catalogued surfaces") {
    for (auto id : {"pq-k6-d4xz2", "pq-k4-z4xz2"}) {
      CAPTURE(id);
      auto m = materialize(entry(id));
      for (auto name : {"F1", "G1"}) CHECK(self_intersection(*m.lattice, sym(m, name)) == -1);
      for (auto name : {"E1", "E2"}) CHECK(self_intersection(*m.lattice, sym(m, name)) == -2);
    }
  }

  TEST_CASE("lattice from incidence data") {
    auto pq = build_pq_lattice(two_point_incidence());
    const auto& lat = pq.lattice;
    CHECK(lat.basis_names() == std::vector<std::string>{"E1", "E2", "F1", "G1"});
    CHECK(pq.exceptional == std::vector<std::string>{"E1", "E2"});
    CHECK(lat.gram() == mat({{-2, 0, 1, 1}, {0, -2, 1, 1}, {1, 1, -1, 0}, {1, 1, 0, -1}}));
    CHECK(pq.genera.at("G1") == 2);
    CHECK(pq.genera.at("E1") == 0);
  }

  TEST_CASE("longer strings attach at opposite ends") {
    FiberIncidence inc;
    inc.points = {{"P", 5, 2}};
    inc.f_fibers = {{"F1", {"P"}, 0, std::nullopt}};
    inc.g_fibers = {{"G1", {"P"}, 0, std::nullopt}};
    inc.cross_pairings[{"F1", "G1"}] = 1;
    auto pq = build_pq_lattice(inc);
    REQUIRE(pq.exceptional.size() == 2);
    auto f = *pq.lattice.index_of("F1");
    auto g = *pq.lattice.index_of("G1");
    CHECK(pq.lattice.gram()(0, 0) == -3);
    CHECK(pq.lattice.gram()(1, 1) == -2);
    CHECK(pq.lattice.gram()(0, 1) == 1);
    CHECK(pq.lattice.gram()(0, f) == 1);
    CHECK(pq.lattice.gram()(1, f) == 0);
    CHECK(pq.lattice.gram()(1, g) == 1);
    CHECK(pq.lattice.gram()(f, f) == Rational(-2, 5));
  }

  TEST_CASE("incidence errors") {
    auto unknown = two_point_incidence();
    unknown.f_fibers[0].points.push_back("E9");
    CHECK(code_of(unknown) == ErrorCode::inconsistent_incidence);

    auto twice = two_point_incidence();
    twice.f_fibers.push_back({"F2", {"E1"}, 1, std::nullopt});
    twice.cross_pairings[{"F2", "G1"}] = 0;
    CHECK(code_of(twice) == ErrorCode::inconsistent_incidence);

    auto missing = two_point_incidence();
    missing.cross_pairings.clear();
    CHECK(code_of(missing) == ErrorCode::invalid_argument);

    auto bad_type = two_point_incidence();
    bad_type.points[0].n = 4;
    bad_type.points[0].k = 2;
    CHECK_THROWS_AS(build_pq_lattice(bad_type), Error);
  }

  TEST_CASE("canonical class solved by adjunction") {
    for (auto [id, k2] : {std::pair{"pq-k6-d4xz2", 6}, std::pair{"pq-k4-z4xz2", 4}}) {
      CAPTURE(id);
      auto m = materialize(entry(id));
      const auto& k = *m.lattice->canonical();
      CHECK(self_intersection(*m.lattice, k) == k2);
      for (auto& [label, c] : m.curve_classes) CHECK(arithmetic_genus(*m.lattice, c) == m.declared_genus.at(label));
    }
  }

  TEST_CASE("negative curves") {
    auto r6 = verify_entry(entry("pq-k6-d4xz2"));
    CHECK(format_negatives(r6.negatives) == "2(-2,0), (-1,1), (-1,2)");
    auto r4 = verify_entry(entry("pq-k4-z4xz2"));
    CHECK(format_negatives(r4.negatives) == "4(-1,1), 4(-2,0)");
  }

  TEST_CASE("numerical equivalences") {
    auto m = materialize(entry("pq-k4-z4xz2"));
    std::vector<DivisorClass> basis;
    for (auto n : {"F1", "E1", "G2", "E4", "F2", "E3"}) basis.push_back(sym(m, n));
    CHECK(verify_numerical_equivalence(*m.lattice, sym(m, "2F1+E1+E2"), sym(m, "2F2+E3+E4"), basis));
    CHECK(verify_numerical_equivalence(*m.lattice, sym(m, "2G1+E2+E3"), sym(m, "2G2+E4+E1"), basis));
    CHECK_FALSE(verify_numerical_equivalence(*m.lattice, sym(m, "F1"), sym(m, "G1"), basis));
    std::vector<DivisorClass> short_set(basis.begin(), basis.begin() + 3);
    try {
      (void)verify_numerical_equivalence(*m.lattice, sym(m, "F1"), sym(m, "F1"), short_set);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_spanning);
    }
    std::size_t witnesses = 0;
    for (auto& w : entry("pq-k4-z4xz2").witnesses) {
      const auto* ne = std::get_if<NumericalEquivalenceWitness>(&w);
      if (!ne) continue;
      ++witnesses;
      std::vector<DivisorClass> span;
      for (auto& s : ne->spanning) span.push_back(resolve(s, m.symbols, m.lattice->rank()));
      CHECK(verify_numerical_equivalence(*m.lattice, resolve(ne->lhs, m.symbols, m.lattice->rank()),
                                         resolve(ne->rhs, m.symbols, m.lattice->rank()), span));
    }
    CHECK(witnesses == 4);
  }

  TEST_CASE("semiample witness cases") {
    auto m = materialize(entry("pq-k4-z4xz2"));
    auto cases = semiample_cases("pq-k4-z4xz2", m);
    REQUIRE(cases.size() == 10);
    auto report = semiample_witness_check(*m.lattice, cases, m.eff);
    CHECK(report.all_pass());
    for (auto& c : report.cases) {
      CAPTURE(c.name);
      CHECK(c.failures.empty());
    }

    auto flipped = cases;
    bool changed = false;
    for (auto& c : flipped) {
      if (c.kind == SemiampleCase::Kind::not_nef && c.negative_against) {
        std::swap(c.negative_against, c.positive_against);
        changed = true;
        break;
      }
    }
    REQUIRE(changed);
    CHECK_FALSE(semiample_witness_check(*m.lattice, flipped, m.eff).all_pass());

    SemiampleCase bad;
    bad.name = "negative on an effective curve";
    bad.kind = SemiampleCase::Kind::nef;
    bad.vector = sym(m, "F1-E1");
    auto r = semiample_witness_check(*m.lattice, {bad}, m.eff);
    CHECK_FALSE(r.all_pass());
    CHECK(semiample_witness_check(*m.lattice, {}, m.eff).all_pass());
  }
}

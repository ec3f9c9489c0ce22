#include <doctest.h>

#include "conelab/delpezzo.hpp"
#include "conelab/error.hpp"
#include "support.hpp"

#include <algorithm>
#include <set>

using namespace conelab;
using namespace testing_support;

namespace {

PointConfiguration config_of(const std::string& id) {
  return std::get<DelPezzoLatticeSpec>(entry(id).lattice.kind).config;
}

std::set<Vector> as_set(const std::vector<DivisorClass>& v) {
  std::set<Vector> s;
  for (auto& c : v) s.insert(c.coeffs());
  return s;
}

std::set<Vector> as_set(const std::vector<Vector>& v) { return {v.begin(), v.end()}; }

bool throws_invalid(const PointConfiguration& cfg) {
  try {
    validate(cfg);
  } catch (const Error& e) {
    return e.code() == ErrorCode::invalid_argument;
  }
  return false;
}

}  // namespace

TEST_SUITE("delpezzo") {
  TEST_CASE("blow-up lattice") {
    for (int r = 1; r <= 8; ++r) {
      auto bl = build_blowup_lattice(r);
      CHECK(bl.lattice.rank() == static_cast<std::size_t>(r + 1));
      CHECK(self_intersection(bl.lattice, *bl.lattice.canonical()) == 9 - r);
      CHECK(bl.lattice.basis_names()[static_cast<std::size_t>(r)] == "E" + std::to_string(r));
    }
    CHECK_THROWS_AS(build_blowup_lattice(0), Error);
    CHECK_THROWS_AS(build_blowup_lattice(9), Error);
  }

  TEST_CASE("(-1)-classes match a brute-force box search") {
    const int expected[] = {6, 10, 16, 27};
    for (int r = 3; r <= 6; ++r) {
      CAPTURE(r);
      auto got = enumerate_classes(build_blowup_lattice(r), -1, -1);
      CHECK(got.size() == static_cast<std::size_t>(expected[r - 3]));
      CHECK(as_set(got) == as_set(brute_force_classes(r, -1, -1, 4, 2)));
    }
  }

  TEST_CASE("(-2)-classes match a brute-force box search") {
    for (int r = 2; r <= 6; ++r) {
      CAPTURE(r);
      auto got = enumerate_classes(build_blowup_lattice(r), -2, 0);
      CHECK(as_set(got) == as_set(brute_force_classes(r, -2, 0, 4, 2)));
    }
  }

  TEST_CASE("frozen totals") {
    CHECK(enumerate_classes(build_blowup_lattice(7), -1, -1).size() == 56);
    CHECK(enumerate_classes(build_blowup_lattice(8), -1, -1).size() == 240);
    const std::size_t roots[] = {0, 2, 7, 16, 30, 51, 84, 148};
    for (int r = 1; r <= 8; ++r) CHECK(enumerate_classes(build_blowup_lattice(r), -2, 0).size() == roots[r - 1]);
  }

  TEST_CASE("every enumerated class has the requested numbers") {
    for (int r = 1; r <= 8; ++r) {
      auto bl = build_blowup_lattice(r);
      const auto& k = *bl.lattice.canonical();
      for (auto [s, kd] : {std::pair{-1, -1}, std::pair{-2, 0}}) {
        auto got = enumerate_classes(bl, s, kd);
        CHECK(got.size() == as_set(got).size());
        for (auto& c : got) {
          CHECK(self_intersection(bl.lattice, c) == s);
          CHECK(pairing(bl.lattice, k, c) == kd);
          CHECK(c[0] >= 0);
        }
      }
    }
  }

  TEST_CASE("(-2)-classes have the expected shapes") {
    for (auto& c : enumerate_classes(build_blowup_lattice(8), -2, 0)) {
      long d = to_long(c[0]);
      std::vector<long> m;
      for (std::size_t i = 1; i < c.size(); ++i) m.push_back(-to_long(c[i]));
      std::sort(m.begin(), m.end());
      long nonzero = std::count_if(m.begin(), m.end(), [](long x) { return x != 0; });
      if (d == 0) {
        CHECK(m.front() == -1);
        CHECK(m.back() == 1);
        CHECK(nonzero == 2);
      } else if (d == 1) {
        CHECK(nonzero == 3);
      } else if (d == 2) {
        CHECK(nonzero == 6);
      } else {
        CHECK(d == 3);
        CHECK(m.back() == 2);
        CHECK(nonzero == 8);
      }
    }
  }

  TEST_CASE("enumeration is closed under permuting the points") {
    auto set6 = as_set(enumerate_classes(build_blowup_lattice(6), -1, -1));
    for (auto v : set6) {
      std::swap(v[1], v[4]);
      CHECK(set6.count(v) == 1);
      std::rotate(v.begin() + 1, v.begin() + 2, v.end());
      CHECK(set6.count(v) == 1);
    }
  }

  TEST_CASE("unsupported numbers are rejected") {
    CHECK_THROWS_AS(enumerate_classes(build_blowup_lattice(4), -3, 1), Error);
  }

  TEST_CASE("class formatting and labels") {
    CHECK(format_blowup_class(cls({3, -2, -1, -1, -1, -1, -1, -1})) == "3H-2E1-E2-E3-E4-E5-E6-E7");
    CHECK(format_blowup_class(cls({0, 1, -1})) == "E1-E2");
    CHECK(blowup_curve_label(cls({0, 0, 1})) == "E2");
    CHECK(blowup_curve_label(cls({0, 1, -1})) == "E1-E2");
    CHECK(blowup_curve_label(cls({1, -1, 0, 0, -1, -1})) == "L145");
    CHECK(blowup_curve_label(cls({2, -1, -1, -1, -1, -1})) == "Q12345");
  }

  TEST_CASE("realized curves per configuration") {
    const std::pair<const char*, std::size_t> counts[] = {
        {"kulikov", 6},         {"burniat-k6", 6},          {"burniat-k5", 10}, {"burniat-k4-nonnodal", 16},
        {"burniat-k4-nodal", 13}, {"burniat-k3", 15}, {"burniat-k2", 16}};
    for (auto [id, n] : counts) {
      CAPTURE(id);
      auto cfg = config_of(id);
      CHECK_NOTHROW(validate(cfg));
      auto real = realize(cfg);
      CHECK(real.realized.size() == n);
      CHECK(real.undecided.empty());
      auto bl = build_blowup_lattice(cfg.r);
      for (auto& a : real.realized) {
        CHECK(a.self_int == self_intersection(bl.lattice, a.cls));
        CHECK(a.genus == arithmetic_genus(bl.lattice, a.cls));
        for (auto& b : real.realized)
          if (!(a.cls == b.cls)) CHECK(pairing(bl.lattice, a.cls, b.cls) >= 0);
      }
      for (auto& x : real.excluded) {
        CHECK(x.product < 0);
        CHECK(x.residual == x.cls - [&] {
          for (auto& a : real.realized)
            if (a.label == x.witness) return a.cls;
          return DivisorClass::zero(x.cls.size());
        }());
      }
    }
  }

  TEST_CASE("infinitely near chain") {
    PointConfiguration cfg;
    cfg.r = 2;
    cfg.infinitely_near = {{2, 1}};
    auto real = realize(cfg);
    std::set<std::string> labels;
    for (auto& c : real.realized) labels.insert(c.label);
    CHECK(labels == std::set<std::string>{"E1-E2", "E2", "L12"});
    CHECK(real.undecided.empty());
  }

  TEST_CASE("general points") {
    PointConfiguration cfg;
    cfg.r = 5;
    auto real = realize(cfg);
    CHECK(real.realized.size() == 16);
    CHECK(weak_dp_check(cfg).del_pezzo());
  }

  TEST_CASE("structurally impossible configurations") {
    PointConfiguration two_parents;
    two_parents.r = 3;
    two_parents.infinitely_near = {{3, 1}, {3, 2}};
    CHECK(throws_invalid(two_parents));

    PointConfiguration cycle;
    cycle.r = 2;
    cycle.infinitely_near = {{1, 2}, {2, 1}};
    CHECK(throws_invalid(cycle));

    PointConfiguration four;
    four.r = 4;
    four.collinear = {{1, 2, 3, 4}};
    CHECK(throws_invalid(four));

    PointConfiguration share;
    share.r = 4;
    share.collinear = {{1, 2, 3}, {1, 2, 4}};
    CHECK(throws_invalid(share));

    PointConfiguration conic;
    conic.r = 6;
    conic.collinear = {{1, 2, 3}};
    conic.coconic = {{1, 2, 3, 4, 5, 6}};
    CHECK(throws_invalid(conic));

    PointConfiguration range;
    range.r = 3;
    range.collinear = {{1, 2, 7}};
    CHECK(throws_invalid(range));

    PointConfiguration open;
    open.r = 4;
    open.infinitely_near = {{4, 1}};
    open.collinear = {{2, 3, 4}};
    CHECK(throws_invalid(open));
  }

  TEST_CASE("named exclusions carry their certificate") {
    const std::pair<const char*, const char*> cases[] = {{"burniat-k4-nodal", "2H-E1-E2-E3-E4-E5"},
                                                         {"burniat-k3", "2H-E1-E2-E3-E4-E5"},
                                                         {"burniat-k2", "2H-E1-E2-E3-E4-E5"},
                                                         {"burniat-k2", "3H-2E1-E2-E3-E4-E5-E6-E7"}};
    for (auto [id, name] : cases) {
      CAPTURE(id);
      CAPTURE(name);
      auto real = realize(config_of(id));
      auto it = std::find_if(real.excluded.begin(), real.excluded.end(),
                             [&](const Exclusion& x) { return format_blowup_class(x.cls) == name; });
      REQUIRE(it != real.excluded.end());
      CHECK(it->witness == "L145");
      CHECK(it->product == -1);
    }
  }

  TEST_CASE("weak del Pezzo check") {
    auto nodal = weak_dp_check(config_of("burniat-k4-nodal"));
    CHECK(nodal.k2 == 4);
    CHECK(nodal.weak());
    CHECK_FALSE(nodal.del_pezzo());
    CHECK(nodal.anticanonical_zero == 1);
    CHECK(weak_dp_check(config_of("burniat-k4-nonnodal")).del_pezzo());
    CHECK(weak_dp_check(config_of("burniat-k2")).anticanonical_zero == 6);
  }
}

#include "conelab/pqsurf.hpp"

#include "conelab/error.hpp"

#include <numeric>
#include <set>

namespace conelab {

HJString hj_expansion(long n, long k) {
  if (n < 2 || k < 1 || k >= n || std::gcd(n, k) != 1) {
    throw Error(ErrorCode::invalid_argument,
                "invalid singularity type 1/" + std::to_string(n) + "(1," + std::to_string(k) + ")");
  }
  HJString s{n, k, {}};
  long a = n, b = k;
  while (b != 0) {
    long q = (a + b - 1) / b;
    s.coefficients.push_back(q);
    long next = q * b - a;
    a = b;
    b = next;
  }
  return s;
}

Rational hj_evaluate(const std::vector<long>& coefficients) {
  if (coefficients.empty()) throw Error(ErrorCode::invalid_argument, "empty continued fraction");
  Rational v(coefficients.back());
  for (auto it = coefficients.rbegin() + 1; it != coefficients.rend(); ++it) v = Rational(*it) - 1 / v;
  return v;
}

Rational polizzi_fiber_selfint(const std::vector<std::pair<long, long>>& sings) {
  Rational s = 0;
  for (auto [n, k] : sings) {
    hj_expansion(n, k);
    s -= Rational(k, n);
  }
  s.canonicalize();
  return s;
}

namespace {

long inverse_mod(long k, long n) {
  for (long x = 1; x < n; ++x)
    if ((k * x) % n == 1) return x;
  return 1;
}

}  // namespace

PqLattice build_pq_lattice(const FiberIncidence& data) {
  std::vector<std::string> names;
  std::map<std::string, Rational> genera;
  std::map<std::string, std::pair<std::size_t, std::size_t>> string_span;  // point -> [first,last]
  std::vector<Rational> diag;
  std::map<std::string, const SingularPoint*> by_label;
  for (const auto& p : data.points) {
    if (!by_label.emplace(p.label, &p).second)
      throw Error(ErrorCode::inconsistent_incidence, "duplicate singular point " + p.label);
    HJString s = hj_expansion(p.n, p.k);
    std::size_t first = names.size();
    for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
      names.push_back(s.coefficients.size() == 1 ? p.label : p.label + "_" + std::to_string(i + 1));
      diag.emplace_back(-s.coefficients[i]);
      genera[names.back()] = 0;
    }
    string_span[p.label] = {first, names.size() - 1};
  }
  const std::size_t n_exc = names.size();

  std::map<std::string, int> f_side, g_side;
  auto add_fibers = [&](const std::vector<ReducedFiber>& fibers, bool f, std::map<std::string, int>& side) {
    for (const auto& fib : fibers) {
      std::vector<std::pair<long, long>> sings;
      for (const auto& lbl : fib.points) {
        auto it = by_label.find(lbl);
        if (it == by_label.end())
          throw Error(ErrorCode::inconsistent_incidence, "fiber " + fib.name + " names unknown point " + lbl);
        if (++side[lbl] > 1)
          throw Error(ErrorCode::inconsistent_incidence,
                      "string " + lbl + " meets two " + (f ? "F" : "G") + "-side fibers");
        const SingularPoint& p = *it->second;
        sings.emplace_back(p.n, f ? p.k : inverse_mod(p.k, p.n));
      }
      names.push_back(fib.name);
      diag.push_back(polizzi_fiber_selfint(sings));
      genera[fib.name] = fib.genus;
    }
  };
  add_fibers(data.f_fibers, true, f_side);
  add_fibers(data.g_fibers, false, g_side);
  for (const auto& p : data.points) {
    if (!f_side.count(p.label) || !g_side.count(p.label))
      throw Error(ErrorCode::inconsistent_incidence, "string " + p.label + " must meet one F and one G fiber");
  }

  const std::size_t n = names.size();
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) gram(i, i) = diag[i];
  for (const auto& [lbl, span] : string_span) {
    for (std::size_t i = span.first; i < span.second; ++i) gram(i, i + 1) = gram(i + 1, i) = 1;
  }
  std::size_t idx = n_exc;
  for (const auto& fib : data.f_fibers) {
    for (const auto& lbl : fib.points) gram(idx, string_span[lbl].first) = gram(string_span[lbl].first, idx) = 1;
    ++idx;
  }
  for (const auto& fib : data.g_fibers) {
    for (const auto& lbl : fib.points) gram(idx, string_span[lbl].second) = gram(string_span[lbl].second, idx) = 1;
    ++idx;
  }
  for (std::size_t a = 0; a < data.f_fibers.size(); ++a) {
    for (std::size_t b = 0; b < data.g_fibers.size(); ++b) {
      auto key = std::make_pair(data.f_fibers[a].name, data.g_fibers[b].name);
      auto it = data.cross_pairings.find(key);
      if (it == data.cross_pairings.end())
        throw Error(ErrorCode::invalid_argument, "F.G value required for (" + key.first + "," + key.second + ")");
      const std::size_t i = n_exc + a, j = n_exc + data.f_fibers.size() + b;
      gram(i, j) = gram(j, i) = it->second;
    }
  }
  std::vector<std::string> exceptional(names.begin(), names.begin() + static_cast<long>(n_exc));
  return {SurfaceLattice(std::move(gram), std::move(names)), std::move(exceptional), std::move(genera)};
}

bool verify_numerical_equivalence(const SurfaceLattice& lat, const DivisorClass& lhs, const DivisorClass& rhs,
                                  const std::vector<DivisorClass>& spanning) {
  lat.require_conforming(lhs);
  lat.require_conforming(rhs);
  Matrix pm(spanning.size(), lat.rank());
  for (std::size_t i = 0; i < spanning.size(); ++i) {
    lat.require_conforming(spanning[i]);
    Vector row = lat.gram() * spanning[i].coeffs();
    for (std::size_t j = 0; j < lat.rank(); ++j) pm(i, j) = row[j];
  }
  const std::size_t achieved = rank(pm), full = rank(lat.gram());
  if (achieved != full) {
    throw Error(ErrorCode::not_spanning, "spanning set detects rank " + std::to_string(achieved) + " of " +
                                             std::to_string(full));
  }
  const DivisorClass diff = lhs - rhs;
  for (const auto& s : spanning)
    if (pairing(lat, diff, s) != 0) return false;
  return true;
}

bool SemiampleReport::all_pass() const {
  for (const auto& c : cases)
    if (!c.pass) return false;
  return true;
}

SemiampleReport semiample_witness_check(const SurfaceLattice& lat, const std::vector<SemiampleCase>& cases,
                                        const std::vector<DivisorClass>& eff_generators) {
  std::vector<DivisorClass> basis;
  for (std::size_t i = 0; i < lat.rank(); ++i) basis.push_back(lat.basis_class(i));
  SemiampleReport rep;
  for (const auto& c : cases) {
    SemiampleCaseResult r{c.name, true, {}};
    auto fail = [&](std::string why) {
      r.pass = false;
      r.failures.push_back(std::move(why));
    };
    if (c.vector.size() == 0) {
      rep.cases.push_back(r);
      continue;
    }
    bool nonzero = false;
    for (const auto& b : basis)
      if (pairing(lat, c.vector, b) != 0) nonzero = true;
    if (!nonzero) fail("vector is numerically zero");
    for (std::size_t i = 0; i < c.subset.size(); ++i) {
      Rational p = pairing(lat, c.vector, c.subset[i]);
      if (p != 0) fail("not orthogonal to subset member " + std::to_string(i + 1) + " (product " + to_string(p) + ")");
    }
    if (c.kind == SemiampleCase::Kind::not_nef) {
      if (!c.negative_against || !c.positive_against) {
        fail("not-nef case needs both sign claims");
      } else {
        Rational neg = pairing(lat, c.vector, *c.negative_against);
        Rational pos = pairing(lat, c.vector, *c.positive_against);
        if (!(neg < 0)) fail("claimed negative product is " + to_string(neg));
        if (!(pos > 0)) fail("claimed positive product is " + to_string(pos));
      }
    } else {
      for (std::size_t i = 0; i < c.equivalents.size(); ++i) {
        if (!verify_numerical_equivalence(lat, c.vector, c.equivalents[i], basis))
          fail("equivalent representative " + std::to_string(i + 1) + " differs numerically");
      }
      for (std::size_t i = 0; i < eff_generators.size(); ++i) {
        Rational p = pairing(lat, c.vector, eff_generators[i]);
        if (p < 0) fail("negative on effective generator " + std::to_string(i + 1));
      }
    }
    rep.cases.push_back(std::move(r));
  }
  return rep;
}

}  // namespace conelab

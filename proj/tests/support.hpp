#pragma once

#include "conelab/catalog.hpp"
#include "conelab/lattice.hpp"

#include <stdexcept>
#include <string>

#include <memory>
#include <random>
#include <vector>

namespace testing_support {

using conelab::DivisorClass;
using conelab::Matrix;
using conelab::Rational;
using conelab::SurfaceLattice;
using conelab::Vector;

inline Vector ints(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline DivisorClass cls(std::initializer_list<long> xs) { return DivisorClass(ints(xs)); }

inline Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> rs;
  for (auto r : rows) rs.push_back(ints(r));
  return Matrix::from_rows(rs, rs.empty() ? 0 : rs.front().size());
}

inline std::shared_ptr<const SurfaceLattice> shared(SurfaceLattice lat) {
  return std::make_shared<const SurfaceLattice>(std::move(lat));
}

// Laplace expansion along the first row.
inline Rational cofactor_det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    Matrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    Rational term = m(0, c) * cofactor_det(minor);
    total += (c % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

// Exact feasibility of {x >= 0 : sum x_i g_i = v} by a plain tableau phase one
// with smallest-index pivoting.
inline bool lp_member(const std::vector<Vector>& gens, const Vector& v) {
  const std::size_t m = v.size(), n = gens.size();
  // columns: n structural, m artificial, then rhs
  std::vector<Vector> t(m, Vector(n + m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = v[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rational(-gens[j][i]) : gens[j][i];
    t[i][n + i] = 1;
    t[i][n + m] = flip ? Rational(-v[i]) : v[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  for (int guard = 0; guard < 100000; ++guard) {
    // reduced cost of column j for minimizing the sum of artificials
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m && enter == n + m; ++j) {
      bool basic = false;
      for (auto b : basis) basic = basic || b == j;
      if (basic) continue;
      Rational rc = j >= n ? Rational(1) : Rational(0);
      for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) rc -= t[i][j];
      if (rc < 0) enter = j;
    }
    if (enter == n + m) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][n + m] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return false;
    Rational p = t[leave][enter];
    for (auto& x : t[leave]) x /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n) infeas += t[i][n + m];
  return infeas == 0;
}

// All (d; m_1..m_r) in a box with D^2 = s and D.K = k on the blow-up at r points.
inline std::vector<Vector> brute_force_classes(int r, int s, int k, int dmax, int mbound) {
  std::vector<Vector> out;
  std::vector<int> m(static_cast<std::size_t>(r), -mbound);
  for (int d = 0; d <= dmax; ++d) {
    std::fill(m.begin(), m.end(), -mbound);
    while (true) {
      long sq = 1L * d * d, kd = -3L * d;
      for (int x : m) {
        sq -= 1L * x * x;
        kd += x;
      }
      if (sq == s && kd == k) {
        Vector v{Rational(d)};
        for (int x : m) v.emplace_back(-x);
        out.push_back(v);
      }
      std::size_t i = 0;
      while (i < m.size() && m[i] == mbound) m[i++] = -mbound;
      if (i == m.size()) break;
      ++m[i];
    }
  }
  return out;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20261019);
  return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rational random_rational() {
  Rational r(uniform(-9, 9), uniform(1, 5));
  r.canonicalize();
  return r;
}

inline DivisorClass random_class(std::size_t n, long lo = -4, long hi = 4) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(uniform(lo, hi));
  return DivisorClass(v);
}

inline std::filesystem::path bundled_catalog() { return std::filesystem::path(CONELAB_SOURCE_DIR) / "data" / "catalog.json"; }

inline const conelab::Catalog& bundled() {
  static const conelab::Catalog c = conelab::load_catalog(bundled_catalog());
  return c;
}

inline const conelab::SurfaceEntry& entry(const std::string& id) {
  for (const auto& e : bundled().entries)
    if (e.id == id) return e;
  throw std::out_of_range("no entry " + id);
}

inline DivisorClass sym(const conelab::MaterializedEntry& m, const std::string& name) {
  return conelab::parse_class_expression(name, m.symbols, m.lattice->rank());
}

}  // namespace testing_support

#include "conelab/simplex.hpp"

#include "conelab/error.hpp"

namespace conelab {

std::optional<Vector> nonnegative_solution(const Matrix& a, std::span<const Rational> b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw Error(ErrorCode::dimension_mismatch, "simplex right-hand side has wrong length");

  // columns: n structural, m artificial, 1 right-hand side; last row holds reduced costs
  const std::size_t width = n + m + 1;
  const std::size_t rhs = n + m;
  Matrix t(m + 1, width);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    t(i, n + i) = 1;
    t(i, rhs) = flip ? Rational(-b[i]) : Rational(b[i]);
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) t(m, j) -= t(i, j);
  }
  for (std::size_t i = 0; i < m; ++i) t(m, rhs) -= t(i, rhs);

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (t(m, j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational r = t(i, rhs) / t(i, enter);
      if (leave == m || r < best || (r == best && basis[i] < basis[leave])) {
        leave = i;
        best = r;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen in phase one

    Rational inv = 1 / t(leave, enter);
    for (std::size_t j = 0; j < width; ++j) t(leave, j) *= inv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      Rational f = t(i, enter);
      for (std::size_t j = 0; j < width; ++j) {
        if (t(leave, j) != 0) t(i, j) -= f * t(leave, j);
      }
    }
    basis[leave] = enter;
  }

  if (t(m, rhs) != 0) return std::nullopt;
  Vector x(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = t(i, rhs);
  }
  return x;
}

}  // namespace conelab

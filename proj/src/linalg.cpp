#include "conelab/linalg.hpp"

#include "conelab/error.hpp"

#include <utility>

namespace conelab {

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorCode::dimension_mismatch,
                  "matrix row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector Matrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return Vector(r.begin(), r.end());
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Vector operator*(const Matrix& m, std::span<const Rational> v) {
  if (v.size() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "matrix has " + std::to_string(m.cols()) +
                                                   " columns, vector has " + std::to_string(v.size()));
  }
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), v);
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                "dot product of lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

RowEchelon row_reduce(Matrix m) {
  RowEchelon out;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(lead_row, j));
    }
    Rational inv = 1 / m(lead_row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead_row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(lead_row, j);
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::vector<Vector> nullspace(const Matrix& m) {
  RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(Matrix m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "determinant of a non-square matrix");
  }
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      Rational f = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

SolveResult solve_linear(const Matrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "right-hand side has " + std::to_string(b.size()) +
                                                   " entries for " + std::to_string(a.rows()) + " equations");
  }
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  RowEchelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return {SolveStatus::inconsistent, {}};
  if (e.pivots.size() < a.cols()) return {SolveStatus::underdetermined, {}};
  Vector x(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return {SolveStatus::unique, std::move(x)};
}

bool is_zero(std::span<const Rational> v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Vector primitive(std::span<const Rational> v) {
  Vector out(v.begin(), v.end());
  if (is_zero(out)) return out;
  Integer den_lcm = 1;
  for (const auto& x : out) {
    if (x != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
  }
  Integer num_gcd = 0;
  for (auto& x : out) {
    x *= den_lcm;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
  }
  for (auto& x : out) x /= num_gcd;
  return out;
}

Vector primitive_line(std::span<const Rational> v) {
  Vector out = primitive(v);
  for (const auto& x : out) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : out) y = -y;
    break;
  }
  return out;
}

namespace {

// Returns t with b = t a, or 0 if none (or a == 0).
Rational ratio(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) return 0;
  Rational t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) {
      t = b[i] / a[i];
      break;
    }
  }
  if (t == 0) return 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] != t * a[i]) return 0;
  }
  return t;
}

}  // namespace

bool positively_proportional(std::span<const Rational> a, std::span<const Rational> b) {
  return ratio(a, b) > 0;
}

bool proportional(std::span<const Rational> a, std::span<const Rational> b) { return ratio(a, b) != 0; }

}  // namespace conelab

#pragma once

#include "conelab/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace conelab {

using Vector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Rational> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector row_vector(std::size_t i) const;

  Matrix transposed() const;
  bool is_symmetric() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Vector operator*(const Matrix& m, std::span<const Rational> v);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

struct RowEchelon {
  Matrix reduced;                   ///< reduced row echelon form
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

RowEchelon row_reduce(Matrix m);
std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column, in rref order.
std::vector<Vector> nullspace(const Matrix& m);

Rational determinant(Matrix m);

enum class SolveStatus { unique, underdetermined, inconsistent };

struct SolveResult {
  SolveStatus status;
  Vector solution;  ///< filled only when status == unique
};

SolveResult solve_linear(const Matrix& a, std::span<const Rational> b);

bool is_zero(std::span<const Rational> v);

/// Positive rescaling to an integer vector with gcd 1. Zero stays zero.
Vector primitive(std::span<const Rational> v);

/// primitive(), then flipped so the first nonzero entry is positive.
Vector primitive_line(std::span<const Rational> v);

/// True when b = t a for some t > 0.
bool positively_proportional(std::span<const Rational> a, std::span<const Rational> b);

/// True when b = t a for some t != 0.
bool proportional(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace conelab

#pragma once

#include "conelab/linalg.hpp"
#include "conelab/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace conelab {

/// Coefficient vector of a divisor class against a lattice basis.
class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(Vector coeffs) : coeffs_(std::move(coeffs)) {}

  static DivisorClass zero(std::size_t rank) { return DivisorClass(Vector(rank)); }
  static DivisorClass unit(std::size_t rank, std::size_t index);

  std::size_t size() const noexcept { return coeffs_.size(); }
  const Vector& coeffs() const noexcept { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  bool is_zero() const { return conelab::is_zero(coeffs_); }

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  DivisorClass& operator*=(const Rational& scalar);

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator-(DivisorClass a) { return a *= Rational(-1); }
  friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

 private:
  Vector coeffs_;
};

/// Néron–Severi lattice modulo numerical equivalence: a symmetric rational
/// pairing on named basis classes, optionally with the canonical class.
class SurfaceLattice {
 public:
  SurfaceLattice(Matrix gram, std::vector<std::string> basis_names,
                 std::optional<DivisorClass> canonical = std::nullopt,
                 std::optional<Rational> declared_k2 = std::nullopt, std::string torsion_note = {});

  std::size_t rank() const noexcept { return gram_.rows(); }
  const Matrix& gram() const noexcept { return gram_; }
  const std::vector<std::string>& basis_names() const noexcept { return basis_names_; }
  const std::optional<DivisorClass>& canonical() const noexcept { return canonical_; }
  const std::optional<Rational>& declared_k2() const noexcept { return declared_k2_; }
  const std::string& torsion_note() const noexcept { return torsion_note_; }

  SurfaceLattice with_canonical(DivisorClass k) const;
  std::optional<std::size_t> index_of(const std::string& name) const;
  DivisorClass basis_class(std::size_t i) const { return DivisorClass::unit(rank(), i); }
  bool is_degenerate() const;

  /// Throws dimension_mismatch unless c has one coefficient per basis class.
  void require_conforming(const DivisorClass& c) const;

 private:
  Matrix gram_;
  std::vector<std::string> basis_names_;
  std::optional<DivisorClass> canonical_;
  std::optional<Rational> declared_k2_;
  std::string torsion_note_;
};

Rational pairing(const SurfaceLattice& lat, const DivisorClass& a, const DivisorClass& b);
Rational self_intersection(const SurfaceLattice& lat, const DivisorClass& c);

/// p_a(C) = 1 + (C·C + K·C)/2. Integrality is the caller's business.
Rational arithmetic_genus(const SurfaceLattice& lat, const DivisorClass& c);

/// K·C forced by adjunction for a curve of arithmetic genus g.
Rational adjunction_k_degree(const SurfaceLattice& lat, const DivisorClass& c, const Rational& genus);

struct PairingConstraint {
  DivisorClass against;
  Rational value;
};

/// Unique x with <x, c_i> = v_i. Throws underdetermined or inconsistent.
DivisorClass solve_class_from_pairings(const SurfaceLattice& lat, std::span<const PairingConstraint> constraints);

/// det of the pairwise pairing matrix; needs exactly rank() classes.
Rational gram_determinant(const SurfaceLattice& lat, std::span<const DivisorClass> classes);

Matrix pairing_matrix(const SurfaceLattice& lat, std::span<const DivisorClass> classes);

/// Result of passing to a basis of the numerical quotient.
struct ReducedLattice {
  SurfaceLattice lattice;
  std::vector<DivisorClass> images;  ///< every original basis class, in the new basis
};

/// Re-expresses the lattice on the named sub-basis. The chosen classes must
/// have a nonsingular pairing matrix of full numerical rank; the kernel of
/// the original form is discarded.
ReducedLattice reduce_to_basis(const SurfaceLattice& lat, std::span<const std::size_t> basis);

}  // namespace conelab

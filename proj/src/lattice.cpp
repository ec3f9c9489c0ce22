#include "conelab/lattice.hpp"

#include "conelab/error.hpp"

namespace conelab {

DivisorClass DivisorClass::unit(std::size_t rank, std::size_t index) {
  Vector v(rank);
  v.at(index) = 1;
  return DivisorClass(std::move(v));
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  if (other.size() != size()) {
    throw Error(ErrorCode::dimension_mismatch, "adding classes of ranks " + std::to_string(size()) + " and " +
                                                   std::to_string(other.size()));
  }
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  if (other.size() != size()) {
    throw Error(ErrorCode::dimension_mismatch, "subtracting classes of ranks " + std::to_string(size()) + " and " +
                                                   std::to_string(other.size()));
  }
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

DivisorClass& DivisorClass::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

SurfaceLattice::SurfaceLattice(Matrix gram, std::vector<std::string> basis_names,
                               std::optional<DivisorClass> canonical, std::optional<Rational> declared_k2,
                               std::string torsion_note)
    : gram_(std::move(gram)),
      basis_names_(std::move(basis_names)),
      canonical_(std::move(canonical)),
      declared_k2_(std::move(declared_k2)),
      torsion_note_(std::move(torsion_note)) {
  if (gram_.rows() == 0 || gram_.rows() != gram_.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "gram matrix must be square and nonempty");
  }
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = i + 1; j < rank(); ++j) {
      if (gram_(i, j) != gram_(j, i)) {
        throw Error(ErrorCode::invalid_argument, "gram matrix not symmetric at (" + std::to_string(i) + "," +
                                                     std::to_string(j) + "): " + to_string(gram_(i, j)) +
                                                     " vs " + to_string(gram_(j, i)));
      }
    }
  }
  if (basis_names_.empty()) {
    for (std::size_t i = 0; i < rank(); ++i) basis_names_.push_back("e" + std::to_string(i + 1));
  }
  if (basis_names_.size() != rank()) {
    throw Error(ErrorCode::dimension_mismatch, std::to_string(basis_names_.size()) + " basis names for rank " +
                                                   std::to_string(rank()));
  }
  for (std::size_t i = 0; i < basis_names_.size(); ++i) {
    for (std::size_t j = i + 1; j < basis_names_.size(); ++j) {
      if (basis_names_[i] == basis_names_[j]) {
        throw Error(ErrorCode::invalid_argument, "duplicate basis name " + basis_names_[i]);
      }
    }
  }
  if (canonical_) {
    require_conforming(*canonical_);
    if (declared_k2_) {
      Rational k2 = dot(canonical_->coeffs(), gram_ * canonical_->coeffs());
      if (k2 != *declared_k2_) {
        throw Error(ErrorCode::inconsistent, "canonical class has K^2 = " + to_string(k2) + ", declared " +
                                                 to_string(*declared_k2_));
      }
    }
  }
}

SurfaceLattice SurfaceLattice::with_canonical(DivisorClass k) const {
  return SurfaceLattice(gram_, basis_names_, std::move(k), declared_k2_, torsion_note_);
}

std::optional<std::size_t> SurfaceLattice::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < basis_names_.size(); ++i)
    if (basis_names_[i] == name) return i;
  return std::nullopt;
}

bool SurfaceLattice::is_degenerate() const { return conelab::rank(gram_) < rank(); }

void SurfaceLattice::require_conforming(const DivisorClass& c) const {
  if (c.size() != rank()) {
    throw Error(ErrorCode::dimension_mismatch, "class of rank " + std::to_string(c.size()) +
                                                   " used in a lattice of rank " + std::to_string(rank()));
  }
}

Rational pairing(const SurfaceLattice& lat, const DivisorClass& a, const DivisorClass& b) {
  lat.require_conforming(a);
  lat.require_conforming(b);
  return dot(a.coeffs(), lat.gram() * b.coeffs());
}

Rational self_intersection(const SurfaceLattice& lat, const DivisorClass& c) { return pairing(lat, c, c); }

Rational arithmetic_genus(const SurfaceLattice& lat, const DivisorClass& c) {
  if (!lat.canonical()) throw Error(ErrorCode::canonical_missing, "canonical class required");
  return 1 + (pairing(lat, c, c) + pairing(lat, *lat.canonical(), c)) / 2;
}

Rational adjunction_k_degree(const SurfaceLattice& lat, const DivisorClass& c, const Rational& genus) {
  return 2 * genus - 2 - pairing(lat, c, c);
}

DivisorClass solve_class_from_pairings(const SurfaceLattice& lat, std::span<const PairingConstraint> constraints) {
  Matrix a(constraints.size(), lat.rank());
  Vector b(constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    lat.require_conforming(constraints[i].against);
    Vector row = lat.gram() * constraints[i].against.coeffs();
    for (std::size_t j = 0; j < lat.rank(); ++j) a(i, j) = row[j];
    b[i] = constraints[i].value;
  }
  SolveResult r = solve_linear(a, b);
  switch (r.status) {
    case SolveStatus::unique:
      return DivisorClass(std::move(r.solution));
    case SolveStatus::underdetermined:
      throw Error(ErrorCode::underdetermined,
                  "underdetermined: constraints span rank " + std::to_string(conelab::rank(a)) + " of " +
                      std::to_string(lat.rank()));
    case SolveStatus::inconsistent:
      break;
  }
  throw Error(ErrorCode::inconsistent, "no solution: pairing constraints are inconsistent");
}

Matrix pairing_matrix(const SurfaceLattice& lat, std::span<const DivisorClass> classes) {
  Matrix m(classes.size(), classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i; j < classes.size(); ++j) m(i, j) = m(j, i) = pairing(lat, classes[i], classes[j]);
  return m;
}

Rational gram_determinant(const SurfaceLattice& lat, std::span<const DivisorClass> classes) {
  if (classes.size() != lat.rank()) {
    throw Error(ErrorCode::wrong_count, "gram determinant needs " + std::to_string(lat.rank()) +
                                            " classes, got " + std::to_string(classes.size()));
  }
  return determinant(pairing_matrix(lat, classes));
}

ReducedLattice reduce_to_basis(const SurfaceLattice& lat, std::span<const std::size_t> basis) {
  std::vector<DivisorClass> chosen;
  std::vector<std::string> names;
  for (auto i : basis) {
    if (i >= lat.rank()) throw Error(ErrorCode::invalid_argument, "basis index out of range");
    chosen.push_back(lat.basis_class(i));
    names.push_back(lat.basis_names()[i]);
  }
  Matrix sub = pairing_matrix(lat, chosen);
  if (conelab::rank(sub) != chosen.size()) {
    throw Error(ErrorCode::degenerate_pairing, "chosen basis has a singular pairing matrix");
  }
  if (chosen.size() != conelab::rank(lat.gram())) {
    throw Error(ErrorCode::not_spanning, "chosen basis has " + std::to_string(chosen.size()) +
                                             " classes, numerical rank is " +
                                             std::to_string(conelab::rank(lat.gram())));
  }
  // image of v: the unique y with <y, b_k> = <v, b_k> for every chosen b_k
  auto image_of = [&](const DivisorClass& v) {
    Vector rhs;
    for (const auto& b : chosen) rhs.push_back(pairing(lat, v, b));
    SolveResult r = solve_linear(sub, rhs);
    return DivisorClass(std::move(r.solution));
  };
  std::vector<DivisorClass> images;
  for (std::size_t i = 0; i < lat.rank(); ++i) images.push_back(image_of(lat.basis_class(i)));

  std::optional<DivisorClass> canonical;
  if (lat.canonical()) canonical = image_of(*lat.canonical());
  SurfaceLattice reduced(sub, names, canonical, lat.declared_k2(), lat.torsion_note());

  // every pairing must survive the reduction
  for (std::size_t i = 0; i < lat.rank(); ++i) {
    for (std::size_t j = i; j < lat.rank(); ++j) {
      if (pairing(reduced, images[i], images[j]) != lat.gram()(i, j)) {
        throw Error(ErrorCode::inconsistent, "reduction does not preserve the pairing of " +
                                                 lat.basis_names()[i] + " and " + lat.basis_names()[j]);
      }
    }
  }
  return {std::move(reduced), std::move(images)};
}

}  // namespace conelab

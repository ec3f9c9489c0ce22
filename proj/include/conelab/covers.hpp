#pragma once

#include "conelab/cone.hpp"
#include "conelab/delpezzo.hpp"
#include "conelab/lattice.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace conelab {

/// Finite cover pi: X -> Y of degree d with m K_X == pi^*(A). X-classes live
/// in the pulled-back basis of Y.
struct CoverDescriptor {
  int degree = 1;
  int canonical_multiplier = 1;
  DivisorClass canonical_pullback;          ///< A, on Y
  std::map<std::string, int> ramification;  ///< Y-curve label -> e
  std::shared_ptr<const SurfaceLattice> base;
  std::map<std::string, DivisorClass> roster;  ///< Y-curve label -> class
};

/// Throws invalid_argument on e outside 1..d, unknown labels or bad d, m.
void validate(const CoverDescriptor& cov);

/// Gram scaled by d, canonical A/m.
SurfaceLattice pullback_lattice(const CoverDescriptor& cov);

/// D~ = pi^*D / e. Throws inconsistent_cover when the genus is not a
/// nonnegative integer.
struct ReducedPullback {
  NegativeCurveRecord record;  ///< class in the pulled-back basis
  Rational k_degree;
  int ramification = 1;
};

ReducedPullback reduced_pullback(const CoverDescriptor& cov, const std::string& label);

struct TransportedCones {
  std::shared_ptr<const SurfaceLattice> lattice;
  Cone eff;
  Cone nef;
};

/// Throws inconsistent if nef_y is not the dual of eff_y, before or after transport.
TransportedCones transport_cones(const CoverDescriptor& cov, const Cone& eff_y, const Cone& nef_y);

}  // namespace conelab

#pragma once

#include "conelab/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conelab {

/// Resolution string of a cyclic quotient singularity 1/n(1,k):
/// n/k = b1 - 1/(b2 - 1/(... - 1/bl)), all bi >= 2.
struct HJString {
  long n = 0;
  long k = 0;
  std::vector<long> coefficients;
};

HJString hj_expansion(long n, long k);

/// Value of the continued fraction b1 - 1/(b2 - ...).
Rational hj_evaluate(const std::vector<long>& coefficients);

/// F^2 = -sum k_i/n_i for the strict transform of a fiber through the points.
Rational polizzi_fiber_selfint(const std::vector<std::pair<long, long>>& sings);

struct SingularPoint {
  std::string label;  ///< curve name for a length-one string, prefix otherwise
  long n = 2;
  long k = 1;  ///< type as seen from the F side
};

struct ReducedFiber {
  std::string name;
  std::vector<std::string> points;
  Rational genus;
  std::optional<long> multiplicity;  ///< recorded, unused
};

struct FiberIncidence {
  std::vector<SingularPoint> points;
  std::vector<ReducedFiber> f_fibers;
  std::vector<ReducedFiber> g_fibers;
  /// F.G for every pair of fibers from the two fibrations; must be complete.
  std::map<std::pair<std::string, std::string>, Rational> cross_pairings;
};

struct PqLattice {
  SurfaceLattice lattice;
  std::vector<std::string> exceptional;  ///< names of the string curves
  std::map<std::string, Rational> genera;  ///< every basis curve
};

/// Basis order: string curves (per point, along the string), F fibers, G fibers.
/// F meets the first curve of each string, G the last.
PqLattice build_pq_lattice(const FiberIncidence& data);

/// True iff <lhs - rhs, s> = 0 for all s. Throws not_spanning on a
/// non-spanning set, since the test would be vacuous.
bool verify_numerical_equivalence(const SurfaceLattice& lat, const DivisorClass& lhs, const DivisorClass& rhs,
                                  const std::vector<DivisorClass>& spanning);

struct SemiampleCase {
  enum class Kind { not_nef, nef };
  std::string name;
  Kind kind = Kind::nef;
  std::vector<DivisorClass> subset;
  DivisorClass vector;
  std::optional<DivisorClass> negative_against;  ///< not_nef: <v, .> < 0
  std::optional<DivisorClass> positive_against;  ///< not_nef: <v, .> > 0
  std::vector<DivisorClass> equivalents;          ///< nef: alternative representatives
};

struct SemiampleCaseResult {
  std::string name;
  bool pass = false;
  std::vector<std::string> failures;
};

struct SemiampleReport {
  std::vector<SemiampleCaseResult> cases;
  bool all_pass() const;
};

/// Every orthogonality, sign and equivalence claim checked exactly. When
/// eff_generators is nonempty, nef cases must also pair nonnegatively with it.
SemiampleReport semiample_witness_check(const SurfaceLattice& lat, const std::vector<SemiampleCase>& cases,
                                        const std::vector<DivisorClass>& eff_generators = {});

}  // namespace conelab

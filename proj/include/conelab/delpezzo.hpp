#pragma once

#include "conelab/lattice.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conelab {

/// Blow-up of the plane at r points: basis H, E1..Er with H^2 = 1,
/// Ei^2 = -1 and K = -3H + sum Ei. Ei are total transforms.
struct BlowupLattice {
  int r = 0;
  SurfaceLattice lattice;
};

BlowupLattice build_blowup_lattice(int r);

/// Points are 1-based indices into the blown-up points.
struct PointConfiguration {
  int r = 0;
  std::vector<std::pair<int, int>> infinitely_near;  ///< (child, parent)
  std::vector<std::vector<int>> collinear;           ///< maximal sets of exactly three points
  std::vector<std::vector<int>> coconic;             ///< sets of six points on one conic
  std::string notes;
};

/// Throws invalid_argument on a structurally impossible configuration.
void validate(const PointConfiguration& cfg);

struct NegativeCurveRecord {
  DivisorClass cls;
  Rational self_int;
  Rational genus;
  std::string label;
  std::optional<bool> on_branch;
};

/// All classes D with D^2 = self_int and D.K = k_deg and H-degree >= 0.
/// Supported pairs: (-1,-1) and (-2,0).
std::vector<DivisorClass> enumerate_classes(const BlowupLattice& lat, int self_int, int k_deg);

/// Candidate removed by the Bezout rule: some realized curve C != D has
/// D.C < 0, so C is a fixed component and D - C is the residual.
struct Exclusion {
  DivisorClass cls;
  std::string label;
  std::string witness;  ///< label of the realized curve
  Rational product;     ///< D.C < 0
  DivisorClass residual;
};

struct Realization {
  std::vector<NegativeCurveRecord> realized;
  std::vector<Exclusion> excluded;
  std::vector<DivisorClass> undecided;  ///< neither proposed nor excluded
};

/// Applies the four realization rules: exceptional curves and chains,
/// lines through maximal collinear sets, conics through five points with no
/// collinear triple (or six coconic points), and Bezout exclusion.
Realization realize(const PointConfiguration& cfg);

std::vector<NegativeCurveRecord> realized_negative_curves(const PointConfiguration& cfg);

struct WeakDelPezzoReport {
  Rational k2;
  bool k2_positive = false;
  bool anticanonical_nonnegative = false;  ///< -K.C >= 0 on every realized curve
  std::size_t anticanonical_zero = 0;      ///< curves with -K.C == 0
  bool weak() const { return k2_positive && anticanonical_nonnegative; }
  bool del_pezzo() const { return weak() && anticanonical_zero == 0; }
};

WeakDelPezzoReport weak_dp_check(const PointConfiguration& cfg);

/// "2H-E1-E2-E3-E4-E5" style rendering of a blow-up class.
std::string format_blowup_class(const DivisorClass& c);

/// Short label: E1, E1-E2, L145, Q12345; falls back to format_blowup_class.
std::string blowup_curve_label(const DivisorClass& c);

}  // namespace conelab

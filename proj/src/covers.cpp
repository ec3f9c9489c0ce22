#include "conelab/covers.hpp"

#include "conelab/error.hpp"

namespace conelab {

void validate(const CoverDescriptor& cov) {
  if (!cov.base) throw Error(ErrorCode::invalid_argument, "cover has no base lattice");
  if (cov.degree < 1) throw Error(ErrorCode::invalid_argument, "cover degree must be positive");
  if (cov.canonical_multiplier < 1) throw Error(ErrorCode::invalid_argument, "canonical multiplier must be positive");
  cov.base->require_conforming(cov.canonical_pullback);
  for (const auto& [label, e] : cov.ramification) {
    if (!cov.roster.count(label)) throw Error(ErrorCode::invalid_argument, "ramification names unknown curve " + label);
    if (e < 1 || e > cov.degree)
      throw Error(ErrorCode::invalid_argument, "ramification index of " + label + " is " + std::to_string(e) +
                                                   ", outside 1.." + std::to_string(cov.degree));
  }
  for (const auto& [label, c] : cov.roster) cov.base->require_conforming(c);
}

SurfaceLattice pullback_lattice(const CoverDescriptor& cov) {
  validate(cov);
  const SurfaceLattice& y = *cov.base;
  Matrix gram = y.gram();
  const Rational d(cov.degree);
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) gram(i, j) *= d;
  DivisorClass k = Rational(1, cov.canonical_multiplier) * cov.canonical_pullback;
  std::vector<std::string> names;
  for (const auto& n : y.basis_names()) names.push_back("pi*" + n);
  return SurfaceLattice(std::move(gram), std::move(names), std::move(k));
}

ReducedPullback reduced_pullback(const CoverDescriptor& cov, const std::string& label) {
  validate(cov);
  auto it = cov.roster.find(label);
  if (it == cov.roster.end()) throw Error(ErrorCode::invalid_argument, "unknown curve " + label);
  auto rit = cov.ramification.find(label);
  const int e = rit == cov.ramification.end() ? 1 : rit->second;
  const SurfaceLattice& y = *cov.base;
  const DivisorClass& dy = it->second;

  const Rational d(cov.degree), m(cov.canonical_multiplier), ee(e);
  ReducedPullback out;
  out.ramification = e;
  out.record.cls = Rational(1, e) * dy;
  out.record.self_int = d / (ee * ee) * self_intersection(y, dy);
  out.k_degree = d / (m * ee) * pairing(y, cov.canonical_pullback, dy);
  out.record.genus = 1 + (out.record.self_int + out.k_degree) / 2;
  out.record.label = label + "~";
  out.record.on_branch = e > 1;
  if (out.record.genus.get_den() != 1 || out.record.genus < 0) {
    throw Error(ErrorCode::inconsistent_cover, "inconsistent cover data: curve " + label + " with e=" +
                                                   std::to_string(e) + " gets genus " + to_string(out.record.genus));
  }
  return out;
}

TransportedCones transport_cones(const CoverDescriptor& cov, const Cone& eff_y, const Cone& nef_y) {
  if (!cone_equal(dual_cone(eff_y), nef_y) || !cone_equal(dual_cone(nef_y), eff_y))
    throw Error(ErrorCode::inconsistent, "base cones are not mutually dual");
  auto x = std::make_shared<const SurfaceLattice>(pullback_lattice(cov));
  TransportedCones out{x, Cone(x, eff_y.generators()), Cone(x, nef_y.generators())};
  if (!cone_equal(dual_cone(out.eff), out.nef) || !cone_equal(dual_cone(out.nef), out.eff))
    throw Error(ErrorCode::inconsistent, "transported cones are not mutually dual");
  return out;
}

}  // namespace conelab

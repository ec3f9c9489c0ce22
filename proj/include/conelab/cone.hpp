#pragma once

#include "conelab/lattice.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace conelab {

/// Irredundant description of a polyhedral cone: a lineality basis plus the
/// extremal rays of the pointed part. Rays are primitive integral vectors,
/// lineality vectors are primitive with first nonzero entry positive; both
/// lists are sorted lexicographically.
struct ConeFrame {
  std::vector<DivisorClass> lineality;
  std::vector<DivisorClass> rays;
};

/// Frame of {x : A x >= 0} (double description method, exact).
ConeFrame halfspace_frame(const Matrix& constraints);

/// Rational polyhedral cone in the ambient space of a lattice. The lattice
/// pairing is only used for duality; membership is in coefficient space.
class Cone {
 public:
  Cone(std::shared_ptr<const SurfaceLattice> lattice, std::vector<DivisorClass> generators);

  static Cone from_frame(std::shared_ptr<const SurfaceLattice> lattice, ConeFrame frame);
  static Cone full_space(std::shared_ptr<const SurfaceLattice> lattice);

  std::size_t ambient_rank() const { return lattice_->rank(); }
  const SurfaceLattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const SurfaceLattice>& lattice_ptr() const { return lattice_; }
  const std::vector<DivisorClass>& generators() const { return generators_; }

  /// Computed on first use, then shared by all copies.
  const ConeFrame& frame() const;
  bool is_pointed() const { return frame().lineality.empty(); }

 private:
  struct Cache {
    std::once_flag once;
    ConeFrame frame;
  };
  std::shared_ptr<const SurfaceLattice> lattice_;
  std::vector<DivisorClass> generators_;
  std::shared_ptr<Cache> cache_;
};

/// {w : <w, g> >= 0 for every generator g}, duality taken in the lattice pairing.
Cone dual_cone(const Cone& c);

std::vector<DivisorClass> extremal_rays(const Cone& c);

struct MembershipCertificate {
  bool member = false;
  Vector combination;                    ///< one coefficient per generator, all >= 0
  std::optional<DivisorClass> separator;  ///< <w,g> >= 0 on generators, <w,v> < 0
};

/// Requires a nondegenerate pairing so that a separator always exists.
MembershipCertificate contains(const Cone& c, const DivisorClass& v);

/// Re-checks a certificate by direct arithmetic.
bool certificate_holds(const Cone& c, const DivisorClass& v, const MembershipCertificate& cert);

/// Membership in coefficient space only, no certificate and no pairing needed.
bool in_cone(std::span<const DivisorClass> generators, const DivisorClass& v);

struct FacetScan {
  std::vector<DivisorClass> normals;
  std::size_t subsets = 0;              ///< (rho-1)-subsets examined
  std::size_t independent_subsets = 0;  ///< of which linearly independent
};

/// For every (rho-1)-subset of independent generators take the annihilating
/// functional w (in the pairing) and keep +w or -w when it is nonnegative on
/// all generators. Throws not_spanning if the generators do not span.
FacetScan annihilator_facet_scan_detailed(const SurfaceLattice& lat, std::span<const DivisorClass> gens);
std::vector<DivisorClass> annihilator_facet_scan(const SurfaceLattice& lat, std::span<const DivisorClass> gens);

/// Mutual containment of generators. Throws on mismatched ambient space.
bool cone_equal(const Cone& a, const Cone& b);

/// Same set of rays up to positive scaling (duplicates ignored).
bool same_rays(std::span<const DivisorClass> a, std::span<const DivisorClass> b);

DivisorClass primitive_ray(const DivisorClass& v);

}  // namespace conelab

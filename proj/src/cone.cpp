#include "conelab/cone.hpp"

#include "conelab/error.hpp"
#include "conelab/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace conelab {

namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool subset_of(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }
  friend Bitset operator&(const Bitset& a, const Bitset& b) {
    Bitset out = a;
    for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] &= b.words_[i];
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct DdRay {
  Vector v;
  Bitset tight;
};

bool lex_less(const DivisorClass& a, const DivisorClass& b) {
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                      b.coeffs().end());
}

void sort_unique(std::vector<DivisorClass>& v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Extremal rays of the pointed cone {y : A y >= 0} where rank(A) == A.cols().
std::vector<Vector> pointed_double_description(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();

  std::vector<std::size_t> chosen;
  std::vector<Vector> chosen_rows;
  for (std::size_t i = 0; i < m && chosen.size() < k; ++i) {
    chosen_rows.push_back(a.row_vector(i));
    if (rank(Matrix::from_rows(chosen_rows, k)) == chosen_rows.size()) {
      chosen.push_back(i);
    } else {
      chosen_rows.pop_back();
    }
  }
  if (chosen.size() != k) throw Error(ErrorCode::invalid_argument, "double description needs full column rank");

  Matrix basis = Matrix::from_rows(chosen_rows, k);
  std::vector<DdRay> rays;
  for (std::size_t j = 0; j < k; ++j) {
    Vector e(k);
    e[j] = 1;
    SolveResult s = solve_linear(basis, e);
    DdRay r{primitive(s.solution), Bitset(m)};
    for (std::size_t t = 0; t < k; ++t)
      if (t != j) r.tight.set(chosen[t]);
    rays.push_back(std::move(r));
  }

  std::vector<bool> processed(m, false);
  for (auto i : chosen) processed[i] = true;

  for (std::size_t i = 0; i < m; ++i) {
    if (processed[i]) continue;
    processed[i] = true;
    auto row = a.row(i);
    std::vector<Rational> value(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      value[r] = dot(row, rays[r].v);
      if (value[r] > 0) {
        pos.push_back(r);
      } else if (value[r] < 0) {
        neg.push_back(r);
      } else {
        rays[r].tight.set(i);
      }
    }
    if (neg.empty()) continue;

    std::vector<DdRay> next;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (value[r] >= 0) next.push_back(rays[r]);

    for (auto p : pos) {
      for (auto n : neg) {
        Bitset common = rays[p].tight & rays[n].tight;
        if (k >= 2 && common.count() + 2 < k) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.subset_of(rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        Vector combined(k);
        for (std::size_t t = 0; t < k; ++t) combined[t] = value[p] * rays[n].v[t] - value[n] * rays[p].v[t];
        DdRay fresh{primitive(combined), common};
        fresh.tight.set(i);
        next.push_back(std::move(fresh));
      }
    }
    rays = std::move(next);
  }

  std::vector<Vector> out;
  for (auto& r : rays) {
    if (!is_zero(r.v)) out.push_back(std::move(r.v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Matrix constraint_matrix(const std::vector<Vector>& rows, std::size_t n) { return Matrix::from_rows(rows, n); }

}  // namespace

DivisorClass primitive_ray(const DivisorClass& v) { return DivisorClass(primitive(v.coeffs())); }

ConeFrame halfspace_frame(const Matrix& constraints) {
  const std::size_t n = constraints.cols();
  ConeFrame frame;
  for (auto& l : nullspace(constraints)) frame.lineality.emplace_back(primitive_line(l));
  sort_unique(frame.lineality);

  RowEchelon e = row_reduce(constraints);
  const std::size_t k = e.pivots.size();
  if (k == 0) return frame;

  // parametrize the row space: x = sum_j y_j b_j
  std::vector<Vector> b;
  for (std::size_t j = 0; j < k; ++j) b.push_back(e.reduced.row_vector(j));
  Matrix reduced(constraints.rows(), k);
  for (std::size_t i = 0; i < constraints.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) reduced(i, j) = dot(constraints.row(i), b[j]);

  for (const auto& y : pointed_double_description(reduced)) {
    Vector x(n);
    for (std::size_t j = 0; j < k; ++j)
      if (y[j] != 0)
        for (std::size_t t = 0; t < n; ++t) x[t] += y[j] * b[j][t];
    frame.rays.emplace_back(primitive(x));
  }
  sort_unique(frame.rays);
  return frame;
}

Cone::Cone(std::shared_ptr<const SurfaceLattice> lattice, std::vector<DivisorClass> generators)
    : lattice_(std::move(lattice)), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  if (!lattice_) throw Error(ErrorCode::invalid_argument, "cone needs a lattice");
  for (const auto& g : generators_) lattice_->require_conforming(g);
}

Cone Cone::from_frame(std::shared_ptr<const SurfaceLattice> lattice, ConeFrame frame) {
  std::vector<DivisorClass> gens = frame.rays;
  for (const auto& l : frame.lineality) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  Cone c(std::move(lattice), std::move(gens));
  std::call_once(c.cache_->once, [&] { c.cache_->frame = std::move(frame); });
  return c;
}

Cone Cone::full_space(std::shared_ptr<const SurfaceLattice> lattice) {
  ConeFrame f;
  for (std::size_t i = 0; i < lattice->rank(); ++i) f.lineality.push_back(lattice->basis_class(i));
  return from_frame(std::move(lattice), std::move(f));
}

const ConeFrame& Cone::frame() const {
  std::call_once(cache_->once, [this] {
    const std::size_t n = ambient_rank();
    // Euclidean dual first; its frame gives the facet description of this cone
    std::vector<Vector> rows;
    for (const auto& g : generators_) rows.push_back(g.coeffs());
    ConeFrame euclidean_dual = halfspace_frame(constraint_matrix(rows, n));
    std::vector<Vector> facets;
    for (const auto& r : euclidean_dual.rays) facets.push_back(r.coeffs());
    for (const auto& l : euclidean_dual.lineality) {
      facets.push_back(l.coeffs());
      facets.push_back((-l).coeffs());
    }
    cache_->frame = halfspace_frame(constraint_matrix(facets, n));
  });
  return cache_->frame;
}

Cone dual_cone(const Cone& c) {
  const SurfaceLattice& lat = c.lattice();
  std::vector<Vector> rows;
  for (const auto& g : c.generators()) rows.push_back(lat.gram() * g.coeffs());
  return Cone::from_frame(c.lattice_ptr(), halfspace_frame(constraint_matrix(rows, lat.rank())));
}

std::vector<DivisorClass> extremal_rays(const Cone& c) { return c.frame().rays; }

bool in_cone(std::span<const DivisorClass> generators, const DivisorClass& v) {
  Matrix a(v.size(), generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].size() != v.size()) throw Error(ErrorCode::dimension_mismatch, "generator rank mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) a(i, j) = generators[j][i];
  }
  return nonnegative_solution(a, v.coeffs()).has_value();
}

MembershipCertificate contains(const Cone& c, const DivisorClass& v) {
  const SurfaceLattice& lat = c.lattice();
  lat.require_conforming(v);
  if (lat.is_degenerate()) {
    throw Error(ErrorCode::degenerate_pairing, "membership certificates need a nondegenerate pairing");
  }
  const Cone dual_c = dual_cone(c);
  const ConeFrame& dual = dual_c.frame();
  for (const auto& w : dual.rays) {
    if (pairing(lat, w, v) < 0) return {false, {}, w};
  }
  for (const auto& l : dual.lineality) {
    Rational p = pairing(lat, l, v);
    if (p != 0) return {false, {}, p > 0 ? -l : l};
  }
  const auto& gens = c.generators();
  Matrix a(lat.rank(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < lat.rank(); ++i) a(i, j) = gens[j][i];
  auto lambda = nonnegative_solution(a, v.coeffs());
  if (!lambda) throw Error(ErrorCode::inconsistent, "no separator and no combination: duality failure");
  return {true, std::move(*lambda), std::nullopt};
}

bool certificate_holds(const Cone& c, const DivisorClass& v, const MembershipCertificate& cert) {
  const SurfaceLattice& lat = c.lattice();
  const auto& gens = c.generators();
  if (cert.member) {
    if (cert.combination.size() != gens.size()) return false;
    DivisorClass sum = DivisorClass::zero(lat.rank());
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (cert.combination[j] < 0) return false;
      sum += cert.combination[j] * gens[j];
    }
    return sum == v;
  }
  if (!cert.separator) return false;
  for (const auto& g : gens)
    if (pairing(lat, *cert.separator, g) < 0) return false;
  return pairing(lat, *cert.separator, v) < 0;
}

FacetScan annihilator_facet_scan_detailed(const SurfaceLattice& lat, std::span<const DivisorClass> gens) {
  const std::size_t rho = lat.rank();
  std::vector<Vector> rows;
  for (const auto& g : gens) {
    lat.require_conforming(g);
    rows.push_back(lat.gram() * g.coeffs());
  }
  std::vector<Vector> raw;
  for (const auto& g : gens) raw.push_back(g.coeffs());
  const std::size_t span_rank = gens.empty() ? 0 : rank(Matrix::from_rows(raw, rho));
  if (span_rank < rho) {
    throw Error(ErrorCode::not_spanning, "generators span rank " + std::to_string(span_rank) + " of " +
                                             std::to_string(rho) + "; the scan needs a spanning set");
  }
  if (lat.is_degenerate()) {
    throw Error(ErrorCode::degenerate_pairing, "annihilator scan needs a nondegenerate pairing");
  }

  FacetScan scan;
  const std::size_t size = rho - 1;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  for (;;) {
    ++scan.subsets;
    std::vector<Vector> sub;
    for (auto i : idx) sub.push_back(rows[i]);
    auto kernel = nullspace(Matrix::from_rows(sub, rho));
    if (kernel.size() == 1) {
      ++scan.independent_subsets;
      const Vector& w = kernel.front();
      bool nonneg = true, nonpos = true;
      for (const auto& r : rows) {
        int s = sign(dot(w, r));
        if (s < 0) nonneg = false;
        if (s > 0) nonpos = false;
      }
      if (nonneg || nonpos) {
        Vector oriented = w;
        if (!nonneg)
          for (auto& x : oriented) x = -x;
        scan.normals.emplace_back(primitive(oriented));
      }
    }
    // next combination
    std::size_t pos = size;
    while (pos > 0 && idx[pos - 1] == gens.size() - size + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t t = pos; t < size; ++t) idx[t] = idx[t - 1] + 1;
  }
  sort_unique(scan.normals);
  return scan;
}

std::vector<DivisorClass> annihilator_facet_scan(const SurfaceLattice& lat, std::span<const DivisorClass> gens) {
  return annihilator_facet_scan_detailed(lat, gens).normals;
}

bool cone_equal(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank() || a.lattice().gram() != b.lattice().gram()) {
    throw Error(ErrorCode::dimension_mismatch, "cones live in different pairing contexts");
  }
  for (const auto& g : a.generators())
    if (!in_cone(b.generators(), g)) return false;
  for (const auto& g : b.generators())
    if (!in_cone(a.generators(), g)) return false;
  return true;
}

bool same_rays(std::span<const DivisorClass> a, std::span<const DivisorClass> b) {
  std::vector<DivisorClass> pa, pb;
  for (const auto& v : a) pa.push_back(primitive_ray(v));
  for (const auto& v : b) pb.push_back(primitive_ray(v));
  sort_unique(pa);
  sort_unique(pb);
  return pa == pb;
}

}  // namespace conelab

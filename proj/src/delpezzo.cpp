#include "conelab/delpezzo.hpp"

#include "conelab/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace conelab {

BlowupLattice build_blowup_lattice(int r) {
  if (r < 1 || r > 8) throw Error(ErrorCode::invalid_argument, "blow-up count r must be in 1..8, got " + std::to_string(r));
  const auto n = static_cast<std::size_t>(r) + 1;
  Matrix gram(n, n);
  gram(0, 0) = 1;
  for (std::size_t i = 1; i < n; ++i) gram(i, i) = -1;
  std::vector<std::string> names{"H"};
  for (int i = 1; i <= r; ++i) names.push_back("E" + std::to_string(i));
  Vector k(n, Rational(1));
  k[0] = -3;
  return {r, SurfaceLattice(std::move(gram), std::move(names), DivisorClass(std::move(k)), Rational(9 - r))};
}

namespace {

std::string index_string(const std::vector<int>& idx) {
  std::string s;
  for (int i : idx) s += std::to_string(i);
  return s;
}

// multiplicities m_i of D = dH - sum m_i E_i
std::vector<long> multiplicities(const DivisorClass& c) {
  std::vector<long> m;
  for (std::size_t i = 1; i < c.size(); ++i) m.push_back(-to_long(c[i]));
  return m;
}

DivisorClass make_class(long d, const std::vector<long>& m) {
  Vector v{Rational(d)};
  for (long x : m) v.emplace_back(-x);
  return DivisorClass(std::move(v));
}

DivisorClass line_through(int r, const std::vector<int>& points, long degree) {
  std::vector<long> m(static_cast<std::size_t>(r), 0);
  for (int p : points) m[static_cast<std::size_t>(p - 1)] = 1;
  return make_class(degree, m);
}

bool ordered_before(const DivisorClass& a, const DivisorClass& b) {
  auto key = [](const DivisorClass& c) {
    std::vector<std::pair<int, long>> k;
    for (long x : multiplicities(c)) k.emplace_back(x == 0 ? 1 : 0, -x);
    return std::make_pair(to_long(c[0]), k);
  };
  return key(a) < key(b);
}

}  // namespace

std::vector<DivisorClass> enumerate_classes(const BlowupLattice& lat, int self_int, int k_deg) {
  const bool supported = (self_int == -1 && k_deg == -1) || (self_int == -2 && k_deg == 0);
  if (!supported) {
    throw Error(ErrorCode::invalid_argument, "unsupported (self_int, k_deg) pair (" + std::to_string(self_int) +
                                                 "," + std::to_string(k_deg) + ")");
  }
  const long r = lat.r;
  std::vector<DivisorClass> out;
  // Cauchy-Schwarz: (sum m)^2 <= r sum m^2 bounds the degree; for r <= 8 the
  // feasible degrees form a finite interval starting at 0.
  for (long d = 0; d <= 64; ++d) {
    const long sum = k_deg + 3 * d;
    const long squares = d * d - self_int;
    if (sum * sum > r * squares) continue;
    std::vector<long> m(static_cast<std::size_t>(r), 0);
    std::function<void(std::size_t, long, long)> fill = [&](std::size_t i, long sum_left, long sq_left) {
      const long slots = r - static_cast<long>(i);
      if (slots == 0) {
        if (sum_left == 0 && sq_left == 0) out.push_back(make_class(d, m));
        return;
      }
      if (sq_left < 0 || sum_left * sum_left > slots * sq_left) return;
      if (((sum_left - sq_left) % 2) != 0) return;
      long bound = 0;
      while ((bound + 1) * (bound + 1) <= sq_left) ++bound;
      for (long x = -bound; x <= bound; ++x) {
        m[i] = x;
        fill(i + 1, sum_left - x, sq_left - x * x);
      }
      m[i] = 0;
    };
    fill(0, sum, squares);
  }
  std::sort(out.begin(), out.end(), ordered_before);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string format_blowup_class(const DivisorClass& c) {
  std::string s;
  auto term = [&](const Rational& coef, const std::string& name) {
    if (coef == 0) return;
    if (coef < 0) {
      s += "-";
    } else if (!s.empty()) {
      s += "+";
    }
    Rational a = abs(coef);
    if (a != 1) s += to_string(a);
    s += name;
  };
  term(c[0], "H");
  for (std::size_t i = 1; i < c.size(); ++i) term(c[i], "E" + std::to_string(i));
  return s.empty() ? "0" : s;
}

std::string blowup_curve_label(const DivisorClass& c) {
  const long d = to_long(c[0]);
  const auto m = multiplicities(c);
  std::vector<int> ones, minus;
  bool simple = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 1) {
      ones.push_back(static_cast<int>(i + 1));
    } else if (m[i] == -1) {
      minus.push_back(static_cast<int>(i + 1));
    } else if (m[i] != 0) {
      simple = false;
    }
  }
  if (simple && d == 0 && minus.size() == 1 && ones.empty()) return "E" + std::to_string(minus[0]);
  if (simple && d == 0 && minus.size() == 1 && ones.size() == 1)
    return "E" + std::to_string(minus[0]) + "-E" + std::to_string(ones[0]);
  if (simple && minus.empty() && d == 1) return "L" + index_string(ones);
  if (simple && minus.empty() && d == 2) return "Q" + index_string(ones);
  return format_blowup_class(c);
}

void validate(const PointConfiguration& cfg) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::invalid_argument, "point configuration: " + msg); };
  if (cfg.r < 1 || cfg.r > 8) fail("r must be in 1..8");
  auto check_index = [&](int i) {
    if (i < 1 || i > cfg.r) fail("point index " + std::to_string(i) + " out of range 1.." + std::to_string(cfg.r));
  };
  std::map<int, int> parent;
  std::map<int, int> child;
  for (auto [c, p] : cfg.infinitely_near) {
    check_index(c);
    check_index(p);
    if (c == p) fail("point " + std::to_string(c) + " infinitely near itself");
    if (parent.count(c)) fail("point " + std::to_string(c) + " has two parents");
    if (child.count(p)) fail("point " + std::to_string(p) + " has two infinitely near points (not a chain)");
    parent[c] = p;
    child[p] = c;
  }
  for (auto [c, p] : parent) {
    int cur = p;
    for (int steps = 0; parent.count(cur); ++steps) {
      cur = parent[cur];
      if (cur == c || steps > cfg.r) fail("infinitely near relation has a cycle through " + std::to_string(c));
    }
  }
  auto closed_under_parent = [&](const std::vector<int>& s) {
    for (int i : s) {
      auto it = parent.find(i);
      if (it != parent.end() && std::find(s.begin(), s.end(), it->second) == s.end()) return false;
    }
    return true;
  };
  auto distinct = [](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
  };
  for (const auto& s : cfg.collinear) {
    for (int i : s) check_index(i);
    if (s.size() != 3) fail("collinear sets must have exactly three points (four on a line is not almost general)");
    if (!distinct(s)) fail("repeated point in a collinear set");
    if (!closed_under_parent(s)) fail("collinear set contains an infinitely near point without its parent");
  }
  for (std::size_t a = 0; a < cfg.collinear.size(); ++a) {
    for (std::size_t b = a + 1; b < cfg.collinear.size(); ++b) {
      int shared = 0;
      for (int i : cfg.collinear[a])
        if (std::find(cfg.collinear[b].begin(), cfg.collinear[b].end(), i) != cfg.collinear[b].end()) ++shared;
      if (shared >= 2) fail("two collinear sets share two points, so they are the same line");
    }
  }
  for (const auto& s : cfg.coconic) {
    for (int i : s) check_index(i);
    if (s.size() != 6) fail("coconic sets must have exactly six points");
    if (!distinct(s)) fail("repeated point in a coconic set");
    if (!closed_under_parent(s)) fail("coconic set contains an infinitely near point without its parent");
    for (const auto& line : cfg.collinear) {
      if (std::all_of(line.begin(), line.end(),
                      [&](int i) { return std::find(s.begin(), s.end(), i) != s.end(); }))
        fail("coconic set contains a collinear triple");
    }
  }
}

Realization realize(const PointConfiguration& cfg) {
  validate(cfg);
  const BlowupLattice bl = build_blowup_lattice(cfg.r);
  const SurfaceLattice& lat = bl.lattice;
  std::map<int, int> parent, child;
  for (auto [c, p] : cfg.infinitely_near) {
    parent[c] = p;
    child[p] = c;
  }
  auto contains_all = [](const std::vector<int>& big, const std::vector<int>& small) {
    return std::all_of(small.begin(), small.end(),
                       [&](int i) { return std::find(big.begin(), big.end(), i) != big.end(); });
  };
  auto closed = [&](const std::vector<int>& s) {
    for (int i : s) {
      auto it = parent.find(i);
      if (it != parent.end() && std::find(s.begin(), s.end(), it->second) == s.end()) return false;
    }
    return true;
  };

  std::vector<DivisorClass> proposed;
  // exceptional curves and infinitely near chains
  for (int i = 1; i <= cfg.r; ++i) {
    DivisorClass e = lat.basis_class(static_cast<std::size_t>(i));
    auto it = child.find(i);
    if (it == child.end()) {
      proposed.push_back(e);
    } else {
      proposed.push_back(e - lat.basis_class(static_cast<std::size_t>(it->second)));
    }
  }
  // lines: maximal collinear sets, then pairs not covered by one
  for (const auto& s : cfg.collinear) proposed.push_back(line_through(cfg.r, s, 1));
  for (int i = 1; i <= cfg.r; ++i) {
    for (int j = i + 1; j <= cfg.r; ++j) {
      std::vector<int> pair{i, j};
      if (!closed(pair)) continue;
      bool covered = std::any_of(cfg.collinear.begin(), cfg.collinear.end(),
                                 [&](const std::vector<int>& s) { return contains_all(s, pair); });
      if (!covered) proposed.push_back(line_through(cfg.r, pair, 1));
    }
  }
  // conics through five points with no collinear triple, unless part of a coconic six
  if (cfg.r >= 5) {
    std::vector<int> pick;
    std::function<void(int)> choose = [&](int next) {
      if (pick.size() == 5) {
        if (!closed(pick)) return;
        for (const auto& line : cfg.collinear)
          if (contains_all(pick, line)) return;
        for (const auto& six : cfg.coconic)
          if (contains_all(six, pick)) return;
        proposed.push_back(line_through(cfg.r, pick, 2));
        return;
      }
      for (int i = next; i <= cfg.r; ++i) {
        pick.push_back(i);
        choose(i + 1);
        pick.pop_back();
      }
    };
    choose(1);
  }
  for (auto six : cfg.coconic) {
    std::sort(six.begin(), six.end());
    proposed.push_back(line_through(cfg.r, six, 2));
  }

  std::sort(proposed.begin(), proposed.end(), ordered_before);
  proposed.erase(std::unique(proposed.begin(), proposed.end()), proposed.end());

  Realization out;
  for (const auto& c : proposed) {
    out.realized.push_back({c, self_intersection(lat, c), arithmetic_genus(lat, c), blowup_curve_label(c), std::nullopt});
  }

  std::vector<DivisorClass> candidates = enumerate_classes(bl, -1, -1);
  for (auto& c : enumerate_classes(bl, -2, 0)) candidates.push_back(std::move(c));
  for (const auto& d : candidates) {
    if (std::find(proposed.begin(), proposed.end(), d) != proposed.end()) continue;
    bool excluded = false;
    for (const auto& rec : out.realized) {
      Rational p = pairing(lat, d, rec.cls);
      if (p < 0) {
        out.excluded.push_back({d, blowup_curve_label(d), rec.label, p, d - rec.cls});
        excluded = true;
        break;
      }
    }
    if (!excluded) out.undecided.push_back(d);
  }
  return out;
}

std::vector<NegativeCurveRecord> realized_negative_curves(const PointConfiguration& cfg) { return realize(cfg).realized; }

WeakDelPezzoReport weak_dp_check(const PointConfiguration& cfg) {
  const BlowupLattice bl = build_blowup_lattice(cfg.r);
  WeakDelPezzoReport rep;
  const DivisorClass& k = *bl.lattice.canonical();
  rep.k2 = self_intersection(bl.lattice, k);
  rep.k2_positive = rep.k2 > 0;
  rep.anticanonical_nonnegative = true;
  for (const auto& rec : realized_negative_curves(cfg)) {
    Rational minus_k = -pairing(bl.lattice, k, rec.cls);
    if (minus_k < 0) rep.anticanonical_nonnegative = false;
    if (minus_k == 0) ++rep.anticanonical_zero;
  }
  return rep;
}

}  // namespace conelab

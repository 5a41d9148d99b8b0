#include "crepanto/polytope.hpp"

#include <algorithm>
#include <set>

#include "crepanto/guard.hpp"
#include "crepanto/lp.hpp"

namespace crepanto {

namespace {

constexpr std::size_t kMaxPolytopeDim = 4;
constexpr std::size_t kMaxMixedDim = 3;
constexpr std::size_t kHullPointGuard = 400;

using Index = std::vector<std::size_t>;

RationalVector diff(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::size_t affine_dim(const std::vector<RationalVector>& v, const Index& idx) {
  if (idx.size() <= 1) return 0;
  std::vector<RationalVector> rows;
  for (std::size_t i = 1; i < idx.size(); ++i) rows.push_back(diff(v[idx[i]], v[idx[0]]));
  return rank(RationalMatrix::from_rows(rows));
}

bool in_hull_of_others(const std::vector<RationalVector>& pts, const std::vector<bool>& alive, std::size_t p) {
  const std::size_t d = pts[p].size();
  std::vector<std::size_t> others;
  for (std::size_t q = 0; q < pts.size(); ++q)
    if (q != p && alive[q]) others.push_back(q);
  if (others.empty()) return false;
  LinearProgram lp;
  lp.num_vars = others.size();
  for (std::size_t t = 0; t <= d; ++t) {
    RationalVector row(lp.num_vars);
    for (std::size_t j = 0; j < others.size(); ++j) row[j] = (t < d) ? pts[others[j]][t] : Rational(1);
    lp.add_row(row, Relation::Equal, t < d ? pts[p][t] : Rational(1));
  }
  return is_feasible(lp);
}

// Vertex index sets of the facets of a full-dimensional polytope.
std::vector<Index> facets(const std::vector<RationalVector>& v) {
  const std::size_t d = v[0].size();
  std::set<Index> out;
  for (const auto& sub : combinations(v.size(), d)) {
    std::vector<IntVector> rows;
    for (std::size_t i = 1; i < d; ++i) {
      RationalVector r = diff(v[sub[i]], v[sub[0]]);
      Integer den = lcm_of_denominators(r);
      IntVector z(d);
      for (std::size_t t = 0; t < d; ++t) z[t] = Rational(r[t] * den).get_num();
      rows.push_back(z);
    }
    if (d > 1 && rank(rows) != d - 1) continue;
    auto ker = kernel(rows, d);
    if (ker.size() != 1) continue;
    RationalVector a = to_rational(ker[0]);
    Rational b = dot(a, v[sub[0]]);
    int lo = 0, hi = 0;
    Index on;
    for (std::size_t i = 0; i < v.size(); ++i) {
      Rational s = dot(a, v[i]) - b;
      if (s < 0) lo = 1;
      if (s > 0) hi = 1;
      if (s == 0) on.push_back(i);
    }
    if (lo && hi) continue;
    out.insert(on);
  }
  return {out.begin(), out.end()};
}

void pull(const std::vector<RationalVector>& v, const std::vector<Index>& fs, const Index& face, std::size_t k,
          std::vector<Index>& simplices) {
  if (k == 0) {
    simplices.push_back({face[0]});
    return;
  }
  std::set<Index> sub;
  for (const auto& f : fs) {
    Index u;
    std::set_intersection(face.begin(), face.end(), f.begin(), f.end(), std::back_inserter(u));
    if (u != face && !u.empty() && affine_dim(v, u) == k - 1) sub.insert(u);
  }
  std::size_t apex = face[0];
  for (const auto& u : sub) {
    if (std::binary_search(u.begin(), u.end(), apex)) continue;
    std::vector<Index> part;
    pull(v, fs, u, k - 1, part);
    for (auto& s : part) {
      s.insert(s.begin(), apex);
      simplices.push_back(s);
    }
  }
}

Rational factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return Rational(f);
}

Rational volume_or_zero(const LatticePolytope& p) {
  Index all(p.vertices.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (affine_dim(p.vertices, all) < p.ambient_dim()) return 0;
  return polytope_volume(p);
}

}  // namespace

LatticePolytope convex_hull(std::vector<RationalVector> points) {
  if (points.empty()) throw DomainError("empty point set");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  check_guard(points.size(), kHullPointGuard, "number of hull points");
  std::vector<bool> alive(points.size(), true);
  for (std::size_t p = 0; p < points.size(); ++p)
    if (in_hull_of_others(points, alive, p)) alive[p] = false;
  LatticePolytope out;
  for (std::size_t p = 0; p < points.size(); ++p)
    if (alive[p]) out.vertices.push_back(points[p]);
  return out;
}

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
  std::vector<RationalVector> pts;
  for (const auto& x : a.vertices)
    for (const auto& y : b.vertices) {
      RationalVector s(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
      pts.push_back(s);
    }
  return convex_hull(pts);
}

LatticePolytope scaled(const LatticePolytope& p, const Rational& t) {
  std::vector<RationalVector> pts;
  for (const auto& x : p.vertices) {
    RationalVector s = x;
    for (auto& c : s) c *= t;
    pts.push_back(s);
  }
  return convex_hull(pts);
}

Rational polytope_volume(const LatticePolytope& p) {
  const std::size_t d = p.ambient_dim();
  if (d == 0 || d > kMaxPolytopeDim) throw DomainError("polytope dimension out of range");
  const auto& v = p.vertices;
  Index all(v.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (affine_dim(v, all) != d) throw DomainError("degenerate polytope");
  auto fs = facets(v);
  std::vector<Index> simplices;
  pull(v, fs, all, d, simplices);
  Rational total = 0;
  for (const auto& s : simplices) {
    std::vector<RationalVector> rows;
    for (std::size_t i = 1; i < s.size(); ++i) rows.push_back(diff(v[s[i]], v[s[0]]));
    total += abs(det(RationalMatrix::from_rows(rows)));
  }
  return total / factorial(d);
}

Rational self_intersection_via_volume(const LatticePolytope& p, std::size_t r) {
  if (p.ambient_dim() != r) throw DomainError("polytope dimension must equal r");
  return factorial(r) * polytope_volume(p);
}

Rational mixed_volume(const std::vector<LatticePolytope>& ps) {
  const std::size_t r = ps.size();
  if (r == 0 || r > kMaxMixedDim) throw DomainError("mixed volume needs 1 to 3 polytopes");
  for (const auto& p : ps)
    if (p.ambient_dim() != r) throw DomainError("mixed volume needs r polytopes in dimension r");
  Rational total = 0;
  for (unsigned s = 1; s < (1U << r); ++s) {
    LatticePolytope sum;
    std::size_t count = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (!(s >> i & 1)) continue;
      sum = count == 0 ? ps[i] : minkowski_sum(sum, ps[i]);
      ++count;
    }
    Rational vol = volume_or_zero(sum);
    total += ((r - count) % 2 == 0) ? vol : Rational(-vol);
  }
  return total;
}

std::optional<LatticePolytope> anticanonical_polytope(const Fan& f) {
  if (!f.is_complete() || !is_smooth_fan(f)) throw DomainError("anticanonical polytope needs a complete smooth fan");
  const auto& lat = f.lattice();
  const std::size_t d = f.dim();
  auto rays = f.rays();
  std::vector<RationalVector> verts;
  for (const auto& c : f.cones()) {
    std::vector<IntVector> a;
    for (const auto& g : c.gens) a.push_back(lat.coordinates(g));
    auto m = solve_linear(RationalMatrix::from_int_rows(a), RationalVector(d, -1));
    if (!m) throw DomainError("singular cone");
    for (const auto& ray : rays) {
      if (c.contains_generator(ray)) continue;
      if (dot(*m, to_rational(lat.coordinates(ray))) <= -1) return std::nullopt;
    }
    verts.push_back(*m);
  }
  return convex_hull(verts);
}

}  // namespace crepanto

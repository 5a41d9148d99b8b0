#include "crepanto/triangulation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "crepanto/guard.hpp"
#include "crepanto/lp.hpp"

namespace crepanto {

namespace {

constexpr std::size_t kElementaryGroupGuard = 10000;
constexpr std::size_t kBoxGuard = 1000000;

// Integer adjugate of a square integer matrix, with adj * m = det * I.
std::vector<IntVector> adjugate(const std::vector<IntVector>& m, const Integer& d) {
  std::size_t n = m.size();
  auto a = RationalMatrix::from_int_rows(m);
  std::vector<IntVector> adj(n, IntVector(n));
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector e(n, 0);
    e[j] = 1;
    // column j of m^{-1}
    RationalVector x = *solve_linear(a, e);
    for (std::size_t i = 0; i < n; ++i) adj[i][j] = Rational(x[i] * d).get_num();
  }
  return adj;
}

bool on_common_coordinate_facet(const std::vector<IntVector>& pts) {
  if (pts.empty()) return false;
  for (std::size_t i = 0; i < pts[0].size(); ++i)
    if (std::all_of(pts.begin(), pts.end(), [&](const IntVector& p) { return p[i] == 0; })) return true;
  return false;
}

int sign_of(const Integer& z) { return z > 0 ? 1 : (z < 0 ? -1 : 0); }

}  // namespace

SimplexFrame::SimplexFrame(const std::vector<IntVector>& vertices) : verts_(vertices) {
  if (verts_.empty()) return;
  const std::size_t r = verts_[0].size();
  const std::size_t k = verts_.size();
  lo_ = hi_ = verts_[0];
  for (const auto& v : verts_)
    for (std::size_t i = 0; i < r; ++i) {
      if (v[i] < lo_[i]) lo_[i] = v[i];
      if (v[i] > hi_[i]) hi_[i] = v[i];
    }
  // homogenized rows: coordinate i of every vertex, then the all-ones row
  auto hrow = [&](std::size_t i) {
    IntVector row(k);
    for (std::size_t c = 0; c < k; ++c) row[c] = (i < r) ? verts_[c][i] : Integer(1);
    return row;
  };
  std::vector<RationalVector> echelon;
  std::vector<std::size_t> pivcol;
  for (std::size_t i = r + 1; i-- > 0 && rows_.size() < k;) {
    RationalVector row = to_rational(hrow(i));
    for (std::size_t t = 0; t < echelon.size(); ++t) {
      if (row[pivcol[t]] == 0) continue;
      Rational f = row[pivcol[t]] / echelon[t][pivcol[t]];
      for (std::size_t c = 0; c < k; ++c) row[c] -= f * echelon[t][c];
    }
    std::size_t p = 0;
    while (p < k && row[p] == 0) ++p;
    if (p == k) continue;
    echelon.push_back(row);
    pivcol.push_back(p);
    rows_.push_back(i);
  }
  if (rows_.size() < k) return;
  independent_ = true;
  std::vector<IntVector> m;
  for (auto i : rows_) m.push_back(hrow(i));
  det_ = det(m);
  adj_ = adjugate(m, det_);
  if (det_ < 0) {
    det_ = -det_;
    for (auto& row : adj_)
      for (auto& x : row) x = -x;
  }
}

std::optional<IntVector> SimplexFrame::barycentric(const IntVector& p) const {
  if (!independent_) throw DomainError("degenerate simplex");
  const std::size_t r = p.size();
  const std::size_t k = verts_.size();
  auto coord = [&](std::size_t i) { return i < r ? p[i] : Integer(1); };
  IntVector b(k, 0);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t t = 0; t < rows_.size(); ++t) b[c] += adj_[c][t] * coord(rows_[t]);
  for (std::size_t i = 0; i <= r; ++i) {
    Integer s = 0;
    for (std::size_t c = 0; c < k; ++c) s += (i < r ? verts_[c][i] : Integer(1)) * b[c];
    if (s != det_ * coord(i)) return std::nullopt;
  }
  return b;
}

bool SimplexFrame::contains(const IntVector& p) const {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < lo_[i] || p[i] > hi_[i]) return false;
  auto b = barycentric(p);
  return b && std::all_of(b->begin(), b->end(), [](const Integer& x) { return x >= 0; });
}

bool SimplexFrame::contains_interior(const IntVector& p) const {
  auto b = barycentric(p);
  return b && std::all_of(b->begin(), b->end(), [](const Integer& x) { return x > 0; });
}

std::vector<IntVector> LatticeTriangulation::vertices_of(std::size_t s) const {
  std::vector<IntVector> out;
  for (auto i : simplices[s]) out.push_back(points[i]);
  return out;
}

std::size_t LatticeTriangulation::index_of(const IntVector& p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || *it != p) throw DomainError("point is not in the configuration");
  return static_cast<std::size_t>(it - points.begin());
}

Integer simplex_multiplicity(const WeightLattice& lat, const std::vector<IntVector>& vertices) {
  Integer d = abs(det(vertices));
  Integer Lr;
  mpz_pow_ui(Lr.get_mpz_t(), lat.denominator().get_mpz_t(), lat.dim());
  Integer num = d * Integer(static_cast<unsigned long>(lat.group_order()));
  if (!mpz_divisible_p(num.get_mpz_t(), Lr.get_mpz_t())) throw DomainError("simplex vertices are not lattice points");
  return num / Lr;
}

void validate_triangulation(const LatticeTriangulation& t) {
  const auto& lat = t.lattice;
  const std::size_t r = lat.dim();
  const Integer& L = lat.denominator();
  for (std::size_t i = 0; i + 1 < t.points.size(); ++i)
    if (!(t.points[i] < t.points[i + 1])) throw DomainError("points must be distinct and sorted");
  for (const auto& p : t.points) {
    if (p.size() != r || !lat.contains(p)) throw DomainError("point is not a lattice point");
    if (sum_of(p) != L || std::any_of(p.begin(), p.end(), [](const Integer& x) { return x < 0; }))
      throw DomainError("point is not in the junior simplex");
  }
  for (std::size_t i = 0; i < r; ++i) t.index_of(lat.unit(i));

  std::map<SimplexIndices, std::vector<std::pair<std::size_t, int>>> facets;
  Integer total = 0;
  for (std::size_t s = 0; s < t.simplices.size(); ++s) {
    const auto& idx = t.simplices[s];
    if (idx.size() != r) throw DomainError("simplex has the wrong number of vertices");
    for (std::size_t a = 0; a < r; ++a) {
      if (idx[a] >= t.points.size()) throw DomainError("simplex index out of range");
      if (a && idx[a - 1] >= idx[a]) throw DomainError("simplex indices must be sorted and distinct");
    }
    auto verts = t.vertices_of(s);
    if (det(verts) == 0) throw DomainError("degenerate simplex");
    total += simplex_multiplicity(lat, verts);
    for (std::size_t a = 0; a < r; ++a) {
      SimplexIndices f = idx;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(a));
      std::vector<IntVector> m;
      for (auto i : f) m.push_back(t.points[i]);
      m.push_back(t.points[idx[a]]);
      facets[f].push_back({s, sign_of(det(m))});
    }
  }
  for (const auto& [f, users] : facets) {
    std::vector<IntVector> fp;
    for (auto i : f) fp.push_back(t.points[i]);
    bool boundary = on_common_coordinate_facet(fp);
    if (boundary) {
      if (users.size() != 1) throw DomainError("boundary facet covered more than once");
    } else {
      if (users.size() != 2) throw DomainError("interior facet not shared by exactly two simplices");
      if (users[0].second == users[1].second) throw DomainError("simplices overlap across a facet");
    }
  }
  if (total != static_cast<unsigned long>(lat.group_order())) throw DomainError("simplices do not cover the junior simplex");
}

LatticeTriangulation make_triangulation(const WeightLattice& lat, std::vector<IntVector> points,
                                        const std::vector<std::vector<IntVector>>& simplices) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  LatticeTriangulation t{lat, points, {}};
  for (const auto& s : simplices) {
    SimplexIndices idx;
    for (const auto& v : s) idx.push_back(t.index_of(v));
    std::sort(idx.begin(), idx.end());
    t.simplices.push_back(idx);
  }
  std::sort(t.simplices.begin(), t.simplices.end());
  validate_triangulation(t);
  return t;
}

bool is_elementary(const WeightLattice& lat, const std::vector<IntVector>& vertices) {
  SimplexFrame frame(vertices);
  if (!frame.independent()) throw DomainError("degenerate simplex");
  check_guard(lat.group_order(), kElementaryGroupGuard, "group order");
  const std::size_t r = lat.dim();
  const Integer& L = lat.denominator();
  IntVector lo = vertices[0], hi = vertices[0];
  for (const auto& v : vertices)
    for (std::size_t i = 0; i < r; ++i) {
      if (v[i] < lo[i]) lo[i] = v[i];
      if (v[i] > hi[i]) hi[i] = v[i];
    }
  std::set<IntVector> verts(vertices.begin(), vertices.end());
  std::size_t visited = 0;
  for (const auto& res : lat.residues()) {
    std::vector<std::vector<Integer>> choices(r);
    bool empty = false;
    for (std::size_t i = 0; i < r && !empty; ++i) {
      Integer x = lo[i] + floor_mod(res[i] - lo[i], L);
      for (; x <= hi[i]; x += L) choices[i].push_back(x);
      empty = choices[i].empty();
    }
    if (empty) continue;
    std::vector<std::size_t> pos(r, 0);
    for (;;) {
      IntVector p(r);
      for (std::size_t i = 0; i < r; ++i) p[i] = choices[i][pos[i]];
      check_guard(++visited, kBoxGuard, "bounding-box scan");
      if (!verts.count(p) && frame.contains(p)) return false;
      std::size_t i = 0;
      while (i < r && ++pos[i] == choices[i].size()) pos[i++] = 0;
      if (i == r) break;
    }
  }
  return true;
}

bool is_basic(const WeightLattice& lat, const std::vector<IntVector>& vertices) {
  SimplexFrame frame(vertices);
  if (!frame.independent()) throw DomainError("degenerate simplex");
  if (vertices.size() == 1) return true;
  std::vector<IntVector> edges;
  IntVector base = lat.coordinates(vertices[0]);
  for (std::size_t i = 1; i < vertices.size(); ++i) edges.push_back(sub(lat.coordinates(vertices[i]), base));
  std::size_t k = edges.size();
  Integer g = 0;
  for (const auto& cols : combinations(lat.dim(), k)) {
    std::vector<IntVector> m(k, IntVector(k));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) m[a][b] = edges[a][cols[b]];
    Integer d = det(m);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (g == 1) return true;
  }
  return g == 1;
}

TriangulationFlags classify(const LatticeTriangulation& t) {
  validate_triangulation(t);
  TriangulationFlags f{true, true, true};
  std::set<std::size_t> used;
  for (std::size_t s = 0; s < t.simplices.size(); ++s) {
    auto verts = t.vertices_of(s);
    used.insert(t.simplices[s].begin(), t.simplices[s].end());
    if (f.maximal && !is_elementary(t.lattice, verts)) f.maximal = false;
    if (f.basic && !is_basic(t.lattice, verts)) f.basic = false;
  }
  for (auto i : used)
    if (sum_of(t.points[i]) != t.lattice.denominator()) f.crepant = false;
  return f;
}

namespace {

struct Wall {
  std::size_t simplex;
  std::size_t point;
};

std::vector<std::size_t> used_points(const std::vector<SimplexIndices>& simplices) {
  std::set<std::size_t> s;
  for (const auto& x : simplices) s.insert(x.begin(), x.end());
  return {s.begin(), s.end()};
}

}  // namespace

Rational certificate_slack(const std::vector<IntVector>& points, const std::vector<SimplexIndices>& simplices,
                           const RationalVector& heights) {
  auto used = used_points(simplices);
  bool first = true;
  Rational best = 0;
  for (const auto& s : simplices) {
    std::vector<IntVector> verts;
    for (auto i : s) verts.push_back(points[i]);
    SimplexFrame frame(verts);
    if (!frame.independent()) throw DomainError("degenerate simplex");
    for (auto w : used) {
      if (std::binary_search(s.begin(), s.end(), w)) continue;
      auto b = frame.barycentric(points[w]);
      if (!b) throw DomainError("point off the affine hull of the configuration");
      Rational ext = 0;
      for (std::size_t c = 0; c < s.size(); ++c) ext += Rational((*b)[c]) * heights[s[c]];
      ext /= frame.scale();
      Rational slack = ext - heights[w];
      if (first || slack < best) best = slack;
      first = false;
    }
  }
  return first ? Rational(1) : best;
}

namespace {

// Unused points get the piecewise-linear extension of the used heights.
void extend_heights(const std::vector<IntVector>& points, const std::vector<SimplexIndices>& simplices,
                    const std::vector<std::size_t>& used, RationalVector& heights) {
  std::set<std::size_t> used_set(used.begin(), used.end());
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (used_set.count(p)) continue;
    for (const auto& s : simplices) {
      std::vector<IntVector> verts;
      for (auto i : s) verts.push_back(points[i]);
      SimplexFrame frame(verts);
      auto b = frame.barycentric(points[p]);
      if (!b || std::any_of(b->begin(), b->end(), [](const Integer& x) { return x < 0; })) continue;
      Rational h = 0;
      for (std::size_t c = 0; c < s.size(); ++c) h += Rational((*b)[c]) * heights[s[c]];
      heights[p] = h / frame.scale();
      break;
    }
  }
}

// Concave quadratic lift; certifies triangulations that are their own Delaunay subdivision.
std::optional<SupportHeights> quadratic_certificate(const std::vector<IntVector>& points,
                                                    const std::vector<SimplexIndices>& simplices,
                                                    const std::vector<std::size_t>& used) {
  Integer top = 0;
  for (auto p : used) top = std::max(top, Integer(dot(points[p], points[p])));
  if (top == 0) return std::nullopt;
  SupportHeights out;
  out.heights.assign(points.size(), 0);
  for (auto p : used) {
    Rational q(dot(points[p], points[p]), top);
    q.canonicalize();
    out.heights[p] = 1 - q;
  }
  out.epsilon = certificate_slack(points, simplices, out.heights);
  if (out.epsilon <= 0) return std::nullopt;
  out.coherent = true;
  extend_heights(points, simplices, used, out.heights);
  return out;
}

}  // namespace

SupportHeights coherence_certificate(const std::vector<IntVector>& points, const std::vector<SimplexIndices>& simplices) {
  if (simplices.empty()) throw DomainError("empty triangulation");
  auto used = used_points(simplices);
  if (auto quick = quadratic_certificate(points, simplices, used)) return *quick;
  const auto& anchor = simplices[0];
  // variables g_p = -h_p for non-anchor used points, then epsilon
  std::map<std::size_t, std::size_t> var;
  for (auto p : used)
    if (!std::binary_search(anchor.begin(), anchor.end(), p)) var.emplace(p, var.size());
  const std::size_t eps = var.size();

  std::map<SimplexIndices, std::vector<std::pair<std::size_t, std::size_t>>> facets;
  for (std::size_t s = 0; s < simplices.size(); ++s)
    for (std::size_t a = 0; a < simplices[s].size(); ++a) {
      SimplexIndices f = simplices[s];
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(a));
      facets[f].push_back({s, simplices[s][a]});
    }

  LinearProgram lp;
  lp.num_vars = eps + 1;
  std::vector<Wall> walls;
  for (const auto& [f, users] : facets) {
    if (users.size() != 2) continue;
    const auto& s = simplices[users[0].first];
    std::size_t w = users[1].second;
    std::vector<IntVector> verts;
    for (auto i : s) verts.push_back(points[i]);
    SimplexFrame frame(verts);
    auto b = frame.barycentric(points[w]);
    if (!b) throw DomainError("point off the affine hull of the configuration");
    // sum_v b_v g_v - det g_w + det eps <= 0
    RationalVector row(lp.num_vars, 0);
    for (std::size_t c = 0; c < s.size(); ++c) {
      auto it = var.find(s[c]);
      if (it != var.end()) row[it->second] += (*b)[c];
    }
    auto it = var.find(w);
    if (it != var.end()) row[it->second] -= frame.scale();
    row[eps] = frame.scale();
    lp.add_row(row, Relation::LessEq, 0);
    walls.push_back({users[0].first, w});
  }
  for (std::size_t v = 0; v <= eps; ++v) {
    RationalVector row(lp.num_vars, 0);
    row[v] = 1;
    lp.add_row(row, Relation::LessEq, 1);
  }
  lp.objective.assign(lp.num_vars, 0);
  lp.objective[eps] = 1;
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) throw std::logic_error("coherence LP is not bounded and feasible");

  SupportHeights out;
  out.heights.assign(points.size(), 0);
  if (res.value > 0) {
    out.coherent = true;
    // a constant is linear on the hyperplane, so shift into [0, 1]
    for (auto p : used) {
      auto it = var.find(p);
      out.heights[p] = 1 - (it == var.end() ? Rational(0) : res.x[it->second]);
    }
    extend_heights(points, simplices, used, out.heights);
    out.epsilon = certificate_slack(points, simplices, out.heights);
    if (out.epsilon <= 0) throw std::logic_error("coherence certificate failed replay");
  } else {
    out.epsilon = res.value;
    for (std::size_t i = 0; i < walls.size(); ++i)
      if (res.duals[i] != 0) {
        out.tight.push_back({walls[i].simplex, walls[i].point});
        out.multipliers.push_back(res.duals[i]);
      }
  }
  return out;
}

SupportHeights coherence_certificate(const LatticeTriangulation& t) {
  return coherence_certificate(t.points, t.simplices);
}

Fan fan_of(const LatticeTriangulation& t) {
  validate_triangulation(t);
  std::vector<Cone> cones;
  for (std::size_t s = 0; s < t.simplices.size(); ++s) cones.push_back(make_cone(t.lattice, t.vertices_of(s)));
  return Fan(t.lattice, cones, false);
}

std::vector<SimplexIndices> elementary_simplices(const std::vector<IntVector>& points) {
  std::vector<SimplexIndices> out;
  if (points.empty()) return out;
  const std::size_t d = points[0].size();
  const std::size_t n = points.size();
  // edges with no other point on them
  std::vector<std::vector<char>> empty_edge(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      IntVector dir = sub(points[b], points[a]);
      bool hit = false;
      for (std::size_t j = 0; j < n && !hit; ++j) {
        if (j == a || j == b) continue;
        IntVector e = sub(points[j], points[a]);
        bool on = true;
        for (std::size_t i = 0; i < d && on; ++i) {
          const auto& lo = std::min(points[a][i], points[b][i]);
          const auto& hi = std::max(points[a][i], points[b][i]);
          on = lo <= points[j][i] && points[j][i] <= hi;
        }
        for (std::size_t i = 0; i < d && on; ++i)
          for (std::size_t k = i + 1; k < d && on; ++k) on = dir[i] * e[k] == dir[k] * e[i];
        hit = on;
      }
      empty_edge[a][b] = empty_edge[b][a] = !hit;
    }
  SimplexIndices cur;
  std::vector<IntVector> verts;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == d) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      if (!std::all_of(cur.begin(), cur.end(), [&](std::size_t c) { return empty_edge[c][i]; })) continue;
      cur.push_back(i);
      verts.push_back(points[i]);
      if (cur.size() <= 2) {
        self(self, i + 1);
        cur.pop_back();
        verts.pop_back();
        continue;
      }
      SimplexFrame frame(verts);
      bool ok = frame.independent();
      for (std::size_t j = 0; ok && j < points.size(); ++j)
        if (!std::binary_search(cur.begin(), cur.end(), j) && frame.contains(points[j])) ok = false;
      if (ok) self(self, i + 1);
      cur.pop_back();
      verts.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace crepanto

#include <algorithm>
#include <map>
#include <set>

#include "crepanto/guard.hpp"
#include "crepanto/lp.hpp"
#include "crepanto/triangulation.hpp"

namespace crepanto {

namespace {

constexpr std::size_t kEnumerationPointGuard = 14;

struct Candidate {
  SimplexIndices idx;
  std::vector<IntVector> verts;
  Integer volume;                  // |det| of the numerator matrix
  std::vector<IntVector> normals;  // normals[i] vanishes on the facet opposite vertex i, positive at it
};

Candidate make_candidate(const std::vector<IntVector>& points, const SimplexIndices& idx) {
  Candidate c;
  c.idx = idx;
  for (auto i : idx) c.verts.push_back(points[i]);
  std::size_t n = idx.size();
  auto m = RationalMatrix::from_int_rows(c.verts);
  Rational d = det(m);
  c.volume = abs(d.get_num());
  // columns of the inverse give the dual functionals
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n, 0);
    e[i] = 1;
    RationalMatrix mt = m.transposed();
    RationalVector x = *solve_linear(mt, e);
    Integer den = lcm_of_denominators(x);
    IntVector f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = Rational(x[j] * den).get_num();
    c.normals.push_back(f);
  }
  return c;
}

bool separated_by_facets(const Candidate& a, const Candidate& b) {
  for (const auto& f : a.normals)
    if (std::all_of(b.verts.begin(), b.verts.end(), [&](const IntVector& v) { return dot(f, v) <= 0; })) return true;
  return false;
}

// Positive t with x = sum alpha_i a_i = sum beta_j b_j, alpha, beta >= t, both summing to 1.
bool interiors_meet_lp(const Candidate& a, const Candidate& b) {
  std::size_t n = a.verts.size();
  std::size_t d = a.verts[0].size();
  LinearProgram lp;
  lp.num_vars = 2 * n + 1;
  std::size_t t = 2 * n;
  for (std::size_t k = 0; k < d; ++k) {
    RationalVector row(lp.num_vars, 0);
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = a.verts[i][k];
      row[n + i] = -b.verts[i][k];
    }
    lp.add_row(row, Relation::Equal, 0);
  }
  for (std::size_t s = 0; s < 2; ++s) {
    RationalVector row(lp.num_vars, 0);
    for (std::size_t i = 0; i < n; ++i) row[s * n + i] = 1;
    lp.add_row(row, Relation::Equal, 1);
  }
  for (std::size_t i = 0; i < 2 * n; ++i) {
    RationalVector row(lp.num_vars, 0);
    row[t] = 1;
    row[i] = -1;
    lp.add_row(row, Relation::LessEq, 0);
  }
  RationalVector cap(lp.num_vars, 0);
  cap[t] = 1;
  lp.add_row(cap, Relation::LessEq, 1);
  lp.objective.assign(lp.num_vars, 0);
  lp.objective[t] = 1;
  auto res = solve_lp(lp);
  return res.status == LpStatus::Optimal && res.value > 0;
}

bool interiors_meet(const Candidate& a, const Candidate& b) {
  if (separated_by_facets(a, b) || separated_by_facets(b, a)) return false;
  return interiors_meet_lp(a, b);
}

struct Search {
  const WeightLattice& lat;
  const std::vector<IntVector>& points;
  std::vector<Candidate> cands;
  std::map<SimplexIndices, std::vector<std::size_t>> by_facet;
  Integer target;
  std::size_t max_count;

  Search(const WeightLattice& l, const std::vector<IntVector>& p, std::size_t cap)
      : lat(l), points(p), max_count(cap) {}

  std::vector<std::size_t> chosen;
  std::map<SimplexIndices, int> facet_count;
  Integer volume = 0;
  std::set<std::vector<SimplexIndices>> found;
  bool truncated = false;

  static SimplexIndices facet(const SimplexIndices& s, std::size_t drop) {
    SimplexIndices f = s;
    f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
    return f;
  }

  bool boundary(const SimplexIndices& f) const {
    for (std::size_t i = 0; i < points[0].size(); ++i)
      if (std::all_of(f.begin(), f.end(), [&](std::size_t p) { return points[p][i] == 0; })) return true;
    return false;
  }

  int side(const SimplexIndices& f, std::size_t opposite) const {
    std::vector<IntVector> m;
    for (auto i : f) m.push_back(points[i]);
    m.push_back(points[opposite]);
    return sgn(det(m));
  }

  bool push(std::size_t c) {
    const auto& s = cands[c].idx;
    for (std::size_t a = 0; a < s.size(); ++a)
      if (facet_count[facet(s, a)] >= (boundary(facet(s, a)) ? 1 : 2)) return false;
    for (std::size_t a = 0; a < s.size(); ++a) ++facet_count[facet(s, a)];
    chosen.push_back(c);
    volume += cands[c].volume;
    return true;
  }

  void pop() {
    std::size_t c = chosen.back();
    chosen.pop_back();
    volume -= cands[c].volume;
    const auto& s = cands[c].idx;
    for (std::size_t a = 0; a < s.size(); ++a) --facet_count[facet(s, a)];
  }

  void record() {
    std::vector<SimplexIndices> simplices;
    for (auto c : chosen) simplices.push_back(cands[c].idx);
    std::sort(simplices.begin(), simplices.end());
    found.insert(simplices);
  }

  void run() {
    if (found.size() >= max_count) {
      truncated = true;
      return;
    }
    // first interior facet covered only once
    for (auto c : chosen) {
      const auto& s = cands[c].idx;
      for (std::size_t a = 0; a < s.size(); ++a) {
        auto f = facet(s, a);
        if (boundary(f) || facet_count[f] != 1) continue;
        int need = -side(f, s[a]);
        auto it = by_facet.find(f);
        if (it == by_facet.end()) return;
        for (auto d : it->second) {
          if (d == c || std::find(chosen.begin(), chosen.end(), d) != chosen.end()) continue;
          const auto& t = cands[d].idx;
          std::size_t opp = *std::find_if(t.begin(), t.end(), [&](std::size_t p) {
            return !std::binary_search(f.begin(), f.end(), p);
          });
          if (side(f, opp) != need) continue;
          if (volume + cands[d].volume > target) continue;
          bool clash = false;
          for (auto e : chosen)
            if (interiors_meet(cands[e], cands[d])) {
              clash = true;
              break;
            }
          if (clash || !push(d)) continue;
          run();
          pop();
          if (truncated) return;
        }
        return;
      }
    }
    if (volume == target) record();
  }
};

}  // namespace

EnumerationResult enumerate_maximal_triangulations(const WeightLattice& lat, const std::vector<IntVector>& points_in,
                                                   std::size_t max_count) {
  std::vector<IntVector> points = points_in;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  check_guard(points.size(), kEnumerationPointGuard, "number of points");
  const std::size_t r = lat.dim();

  Search search(lat, points, max_count);
  mpz_pow_ui(search.target.get_mpz_t(), lat.denominator().get_mpz_t(), r);
  for (const auto& s : elementary_simplices(points)) search.cands.push_back(make_candidate(points, s));
  for (std::size_t c = 0; c < search.cands.size(); ++c)
    for (std::size_t a = 0; a < r; ++a) search.by_facet[Search::facet(search.cands[c].idx, a)].push_back(c);

  // a direction off every hyperplane spanned by r - 1 of the points
  std::vector<std::vector<IntVector>> spans;
  for (const auto& sub : combinations(points.size(), r - 1)) {
    std::vector<IntVector> m;
    for (auto i : sub) m.push_back(points[i]);
    if (rank(m) == r - 1) spans.push_back(m);
  }
  IntVector q;
  for (long k = 1;; ++k) {
    q.assign(r, 0);
    for (std::size_t j = 0; j < points.size(); ++j)
      q = add(q, scale(points[j], Integer(k + static_cast<long>(j * j + j))));
    bool generic = true;
    for (auto& m : spans) {
      m.push_back(q);
      generic = det(m) != 0;
      m.pop_back();
      if (!generic) break;
    }
    if (generic) break;
  }

  for (std::size_t c = 0; c < search.cands.size() && !search.truncated; ++c) {
    auto x = solve_linear(RationalMatrix::from_int_rows(search.cands[c].verts).transposed(), to_rational(q));
    if (!x || std::any_of(x->begin(), x->end(), [](const Rational& v) { return v <= 0; })) continue;
    search.push(c);
    search.run();
    search.pop();
  }

  EnumerationResult out;
  out.truncated = search.truncated;
  for (const auto& simplices : search.found) {
    LatticeTriangulation t{lat, points, simplices};
    validate_triangulation(t);
    out.triangulations.push_back(std::move(t));
  }
  return out;
}

}  // namespace crepanto

#include "crepanto/lattice.hpp"

#include <algorithm>
#include <set>

#include "crepanto/guard.hpp"
#include "crepanto/lp.hpp"

namespace crepanto {

namespace {

constexpr std::size_t kResidueGuard = 100000;

std::vector<IntVector> columns_subset(const std::vector<IntVector>& rows, const std::vector<std::size_t>& cols) {
  std::vector<IntVector> out(rows.size(), IntVector(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out[i][j] = rows[i][cols[j]];
  return out;
}

IntVector integral_multiple(const RationalVector& v) {
  Integer d = lcm_of_denominators(v);
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i] * d).get_num();
  return out;
}

}  // namespace

WeightLattice::WeightLattice() {
  auto d = std::make_shared<Data>();
  d->residues = {IntVector{}};
  d_ = d;
}

WeightLattice WeightLattice::standard(std::size_t r) { return build({}, r, false); }

WeightLattice WeightLattice::cyclic(const Integer& l, const IntVector& weights) {
  if (l < 1) throw DomainError("group order must be positive");
  const std::size_t r = weights.size();
  for (std::size_t i = 0; i < r; ++i) {
    Integer g = l;
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), weights[j].get_mpz_t());
    if (g != 1) throw DomainError("group is not small");
  }
  return build({GroupFactor{l, weights}}, r, false);
}

WeightLattice WeightLattice::abelian(const std::vector<GroupFactor>& factors, std::size_t r) {
  return build(factors, r, true);
}

WeightLattice WeightLattice::build(std::vector<GroupFactor> factors, std::size_t r, bool check_small) {
  auto d = std::make_shared<Data>();
  d->r = r;
  for (auto& f : factors) {
    if (f.order < 1) throw DomainError("group order must be positive");
    if (f.weights.size() != r) throw DomainError("weight vector has wrong length");
    for (auto& w : f.weights) w = floor_mod(w, f.order);
    mpz_lcm(d->L.get_mpz_t(), d->L.get_mpz_t(), f.order.get_mpz_t());
  }
  d->factors = factors;

  std::set<IntVector> res{IntVector(r, 0)};
  for (const auto& f : factors) {
    Integer step = d->L / f.order;
    IntVector g = scale(f.weights, step);
    std::set<IntVector> next;
    for (const auto& s : res) {
      IntVector cur = s;
      for (Integer lam = 0; lam < f.order; ++lam) {
        next.insert(cur);
        for (std::size_t i = 0; i < r; ++i) cur[i] = floor_mod(cur[i] + g[i], d->L);
      }
      check_guard(next.size(), kResidueGuard, "group order");
    }
    res.swap(next);
  }
  d->residues.assign(res.begin(), res.end());

  if (check_small) {
    for (const auto& v : d->residues) {
      auto nz = std::count_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
      if (nz == 1) throw DomainError("group is not small");
    }
  }

  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, 0);
    e[i] = d->L;
    gens.push_back(e);
  }
  for (const auto& f : factors) gens.push_back(scale(f.weights, d->L / f.order));
  d->hnf = hermite_normal_form(gens);
  d->hnf.h.resize(r);
  d->hnf.u.clear();
  WeightLattice out;
  out.d_ = d;
  return out;
}

IntVector WeightLattice::reduce(const IntVector& num) const {
  IntVector out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) out[i] = floor_mod(num[i], d_->L);
  return out;
}

bool WeightLattice::contains(const IntVector& num) const {
  if (num.size() != d_->r) return false;
  return std::binary_search(d_->residues.begin(), d_->residues.end(), reduce(num));
}

IntVector WeightLattice::unit(std::size_t i) const {
  IntVector e(d_->r, 0);
  e[i] = d_->L;
  return e;
}

IntVector WeightLattice::primitive(const IntVector& direction) const {
  IntVector u = primitive_vector(direction);
  IntVector cur = u;
  for (Integer k = 1; k <= d_->L; ++k) {
    if (contains(cur)) return cur;
    cur = add(cur, u);
  }
  throw DomainError("no lattice point on ray");
}

IntVector WeightLattice::coordinates(const IntVector& num) const {
  auto x = solve_in_hnf(d_->hnf, num);
  if (!x) throw DomainError("vector is not a lattice point");
  return *x;
}

RationalVector WeightLattice::to_point(const IntVector& num) const {
  RationalVector out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    out[i] = Rational(num[i], d_->L);
    out[i].canonicalize();
  }
  return out;
}

bool WeightLattice::operator==(const WeightLattice& o) const {
  return d_ == o.d_ || (d_->r == o.d_->r && d_->L == o.d_->L && d_->residues == o.d_->residues);
}

std::size_t Cone::dim() const { return gens.empty() ? 0 : rank(gens); }

bool Cone::is_simplicial() const { return dim() == gens.size(); }

bool Cone::contains_generator(const IntVector& g) const {
  return std::binary_search(gens.begin(), gens.end(), g);
}

Cone make_cone(const WeightLattice& lat, std::vector<IntVector> gens) {
  for (auto& g : gens) {
    if (g.size() != lat.dim()) throw DomainError("generator has wrong dimension");
    g = lat.primitive(g);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return Cone{gens};
}

namespace {

bool strongly_convex(const Cone& c, std::size_t r) {
  if (c.is_simplicial()) return true;
  LinearProgram lp;
  lp.num_vars = c.gens.size();
  for (std::size_t d = 0; d < r; ++d) {
    RationalVector row(lp.num_vars);
    for (std::size_t i = 0; i < c.gens.size(); ++i) row[i] = c.gens[i][d];
    lp.add_row(row, Relation::Equal, 0);
  }
  lp.add_row(RationalVector(lp.num_vars, 1), Relation::Equal, 1);
  return !is_feasible(lp);
}

// Facet normals of a full-dimensional simplicial cone, normal i vanishing off gens[i].
std::vector<IntVector> facet_normals(const Cone& c) {
  std::size_t r = c.gens.size();
  auto a = RationalMatrix::from_int_rows(c.gens);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < r; ++i) {
    RationalVector e(r, 0);
    e[i] = 1;
    auto x = solve_linear(a, e);
    out.push_back(primitive_vector(integral_multiple(*x)));
  }
  return out;
}

bool separated_quickly(const Cone& a, const Cone& b) {
  for (const auto& u : facet_normals(a)) {
    bool ok = true;
    std::vector<IntVector> on_a, on_b;
    for (const auto& g : a.gens)
      if (dot(u, g) == 0) on_a.push_back(g);
    for (const auto& g : b.gens) {
      Integer s = dot(u, g);
      if (s > 0) {
        ok = false;
        break;
      }
      if (s == 0) on_b.push_back(g);
    }
    if (ok && on_a == on_b) return true;
  }
  return false;
}

}  // namespace

void check_common_face(const Cone& a, const Cone& b) {
  if (a == b) return;
  std::size_t r = a.gens.empty() ? (b.gens.empty() ? 0 : b.gens[0].size()) : a.gens[0].size();
  if (a.gens.empty() || b.gens.empty()) return;
  std::vector<IntVector> only_a, only_b, common;
  for (const auto& g : a.gens)
    (b.contains_generator(g) ? common : only_a).push_back(g);
  for (const auto& g : b.gens)
    if (!a.contains_generator(g)) only_b.push_back(g);

  if (a.is_simplicial() && b.is_simplicial()) {
    if (a.gens.size() == r && b.gens.size() == r && (separated_quickly(a, b) || separated_quickly(b, a))) return;
    if (only_a.empty() || only_b.empty()) return;
    LinearProgram lp;
    std::size_t na = only_a.size(), nb = only_b.size(), nc = common.size();
    lp.num_vars = na + nb + 2 * nc;
    for (std::size_t d = 0; d < r; ++d) {
      RationalVector row(lp.num_vars);
      for (std::size_t i = 0; i < na; ++i) row[i] = only_a[i][d];
      for (std::size_t i = 0; i < nb; ++i) row[na + i] = -only_b[i][d];
      for (std::size_t i = 0; i < nc; ++i) {
        row[na + nb + i] = common[i][d];
        row[na + nb + nc + i] = -common[i][d];
      }
      lp.add_row(row, Relation::Equal, 0);
    }
    RationalVector norm(lp.num_vars, 0);
    for (std::size_t i = 0; i < na + nb; ++i) norm[i] = 1;
    lp.add_row(norm, Relation::Equal, 1);
    if (is_feasible(lp)) throw DomainError("cones do not meet in a common face");
    return;
  }

  // Non-simplicial cones: only interior disjointness is checked.
  LinearProgram lp;
  lp.num_vars = a.gens.size() + b.gens.size();
  for (std::size_t d = 0; d < r; ++d) {
    RationalVector row(lp.num_vars);
    for (std::size_t i = 0; i < a.gens.size(); ++i) row[i] = a.gens[i][d];
    for (std::size_t i = 0; i < b.gens.size(); ++i) row[a.gens.size() + i] = -b.gens[i][d];
    lp.add_row(row, Relation::Equal, 0);
  }
  for (std::size_t i = 0; i < lp.num_vars; ++i) {
    RationalVector row(lp.num_vars, 0);
    row[i] = 1;
    lp.add_row(row, Relation::GreaterEq, 1);
  }
  if (is_feasible(lp)) throw DomainError("cone interiors overlap");
}

Fan::Fan(WeightLattice lattice, std::vector<Cone> cones, bool validate) : lat_(std::move(lattice)) {
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  for (std::size_t i = 0; i < cones.size(); ++i) {
    bool is_face = false;
    for (std::size_t j = 0; j < cones.size() && !is_face; ++j) {
      if (i == j || cones[j].gens.size() <= cones[i].gens.size()) continue;
      is_face = std::includes(cones[j].gens.begin(), cones[j].gens.end(), cones[i].gens.begin(),
                              cones[i].gens.end());
    }
    if (!is_face) cones_.push_back(cones[i]);
  }
  if (!validate) return;
  for (const auto& c : cones_) {
    for (const auto& g : c.gens)
      if (!lat_.contains(g)) throw DomainError("cone generator is not a lattice point");
    if (!strongly_convex(c, dim())) throw DomainError("cone is not strongly convex");
  }
  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (std::size_t j = i + 1; j < cones_.size(); ++j) check_common_face(cones_[i], cones_[j]);
}

std::vector<IntVector> Fan::rays() const {
  std::set<IntVector> s;
  for (const auto& c : cones_) s.insert(c.gens.begin(), c.gens.end());
  return {s.begin(), s.end()};
}

bool Fan::is_simplicial() const {
  return std::all_of(cones_.begin(), cones_.end(), [](const Cone& c) { return c.is_simplicial(); });
}

bool Fan::is_complete() const {
  std::size_t r = dim();
  if (r == 0) return true;
  std::map<std::vector<IntVector>, int> walls;
  for (const auto& c : cones_) {
    if (c.gens.size() != r || !c.is_simplicial()) return false;
    for (std::size_t i = 0; i < r; ++i) {
      auto w = c.gens;
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
      ++walls[w];
    }
  }
  return std::all_of(walls.begin(), walls.end(), [](const auto& kv) { return kv.second == 2; });
}

bool Fan::has_cone(const Cone& c) const { return std::binary_search(cones_.begin(), cones_.end(), c); }

Integer multiplicity(const WeightLattice& lat, const Cone& c) {
  if (!c.is_simplicial()) throw DomainError("multiplicity of a non-simplicial cone");
  if (c.gens.empty()) return 1;
  std::vector<IntVector> coords;
  for (const auto& g : c.gens) coords.push_back(lat.coordinates(g));
  Integer g = 0;
  for (const auto& cols : combinations(lat.dim(), c.gens.size())) {
    Integer m = det(columns_subset(coords, cols));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

bool is_smooth(const WeightLattice& lat, const Cone& c) { return multiplicity(lat, c) == 1; }

bool is_smooth_fan(const Fan& f) {
  return std::all_of(f.cones().begin(), f.cones().end(),
                     [&](const Cone& c) { return is_smooth(f.lattice(), c); });
}

std::vector<RationalVector> dual_generators(const WeightLattice& lat, const Cone& c) {
  std::size_t r = lat.dim();
  if (c.gens.size() != r || !c.is_simplicial()) throw DomainError("dual_generators needs a full-dimensional simplicial cone");
  auto a = RationalMatrix::from_int_rows(c.gens);
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < r; ++i) {
    RationalVector e(r, 0);
    e[i] = 1;
    RationalVector x = *solve_linear(a, e);
    // m in M_G iff <m, b> is integral for every basis vector b of N_G.
    RationalVector v(r);
    for (std::size_t k = 0; k < r; ++k) {
      Rational s = 0;
      for (std::size_t j = 0; j < r; ++j) s += x[j] * lat.basis().h[k][j];
      v[k] = s / lat.denominator();
    }
    IntVector w = primitive_vector(integral_multiple(v));
    std::size_t k = 0;
    while (v[k] == 0) ++k;
    Rational factor = Rational(w[k]) / v[k];
    for (auto& y : x) y *= factor;
    out.push_back(x);
  }
  return out;
}

StarResult star(const Fan& f, const Cone& tau) {
  const auto& lat = f.lattice();
  std::size_t r = lat.dim();
  std::size_t k = tau.gens.size();
  if (k == 0) return {lat, f};
  if (!tau.is_simplicial()) throw DomainError("star needs a simplicial cone");
  std::vector<const Cone*> over;
  for (const auto& c : f.cones())
    if (std::includes(c.gens.begin(), c.gens.end(), tau.gens.begin(), tau.gens.end())) over.push_back(&c);
  if (over.empty()) throw DomainError("cone is not a face of the fan");

  // Row HNF of the transposed generator coordinates: u * A^T = h, so A * u^T = h^T.
  std::vector<IntVector> at(r, IntVector(k));
  for (std::size_t j = 0; j < k; ++j) {
    IntVector c = lat.coordinates(tau.gens[j]);
    for (std::size_t i = 0; i < r; ++i) at[i][j] = c[i];
  }
  auto hnf = hermite_normal_form(at);
  auto image = [&](const IntVector& g) {
    IntVector c = lat.coordinates(g);
    IntVector out(r - k, 0);
    for (std::size_t t = k; t < r; ++t)
      for (std::size_t i = 0; i < r; ++i) out[t - k] += c[i] * hnf.u[t][i];
    return primitive_vector(out);
  };

  auto quotient = WeightLattice::standard(r - k);
  std::vector<Cone> cones;
  for (const Cone* c : over) {
    std::vector<IntVector> gens;
    for (const auto& g : c->gens)
      if (!tau.contains_generator(g)) gens.push_back(image(g));
    std::sort(gens.begin(), gens.end());
    cones.push_back(Cone{gens});
  }
  return {quotient, Fan(quotient, cones, false)};
}

Fan starring_subdivision(const Fan& f, const Cone& tau) {
  const auto& lat = f.lattice();
  bool found = false;
  for (const auto& c : f.cones())
    if (std::includes(c.gens.begin(), c.gens.end(), tau.gens.begin(), tau.gens.end())) found = true;
  if (!found || tau.gens.empty()) throw DomainError("cone is not a face of the fan");
  if (tau.gens.size() == 1) return f;
  if (!tau.is_simplicial()) throw DomainError("starring needs a simplicial cone");
  IntVector n0(lat.dim(), 0);
  for (const auto& g : tau.gens) n0 = add(n0, g);
  n0 = lat.primitive(n0);

  std::vector<Cone> cones;
  for (const auto& c : f.cones()) {
    if (!std::includes(c.gens.begin(), c.gens.end(), tau.gens.begin(), tau.gens.end())) {
      cones.push_back(c);
      continue;
    }
    for (const auto& drop : tau.gens) {
      std::vector<IntVector> gens;
      for (const auto& g : c.gens)
        if (g != drop) gens.push_back(g);
      gens.push_back(n0);
      std::sort(gens.begin(), gens.end());
      cones.push_back(Cone{gens});
    }
  }
  return Fan(lat, cones);
}

namespace {

bool has_interior(const std::vector<IntVector>& cons, std::size_t r) {
  LinearProgram lp;
  lp.num_vars = r;
  lp.free_vars.assign(r, true);
  for (const auto& a : cons) lp.add_row(to_rational(a), Relation::GreaterEq, 1);
  return is_feasible(lp);
}

bool in_cone_of(const std::vector<IntVector>& gens, const IntVector& a) {
  if (gens.empty()) return false;
  LinearProgram lp;
  lp.num_vars = gens.size();
  for (std::size_t t = 0; t < a.size(); ++t) {
    RationalVector row(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) row[i] = gens[i][t];
    lp.add_row(row, Relation::Equal, a[t]);
  }
  return is_feasible(lp);
}

// Facet normals of a full-dimensional cone given by cons . v >= 0.
std::vector<IntVector> irredundant(std::vector<IntVector> cons) {
  for (std::size_t i = 0; i < cons.size();) {
    std::vector<IntVector> others;
    for (std::size_t j = 0; j < cons.size(); ++j)
      if (j != i) others.push_back(cons[j]);
    if (in_cone_of(others, cons[i]))
      cons.erase(cons.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return cons;
}

}  // namespace

Fan envelope_subdivision(const WeightLattice& lat, const Cone& c, const std::vector<RationalVector>& functionals) {
  if (functionals.empty()) throw DomainError("envelope_subdivision needs at least one functional");
  const std::size_t r = lat.dim();
  std::vector<IntVector> facets;
  for (const auto& m : dual_generators(lat, c)) facets.push_back(integral_multiple(m));

  std::vector<Cone> regions;
  for (std::size_t j = 0; j < functionals.size(); ++j) {
    std::vector<IntVector> cons = facets;
    for (std::size_t i = 0; i < functionals.size(); ++i) {
      RationalVector diff(r);
      for (std::size_t t = 0; t < r; ++t) diff[t] = functionals[i][t] - functionals[j][t];
      IntVector d = integral_multiple(diff);
      if (gcd_of(d) != 0) cons.push_back(primitive_vector(d));
    }
    std::sort(cons.begin(), cons.end());
    cons.erase(std::unique(cons.begin(), cons.end()), cons.end());
    if (!has_interior(cons, r)) continue;
    cons = irredundant(cons);
    auto satisfies = [&](const IntVector& v) {
      return std::all_of(cons.begin(), cons.end(), [&](const IntVector& a) { return dot(a, v) >= 0; });
    };
    std::set<IntVector> rays;
    for (const auto& sub : combinations(cons.size(), r - 1)) {
      std::vector<IntVector> rows;
      for (auto i : sub) rows.push_back(cons[i]);
      auto ker = kernel(rows, r);
      if (ker.size() != 1) continue;
      IntVector v = ker[0];
      if (!satisfies(v)) {
        v = scale(v, -1);
        if (!satisfies(v)) continue;
      }
      rays.insert(v);
    }
    std::vector<IntVector> gens(rays.begin(), rays.end());
    if (gens.size() < r || rank(gens) < r) continue;
    regions.push_back(make_cone(lat, gens));
  }
  return Fan(lat, regions);
}

Integer euler_characteristic(const Fan& f) {
  Integer n = 0;
  for (const auto& c : f.cones())
    if (c.dim() == f.dim()) ++n;
  return n;
}

DiscrepancyReport discrepancies(const Fan& refinement) {
  DiscrepancyReport rep;
  const auto& L = refinement.lattice().denominator();
  for (const auto& ray : refinement.rays()) {
    for (const auto& x : ray)
      if (x < 0) throw DomainError("fan does not refine the orthant");
    Rational a(sum_of(ray), L);
    a.canonicalize();
    a -= 1;
    rep.by_ray[ray] = a;
    if (a != 0) rep.crepant = false;
  }
  return rep;
}

}  // namespace crepanto

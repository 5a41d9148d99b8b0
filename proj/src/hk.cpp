#include "crepanto/hk.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "crepanto/guard.hpp"

namespace crepanto {

namespace {

constexpr std::size_t kPrimitiveRayGuard = 12;

IntVector zero(std::size_t r) { return IntVector(r, 0); }

// Ray indices of each maximal cone, as sorted vectors.
struct FanIndex {
  std::vector<IntVector> rays;
  std::vector<IntVector> coords;
  std::vector<std::vector<std::size_t>> cones;

  explicit FanIndex(const Fan& f) : rays(f.rays()) {
    for (const auto& r : rays) coords.push_back(f.lattice().coordinates(r));
    for (const auto& c : f.cones()) {
      std::vector<std::size_t> idx;
      for (const auto& g : c.gens) idx.push_back(index(g));
      std::sort(idx.begin(), idx.end());
      cones.push_back(idx);
    }
  }

  std::size_t index(const IntVector& g) const {
    auto it = std::lower_bound(rays.begin(), rays.end(), g);
    if (it == rays.end() || *it != g) throw DomainError("not a ray of the fan");
    return static_cast<std::size_t>(it - rays.begin());
  }

  // first maximal cone containing the sorted set s, or npos
  std::size_t cone_over(const std::vector<std::size_t>& s) const {
    for (std::size_t c = 0; c < cones.size(); ++c)
      if (std::includes(cones[c].begin(), cones[c].end(), s.begin(), s.end())) return c;
    return SIZE_MAX;
  }
};

std::vector<std::size_t> distinct(const std::vector<std::size_t>& multiset) {
  std::vector<std::size_t> s = multiset;
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Integer intersect(const FanIndex& fx, std::vector<std::size_t> m, std::map<std::vector<std::size_t>, Integer>& memo) {
  std::sort(m.begin(), m.end());
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  const std::size_t d = fx.coords[0].size();
  auto s = distinct(m);
  std::size_t c = fx.cone_over(s);
  Integer out = 0;
  if (c == SIZE_MAX) {
    out = 0;
  } else if (s.size() == d) {
    out = 1;
  } else {
    std::size_t rho = SIZE_MAX;
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
      if (m[i] == m[i + 1]) {
        rho = m[i];
        break;
      }
    const auto& sigma = fx.cones[c];
    if (sigma.size() != d) throw DomainError("intersection needs full-dimensional cones");
    std::vector<IntVector> a;
    std::size_t pos = 0;
    for (std::size_t t = 0; t < d; ++t) {
      a.push_back(fx.coords[sigma[t]]);
      if (sigma[t] == rho) pos = t;
    }
    RationalVector e(d, 0);
    e[pos] = 1;
    auto mvec = solve_linear(RationalMatrix::from_int_rows(a), e);
    if (!mvec) throw DomainError("intersection needs smooth cones");
    auto base = m;
    base.erase(std::find(base.begin(), base.end(), rho));
    for (std::size_t tau = 0; tau < fx.rays.size(); ++tau) {
      if (std::binary_search(sigma.begin(), sigma.end(), tau)) continue;
      Rational coef = dot(*mvec, to_rational(fx.coords[tau]));
      if (coef == 0) continue;
      auto next = base;
      next.push_back(tau);
      out -= coef.get_num() * intersect(fx, next, memo);
    }
  }
  memo.emplace(m, out);
  return out;
}

}  // namespace

std::string HKParams::to_string() const {
  std::ostringstream os;
  os << "Y(" << r << ";";
  for (std::size_t i = 0; i < twists.size(); ++i) os << (i ? "," : "") << twists[i];
  os << ")";
  return os.str();
}

HKParams canonical_params(HKParams p) {
  std::sort(p.twists.begin(), p.twists.end());
  bool untwisted = std::all_of(p.twists.begin(), p.twists.end(), [](long x) { return x == 0; });
  if (untwisted && p.k() > p.s()) p.twists.assign(static_cast<std::size_t>(p.s()), 0);
  return p;
}

HKVariety build_hk_fan(long r, std::vector<long> twists) {
  long k = static_cast<long>(twists.size());
  if (k < 1 || r - k < 1) throw DomainError("need 1 <= k < r");
  if (std::any_of(twists.begin(), twists.end(), [](long x) { return x < 0; }))
    throw DomainError("twists must be nonnegative");
  const auto n = static_cast<std::size_t>(r);
  const auto kk = static_cast<std::size_t>(k);
  auto lat = WeightLattice::standard(n);
  HKVariety y;
  y.params = HKParams{r, twists};
  IntVector last = zero(n), last_fiber = zero(n);
  for (std::size_t i = 0; i < kk; ++i) {
    y.base.push_back(lat.unit(i));
    last[i] = -1;
    last_fiber[i] = twists[i];
  }
  y.base.push_back(last);
  for (std::size_t j = kk; j < n; ++j) {
    y.fiber.push_back(lat.unit(j));
    last_fiber[j] = -1;
  }
  y.fiber.push_back(last_fiber);
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < y.base.size(); ++i)
    for (std::size_t j = 0; j < y.fiber.size(); ++j) {
      std::vector<IntVector> gens;
      for (std::size_t a = 0; a < y.base.size(); ++a)
        if (a != i) gens.push_back(y.base[a]);
      for (std::size_t b = 0; b < y.fiber.size(); ++b)
        if (b != j) gens.push_back(y.fiber[b]);
      cones.push_back(make_cone(lat, gens));
    }
  y.fan = Fan(lat, cones);
  return y;
}

std::vector<std::vector<IntVector>> primitive_collections(const Fan& f) {
  if (!f.is_complete()) throw DomainError("primitive collections need a complete fan");
  if (!is_smooth_fan(f)) throw DomainError("primitive collections need a smooth fan");
  FanIndex fx(f);
  const std::size_t n = fx.rays.size();
  check_guard(n, kPrimitiveRayGuard, "number of rays");
  std::vector<unsigned long> masks;
  for (const auto& c : fx.cones) {
    unsigned long m = 0;
    for (auto i : c) m |= 1UL << i;
    masks.push_back(m);
  }
  auto spans = [&](unsigned long s) {
    return std::any_of(masks.begin(), masks.end(), [&](unsigned long m) { return (m & s) == s; });
  };
  std::vector<std::vector<IntVector>> out;
  for (unsigned long s = 1; s < (1UL << n); ++s) {
    if (spans(s)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < n && minimal; ++i)
      if (s >> i & 1) minimal = spans(s & ~(1UL << i));
    if (!minimal) continue;
    std::vector<IntVector> pc;
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1) pc.push_back(fx.rays[i]);
    out.push_back(pc);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<HKParams> detect_hk(const Fan& f) {
  if (!f.is_complete() || !is_smooth_fan(f)) return std::nullopt;
  const std::size_t d = f.dim();
  auto rays = f.rays();
  if (rays.size() != d + 2) return std::nullopt;
  auto pcs = primitive_collections(f);
  if (pcs.size() != 2) return std::nullopt;
  if (pcs[0].size() + pcs[1].size() != rays.size()) return std::nullopt;
  std::set<IntVector> all(pcs[0].begin(), pcs[0].end());
  all.insert(pcs[1].begin(), pcs[1].end());
  if (all.size() != rays.size()) return std::nullopt;

  const auto& lat = f.lattice();
  auto coord_sum = [&](const std::vector<IntVector>& pc) {
    IntVector s = zero(d);
    for (const auto& v : pc) s = add(s, lat.coordinates(v));
    return s;
  };
  bool z0 = coord_sum(pcs[0]) == zero(d), z1 = coord_sum(pcs[1]) == zero(d);
  if (!z0 && !z1) return std::nullopt;
  std::size_t base_ix = z0 ? 0 : 1;
  if (z0 && z1 && pcs[1].size() < pcs[0].size()) base_ix = 1;
  const auto& base = pcs[base_ix];
  const auto& fiber = pcs[1 - base_ix];
  const std::size_t k = base.size() - 1;

  // sum of the fiber collection in terms of n_1..n_k, with n_{k+1} omitted
  RationalMatrix a(d, k);
  for (std::size_t i = 0; i < k; ++i) {
    auto c = lat.coordinates(base[i]);
    for (std::size_t t = 0; t < d; ++t) a(t, i) = c[t];
  }
  auto sol = solve_linear(a, to_rational(coord_sum(fiber)));
  if (!sol) return std::nullopt;
  std::vector<long> c;
  for (const auto& x : *sol) {
    if (x.get_den() != 1) return std::nullopt;
    c.push_back(x.get_num().get_si());
  }
  c.push_back(0);
  long lo = *std::min_element(c.begin(), c.end());
  for (auto& x : c) x -= lo;
  c.erase(std::find(c.begin(), c.end(), 0L));
  return canonical_params(HKParams{static_cast<long>(d), c});
}

std::string StarClass::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case StarKind::ProjectiveSpace: os << "P^" << dim; break;
    case StarKind::HKBundle: os << hk->to_string(); break;
    case StarKind::ProjectiveTimesLine: os << "P^" << dim - 1 << "xC"; break;
    case StarKind::Other: os << "other"; break;
  }
  return os.str();
}

StarClass classify_star(const Fan& f) {
  StarClass out;
  const std::size_t d = f.dim();
  out.dim = static_cast<long>(d);
  if (!is_smooth_fan(f)) return out;
  auto rays = f.rays();
  if (f.is_complete()) {
    if (rays.size() == d + 1) {
      out.kind = StarKind::ProjectiveSpace;
    } else if (auto hk = detect_hk(f)) {
      out.kind = StarKind::HKBundle;
      out.hk = hk;
    }
    return out;
  }
  if (rays.size() != d + 1 || f.cones().size() != d) return out;
  for (const auto& apex : rays) {
    bool everywhere = std::all_of(f.cones().begin(), f.cones().end(),
                                  [&](const Cone& c) { return c.contains_generator(apex); });
    if (!everywhere) continue;
    std::vector<IntVector> rest;
    IntVector s = zero(d);
    for (const auto& g : rays)
      if (g != apex) {
        rest.push_back(g);
        s = add(s, f.lattice().coordinates(g));
      }
    if (s != zero(d) || rank(rest) != d - 1) return out;
    for (const auto& drop : rest) {
      std::vector<IntVector> gens{apex};
      for (const auto& g : rest)
        if (g != drop) gens.push_back(g);
      std::sort(gens.begin(), gens.end());
      if (!f.has_cone(Cone{gens})) return out;
    }
    out.kind = StarKind::ProjectiveTimesLine;
    return out;
  }
  return out;
}

Integer canonical_self_intersection(long r, long lambda) {
  if (r < 1) throw DomainError("dimension must be positive");
  if (lambda == 0) throw DomainError("the closed formula needs lambda != 0");
  Integer total = 0;
  for (long i = 0; i < r; ++i) {
    Integer term = binomial(r, i);
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), Integer(-2).get_mpz_t(), static_cast<unsigned long>(r - i));
    term *= p;
    mpz_pow_ui(p.get_mpz_t(), Integer(lambda - r).get_mpz_t(), static_cast<unsigned long>(i));
    term *= p;
    mpz_pow_ui(p.get_mpz_t(), Integer(lambda).get_mpz_t(), static_cast<unsigned long>(r - i - 1));
    term *= p;
    total += term;
  }
  return total;
}

Integer e_divisor_self_intersection(long r, long lambda) {
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), Integer(lambda).get_mpz_t(), static_cast<unsigned long>(r - 1));
  return p;
}

Integer ews_embedding_dimension(long r, const std::vector<long>& twists) {
  long k = static_cast<long>(twists.size());
  if (k < 1 || r - k < 1) throw DomainError("need 1 <= k < r");
  Integer d = r - k;
  for (long lam : twists) d += binomial(lam + r - k + 1, r - k);
  return d;
}

Integer intersection_number(const Fan& f, const std::vector<IntVector>& rays) {
  if (rays.size() != f.dim()) throw DomainError("need exactly dim divisors");
  FanIndex fx(f);
  std::vector<std::size_t> m;
  for (const auto& g : rays) m.push_back(fx.index(g));
  std::map<std::vector<std::size_t>, Integer> memo;
  return intersect(fx, m, memo);
}

Integer canonical_degree(const Fan& f) {
  if (!f.is_complete() || !is_smooth_fan(f)) throw DomainError("canonical degree needs a complete smooth fan");
  FanIndex fx(f);
  const std::size_t d = f.dim();
  std::map<std::vector<std::size_t>, Integer> memo;
  Integer total = 0;
  std::vector<std::size_t> cur;
  // multisets of size d whose support lies in a cone, weighted by multinomial coefficients
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == d) {
      Integer coef = 1;
      for (std::size_t i = 2; i <= d; ++i) coef *= static_cast<unsigned long>(i);
      for (std::size_t i = 0; i < d;) {
        std::size_t j = i;
        while (j < d && cur[j] == cur[i]) ++j;
        for (std::size_t t = 2; t <= j - i; ++t) coef /= static_cast<unsigned long>(t);
        i = j;
      }
      total += coef * intersect(fx, cur, memo);
      return;
    }
    for (std::size_t i = start; i < fx.rays.size(); ++i) {
      cur.push_back(i);
      if (fx.cone_over(distinct(cur)) != SIZE_MAX) self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return (d % 2 == 0) ? total : Integer(-total);
}

}  // namespace crepanto

#include "crepanto/series.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace crepanto {

namespace {

Integer power(long base, long e) {
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), Integer(base).get_mpz_t(), static_cast<unsigned long>(e));
  return p;
}

// Sum_{i=0}^{r-2} C(r-1, i) (-2)^(r-1-i) (lambda - r)^i lambda^(r-2-i)
Integer printed_self(long r, long lambda) {
  Integer total = 0;
  for (long i = 0; i <= r - 2; ++i)
    total += binomial(r - 1, i) * power(-2, r - 1 - i) * power(lambda - r, i) * power(lambda, r - 2 - i);
  return total;
}

std::string series_point_name(long j) {
  std::ostringstream os;
  os << "n^(" << j << ")";
  return os.str();
}

std::string units_name(long r) {
  std::ostringstream os;
  os << "e_1";
  if (r - 1 > 2) os << ",...";
  if (r - 1 >= 2) os << ",e_" << r - 1;
  return os.str();
}

// Pieces of an intermediate triangulation: families s(a, b) and at most one cap conv(n^(j), e_1..e_{r-1}).
struct Pieces {
  std::vector<std::pair<long, long>> fams;
  std::optional<long> cap;

  void add(long a, long b) {
    if (a != b) fams.emplace_back(std::min(a, b), std::max(a, b));
  }
  void remove(long a, long b) {
    auto it = std::find(fams.begin(), fams.end(), std::make_pair(std::min(a, b), std::max(a, b)));
    if (it == fams.end()) throw std::logic_error("factorization removes a missing simplex family");
    fams.erase(it);
  }
};

LatticeTriangulation realize(const SeriesType& t, const Pieces& p) {
  std::vector<std::vector<IntVector>> simplices;
  for (auto [a, b] : p.fams)
    for (auto& s : t.family(a, b)) simplices.push_back(s);
  if (p.cap) {
    auto c = t.cap(*p.cap);
    if (det(c) != 0) simplices.push_back(c);
  }
  return make_triangulation(t.lattice(), junior_points(t.type()).all(), simplices);
}

}  // namespace

SeriesType::SeriesType(long order, long dim) : l(order), r(dim) {
  if (r < 2) throw DomainError("series needs r >= 2");
  if (l < r) throw DomainError("series needs l >= r");
}

CyclicQuotientType SeriesType::type() const {
  IntVector w(static_cast<std::size_t>(r), 1);
  w.back() = l - (r - 1);
  return CyclicQuotientType(l, w);
}

WeightLattice SeriesType::lattice() const { return type().lattice(); }

IntVector SeriesType::point(long j) const {
  IntVector p(static_cast<std::size_t>(r), j);
  if (j == 0) {
    p.back() = l;
    return p;
  }
  p.back() = floor_mod(Integer(j) * (l - r + 1), Integer(l));
  return p;
}

std::vector<std::vector<IntVector>> SeriesType::family(long a, long b) const {
  auto lat = lattice();
  std::vector<std::vector<IntVector>> out;
  for (const auto& xi : combinations(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(r - 2))) {
    std::vector<IntVector> s{point(a), point(b)};
    for (auto i : xi) s.push_back(lat.unit(i));
    out.push_back(s);
  }
  return out;
}

std::vector<IntVector> SeriesType::cap(long j) const {
  auto lat = lattice();
  std::vector<IntVector> s{point(j)};
  for (long i = 0; i < r - 1; ++i) s.push_back(lat.unit(static_cast<std::size_t>(i)));
  return s;
}

LatticeTriangulation build_triangulation(const SeriesType& t) {
  std::vector<std::vector<IntVector>> simplices;
  for (long j = 1; j <= t.nu(); ++j)
    for (auto& s : t.family(j - 1, j)) simplices.push_back(s);
  if (t.remainder() != 0) simplices.push_back(t.cap(t.nu()));
  return make_triangulation(t.lattice(), junior_points(t.type()).all(), simplices);
}

bool verify_uniqueness(const SeriesType& t) {
  auto tri = build_triangulation(t);
  auto cands = elementary_simplices(tri.points);
  std::sort(cands.begin(), cands.end());
  return cands == tri.simplices;
}

bool basicness(const SeriesType& t) { return t.remainder() <= 1; }

std::string to_string(DivisorKind k) {
  switch (k) {
    case DivisorKind::HKBundle: return "hk_bundle";
    case DivisorKind::ProjectiveSpace: return "proj_space";
    case DivisorKind::ProjectiveTimesLine: return "proj_space_times_line";
  }
  return "";
}

std::vector<DivisorReport> divisor_reports(const SeriesType& t) {
  if (!basicness(t)) throw DomainError("divisor reports need a basic series type");
  const long l = t.l, r = t.r;
  std::vector<DivisorReport> out;
  if (r == 2) {
    for (long j = 1; j <= l - 1; ++j) {
      DivisorReport d;
      d.j = j;
      d.kind = DivisorKind::ProjectiveSpace;
      d.fiber_dim = 1;
      d.self = -2;
      if (j < l - 1) {
        d.with_next = 1;
        d.next_with = 1;
      }
      out.push_back(d);
    }
    return out;
  }
  const long nu = t.nu();
  for (long j = 1; j <= nu; ++j) {
    DivisorReport d;
    d.j = j;
    if (j < nu) {
      d.kind = DivisorKind::HKBundle;
      d.lambda = l - (r - 1) * j;
      d.fiber_dim = 1;
      d.with_next = power(l - (r - 1) * (j + 1), r - 2);
      d.next_with = power((r - 1) * j - l, r - 2);
      d.self = canonical_self_intersection(r - 1, d.lambda);
      d.self_printed = printed_self(r, d.lambda);
    } else if (t.remainder() == 1) {
      d.kind = DivisorKind::ProjectiveSpace;
      d.fiber_dim = r - 1;
      d.self = power(-r, r - 1);
    } else {
      d.kind = DivisorKind::ProjectiveTimesLine;
      d.fiber_dim = r - 2;
      d.self = power(-(r - 1), r - 2);
    }
    out.push_back(d);
  }
  return out;
}

DivisorCheck divisor_kind_check(const SeriesType& t, long j) {
  auto reports = divisor_reports(t);
  if (j < 1 || j > static_cast<long>(reports.size())) throw DomainError("no exceptional divisor with that index");
  const auto& rep = reports[static_cast<std::size_t>(j - 1)];
  auto tri = build_triangulation(t);
  auto fan = fan_of(tri);
  const auto& lat = fan.lattice();
  const auto r = static_cast<std::size_t>(t.r);
  IntVector ray = lat.primitive(t.point(j));
  auto st = star(fan, Cone{{ray}});
  auto cls = classify_star(st.fan);

  DivisorCheck out;
  out.j = j;
  out.detected = cls.to_string();
  switch (rep.kind) {
    case DivisorKind::HKBundle:
      out.kind_matches = cls.kind == StarKind::HKBundle && cls.hk &&
                         *cls.hk == canonical_params(HKParams{t.r - 1, {rep.lambda}});
      break;
    case DivisorKind::ProjectiveSpace:
      out.kind_matches = cls.kind == StarKind::ProjectiveSpace && cls.dim == t.r - 1;
      break;
    case DivisorKind::ProjectiveTimesLine:
      out.kind_matches = cls.kind == StarKind::ProjectiveTimesLine && cls.dim == t.r - 1;
      break;
  }

  if (rep.kind == DivisorKind::ProjectiveTimesLine) {
    // the compact factor is the star of the ray common to all cones of the star
    IntVector apex;
    for (const auto& g : st.fan.rays())
      if (std::all_of(st.fan.cones().begin(), st.fan.cones().end(),
                      [&](const Cone& c) { return c.contains_generator(g); }))
        apex = g;
    if (apex.empty()) throw std::logic_error("non-compact divisor without an apex ray");
    out.self_fan = r >= 3 ? canonical_degree(star(st.fan, Cone{{apex}}).fan) : Integer(1);
  } else {
    out.self_fan = intersection_number(fan, std::vector<IntVector>(r, ray));
  }
  bool has_next = rep.with_next.has_value();
  if (has_next) {
    IntVector next = lat.primitive(t.point(j + 1));
    std::vector<IntVector> a(r - 1, ray), b(r - 1, next);
    a.push_back(next);
    b.push_back(ray);
    out.with_next_fan = intersection_number(fan, a);
    out.next_with_fan = intersection_number(fan, b);
  }
  out.numbers_match = out.self_fan == rep.self && out.with_next_fan == rep.with_next &&
                      out.next_with_fan == rep.next_with;
  return out;
}

IntersectionTable intersection_table_fan(const SeriesType& t) {
  if (t.r != 3) throw DomainError("intersection table is for r = 3");
  const long nu = t.nu();
  auto fan = fan_of(build_triangulation(t));
  const auto& lat = fan.lattice();
  auto n = static_cast<std::size_t>(nu);
  IntersectionTable tab(n, std::vector<std::vector<Integer>>(n, std::vector<Integer>(n, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        Integer v;
        if (i == k && static_cast<long>(i) + 1 == nu && t.remainder() == 0) {
          v = divisor_kind_check(t, nu).self_fan;
        } else {
          std::vector<IntVector> m;
          for (auto x : {i, j, k}) m.push_back(lat.primitive(t.point(static_cast<long>(x) + 1)));
          v = intersection_number(fan, m);
        }
        std::vector<std::size_t> idx{i, j, k};
        do tab[idx[0]][idx[1]][idx[2]] = v;
        while (std::next_permutation(idx.begin(), idx.end()));
      }
  return tab;
}

IntersectionTable intersection_table_closed(const SeriesType& t) {
  if (t.r != 3) throw DomainError("intersection table is for r = 3");
  const long l = t.l, nu = t.nu();
  auto n = static_cast<std::size_t>(nu);
  IntersectionTable tab(n, std::vector<std::vector<Integer>>(n, std::vector<Integer>(n, 0)));
  auto set = [&](long a, long b, long c, long v) {
    std::vector<std::size_t> idx{static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1),
                                 static_cast<std::size_t>(c - 1)};
    std::sort(idx.begin(), idx.end());
    do tab[idx[0]][idx[1]][idx[2]] = v;
    while (std::next_permutation(idx.begin(), idx.end()));
  };
  for (long i = 1; i <= nu; ++i) {
    long self = 8;
    if (2 * i == l - 1) self = 9;
    if (2 * i == l) self = -2;
    set(i, i, i, self);
    if (i < nu) {
      set(i, i, i + 1, l - 2 * (i + 1));
      set(i, i + 1, i + 1, 2 * i - l);
    }
  }
  return tab;
}

ResidualSingularity residual_singularities(const SeriesType& t) {
  if (basicness(t)) throw DomainError("basic series types have no residual singularities");
  auto lat = t.lattice();
  const auto r = static_cast<std::size_t>(t.r);
  std::vector<IntVector> gens;
  for (const auto& g : t.cap(t.nu())) gens.push_back(lat.primitive(g));
  ResidualSingularity out;
  out.multiplicity = multiplicity(lat, make_cone(lat, gens));

  // the group N_G / <gens>, in generator coordinates mod 1
  auto vt = RationalMatrix::from_int_rows(gens).transposed();
  auto reduce = [](RationalVector c) {
    for (auto& x : c) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      x -= q;
    }
    return c;
  };
  std::set<RationalVector> group{RationalVector(r, 0)};
  std::vector<RationalVector> frontier{RationalVector(r, 0)};
  std::vector<RationalVector> step;
  for (const auto& b : lat.basis().h) step.push_back(reduce(*solve_linear(vt, to_rational(b))));
  while (!frontier.empty()) {
    std::vector<RationalVector> next;
    for (const auto& g : frontier)
      for (const auto& s : step) {
        RationalVector h(r);
        for (std::size_t i = 0; i < r; ++i) h[i] = g[i] + s[i];
        h = reduce(h);
        if (group.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  if (group.size() != out.multiplicity) throw std::logic_error("group order differs from multiplicity");
  for (const auto& g : group) {
    Integer ord = lcm_of_denominators(g);
    if (ord != static_cast<unsigned long>(group.size())) continue;
    IntVector w(r);
    for (std::size_t i = 0; i < r; ++i) w[i] = Rational(g[i] * ord).get_num();
    out.cyclic = true;
    out.type = normal_form(CyclicQuotientType(ord, w));
    break;
  }

  const long m = t.remainder();
  Integer g;
  mpz_gcd_ui(g.get_mpz_t(), Integer(t.l).get_mpz_t(), static_cast<unsigned long>(t.r - 1));
  std::optional<CyclicQuotientType> predicted;
  if (g == 1) {
    IntVector w(r, 1);
    w.back() = floor_mod(Integer(-(t.r - 1)), Integer(m));
    predicted = CyclicQuotientType(m, w);
  } else {
    long order = (t.r - 1) / g.get_si();
    if (order >= 2) {
      IntVector w(r, 1);
      w[0] = 0;
      predicted = CyclicQuotientType(order, w);
    }
  }
  out.predicted = predicted ? predicted->to_string() : "none";
  out.matches_prediction = predicted && out.type && equivalent(*out.type, *predicted);
  return out;
}

CohomologyProfile series_cohomology(const SeriesType& t) {
  CohomologyProfile out;
  out.dims.push_back(1);
  auto fl = [&](long i) { return i * t.l / (t.r - 1); };
  for (long i = 1; i <= t.r - 2; ++i) out.dims.push_back(fl(i) - fl(i - 1));
  out.dims.push_back(Integer(t.l - 1 - fl(t.r - 2)));
  out.euler = 0;
  for (const auto& d : out.dims) out.euler += d;
  return out;
}

long series_euler_number(const SeriesType& t) {
  return basicness(t) ? t.l : t.l - t.remainder() + 1;
}

long speedy_step_count(const SeriesType& t) {
  if (t.r == 2 || t.remainder() == 1) {
    long v = t.r == 2 ? t.l - 1 : (t.l - 1) / (t.r - 1);
    return (v + 1) / 2;
  }
  return t.nu() / 2 + 1;
}

long stepwise_step_count(const SeriesType& t) { return t.r == 2 ? t.l - 1 : t.nu(); }

bool refines(const LatticeTriangulation& b, const LatticeTriangulation& a) {
  std::vector<SimplexFrame> frames;
  for (std::size_t s = 0; s < a.simplices.size(); ++s) frames.emplace_back(a.vertices_of(s));
  for (std::size_t s = 0; s < b.simplices.size(); ++s) {
    auto verts = b.vertices_of(s);
    bool inside = std::any_of(frames.begin(), frames.end(), [&](const SimplexFrame& f) {
      return std::all_of(verts.begin(), verts.end(), [&](const IntVector& v) { return f.contains(v); });
    });
    if (!inside) return false;
  }
  return true;
}

FactorizationPlan factorize(const SeriesType& t, FactorMode mode) {
  if (!basicness(t)) throw DomainError("factorization needs a basic series type");
  const long r = t.r;
  FactorizationPlan plan;
  plan.mode = mode;
  Pieces p;
  auto emit = [&](const std::string& center) { plan.steps.push_back({center, realize(t, p)}); };
  auto pair_center = [&](long a, long b) {
    return "V(pos(" + series_point_name(a) + "," + series_point_name(b) + "))";
  };
  const std::string origin = "orb(sigma_0)";
  const std::string face = "V(pos(" + units_name(r) + "))";

  if (mode == FactorMode::Speedy) {
    const long kappa = speedy_step_count(t);
    if (r == 2 || t.remainder() == 1) {
      const long v = r == 2 ? t.l - 1 : (t.l - 1) / (r - 1);
      p.add(0, 1);
      p.add(1, v);
      p.cap = v;
      emit(origin);
      for (long i = 1; i < kappa; ++i) {
        p.remove(i, v - i + 1);
        p.add(i, i + 1);
        p.add(i + 1, v - i);
        p.add(v - i, v - i + 1);
        emit(pair_center(i, v - i + 1));
      }
    } else {
      const long w = t.nu();
      p.add(0, 1);
      p.add(1, w - 1);
      p.cap = w - 1;
      emit(origin);
      for (long i = 1; i <= kappa - 2; ++i) {
        p.remove(i, w - i);
        p.add(i, i + 1);
        p.add(i + 1, w - i - 1);
        p.add(w - i - 1, w - i);
        emit(pair_center(i, w - i));
      }
      p.cap.reset();
      p.add(w - 1, w);
      emit(face);
    }
  } else {
    const long steps = stepwise_step_count(t);
    p.add(0, 1);
    p.cap = 1;
    emit(origin);
    for (long i = 1; i < steps; ++i) {
      p.add(i, i + 1);
      p.cap = i + 1;
      bool last_face = r >= 3 && t.remainder() == 0 && i + 1 == steps;
      emit(last_face ? face : "orb(pos(" + series_point_name(i) + "," + units_name(r) + "))");
    }
  }

  if (!(plan.steps.back().triangulation == build_triangulation(t)))
    throw std::logic_error("factorization does not end at the series triangulation");
  for (std::size_t s = 1; s < plan.steps.size(); ++s)
    if (!refines(plan.steps[s].triangulation, plan.steps[s - 1].triangulation))
      throw std::logic_error("factorization step does not refine its predecessor");
  return plan;
}

}  // namespace crepanto

// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact; runtime
// limits are wall-clock seconds.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "crepanto/hilbert.hpp"
#include "crepanto/hk.hpp"
#include "crepanto/polytope.hpp"
#include "crepanto/quotient.hpp"
#include "crepanto/report.hpp"
#include "crepanto/series.hpp"
#include "crepanto/triangulation.hpp"

using namespace crepanto;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what;
    ok = ok && cond;
  }
};

using Check = std::function<void(Outcome&)>;

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0 means no runtime bound
  Check run;
};

IntVector series_weights(long l, long r) {
  IntVector w(static_cast<std::size_t>(r), 1);
  w.back() = l - (r - 1);
  return w;
}

std::string key(long l, long r) { return "(" + std::to_string(l) + "," + std::to_string(r) + ")"; }

std::set<Cone> cone_set(const Fan& f) { return {f.cones().begin(), f.cones().end()}; }

// 1. Canonical self-intersection of Y(3;2), both by formula and by the printed prism.
void golden_bundle(Outcome& out) {
  auto rep = bundle_report(3, {2});
  out.require(rep["K^r_formula"] == "-62", "K^3 formula");
  out.require(rep["K^r"] == "-62", "K^3 from the fan");
  std::vector<RationalVector> prism;
  for (auto v : std::vector<std::vector<long>>{{0, -1, -1}, {-1, 0, -1}, {-1, -1, -1}, {-1, -1, 1}, {4, -1, 1}, {-1, 4, 1}}) {
    RationalVector p;
    for (long x : v) p.push_back(x);
    prism.push_back(p);
  }
  auto P = convex_hull(prism);
  out.require(P.vertices.size() == 6, "prism has six vertices");
  out.require(polytope_volume(P) == Rational(31, 3), "Vol = 31/3");
  out.require(self_intersection_via_volume(P, 3) == 62, "(-K)^3 = 62");
  out.note << "K^3 = " << rep["K^r_formula"].get<std::string>() << ", Vol = " << to_string(polytope_volume(P));
}

// 2. Hilbert bases: the 1/9(1,2,3,3) violator and the junior description of series types.
void golden_hilbert(Outcome& out) {
  CyclicQuotientType k(9, int_vector({1, 2, 3, 3}));
  auto hb = hilbert_basis_orthant(k.lattice());
  out.require(hb.contains(int_vector({5, 1, 6, 6})), "(5,1,6,6)/9 in the Hilbert basis");
  out.require(!necessary_criterion(k).passes, "criterion fails for 1/9(1,2,3,3)");
  std::size_t types = 0;
  for (long r = 2; r <= 5; ++r)
    for (long l = r; l <= 60; ++l) {
      SeriesType t(l, r);
      auto elems = hilbert_basis_orthant(t.lattice()).elements;
      std::set<IntVector> hilb(elems.begin(), elems.end());
      std::set<IntVector> jsel;
      for (long i = 0; i < r; ++i) {
        IntVector e(static_cast<std::size_t>(r), 0);
        e[static_cast<std::size_t>(i)] = l;
        jsel.insert(e);
      }
      for (long j = 1; j <= l / (r - 1); ++j) {
        IntVector n(static_cast<std::size_t>(r), j);
        n.back() = Integer(((j * (l - r + 1)) % l + l) % l);
        jsel.insert(n);
      }
      bool rescon = l % (r - 1) <= 1;
      out.require((hilb == jsel) == rescon, "Hilbert basis vs junior set at " + key(l, r));
      ++types;
    }
  out.note << types << " series types";
}

// 3. Firla-Ziegler instance passes the necessary criterion.
void golden_firla(Outcome& out) {
  auto rep = criterion_report(CyclicQuotientType(39, int_vector({1, 5, 8, 25})));
  out.require(rep["passes"].get<bool>(), "criterion passes for 1/39(1,5,8,25)");
  out.note << "passes";
}

// 4. The series triangulation for r <= 6, l <= 100.
void series_suite(Outcome& out) {
  std::size_t types = 0;
  for (long r = 2; r <= 6; ++r)
    for (long l = r; l <= 100; ++l) {
      SeriesType t(l, r);
      const std::string at = key(l, r);
      auto tri = build_triangulation(t);
      Integer vol = 0;
      for (std::size_t s = 0; s < tri.simplices.size(); ++s) vol += simplex_multiplicity(tri.lattice, tri.vertices_of(s));
      out.require(vol == l, "multiplicity sum at " + at);
      out.require(verify_uniqueness(t), "uniqueness at " + at);
      const long rem = l % (r - 1);
      const bool basic = classify(tri).basic;
      out.require(basic == (rem <= 1), "basicness at " + at);
      auto cert = coherence_certificate(tri);
      out.require(cert.coherent && cert.epsilon > 0, "coherence at " + at);
      Integer chi = euler_characteristic(fan_of(tri));
      out.require(chi == (basic ? l : l - rem + 1), "Euler number at " + at);
      auto coh = cohomology_cyclic(t.type());
      // dim H^(2i) = #{ j in [0, l) : ceil(j (r-1) / l) = i }
      std::vector<Integer> count(static_cast<std::size_t>(r), 0);
      for (long j = 0; j < l; ++j) count[static_cast<std::size_t>((j * (r - 1) + l - 1) / l)] += 1;
      out.require(coh.dims == count, "cohomology count at " + at);
      if (basic) {
        std::vector<Integer> boxed{1};
        for (long i = 1; i <= r - 2; ++i) boxed.push_back(l / (r - 1));
        boxed.push_back((l - 1) / (r - 1));
        out.require(coh.dims == boxed, "closed-form cohomology at " + at);
      }
      ++types;
    }
  out.note << types << " types";
}

// 5. The r = 3 intersection table, closed form against the fan.
void intersection_suite(Outcome& out) {
  for (long l = 3; l <= 20; ++l) {
    SeriesType t(l, 3);
    const std::string at = key(l, 3);
    auto fan_tab = intersection_table_fan(t);
    auto closed = intersection_table_closed(t);
    out.require(fan_tab == closed, "table at " + at);
    const long nu = t.nu();
    for (long a = 1; a <= nu; ++a)
      for (long b = 1; b <= nu; ++b)
        for (long c = 1; c <= nu; ++c) {
          std::vector<long> idx{a, b, c};
          std::sort(idx.begin(), idx.end());
          long expect = 0;
          if (idx[0] == idx[2]) {
            long i = idx[0];
            expect = 2 * i == l - 1 ? 9 : 2 * i == l ? -2 : 8;
          } else if (idx[0] == idx[1] && idx[2] == idx[1] + 1) {
            expect = l - 2 * (idx[0] + 1);
          } else if (idx[1] == idx[2] && idx[1] == idx[0] + 1) {
            expect = 2 * idx[0] - l;
          }
          out.require(fan_tab[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)]
                             [static_cast<std::size_t>(c - 1)] == expect,
                      "entry at " + at);
        }
    for (const auto& d : divisor_reports(t)) {
      auto jj = static_cast<std::size_t>(d.j - 1);
      out.require(d.self == fan_tab[jj][jj][jj], "divisor self-intersection at " + at);
      if (d.kind == DivisorKind::HKBundle) {
        out.require(d.self == 8, "corrected form gives 8 at " + at);
        out.require(d.self_printed && *d.self_printed == 12, "printed form gives 12 at " + at);
      }
    }
  }
  out.note << "3 <= l <= 20";
}

// 6. Blow-ups: envelope subdivisions and the two factorizations.
void blowup_suite(Outcome& out) {
  auto z2 = WeightLattice::standard(2);
  auto quad = make_cone(z2, {int_vector({1, 0}), int_vector({0, 1})});
  auto weighted = envelope_subdivision(z2, quad, {{1, 0}, {0, 2}});
  auto w1 = make_cone(z2, {int_vector({2, 1}), int_vector({0, 1})});
  auto w2 = make_cone(z2, {int_vector({1, 0}), int_vector({2, 1})});
  out.require(cone_set(weighted) == std::set<Cone>{w1, w2}, "weighted blow-up cones");
  out.require(multiplicity(z2, w1) == 2 && multiplicity(z2, w2) == 1, "weighted blow-up multiplicities");

  auto a4 = WeightLattice::cyclic(5, int_vector({1, 4}));
  auto s0 = make_cone(a4, {int_vector({5, 0}), int_vector({0, 5})});
  auto env = envelope_subdivision(a4, s0, {{5, 0}, {1, 1}, {0, 5}});
  std::set<Cone> three{make_cone(a4, {int_vector({1, 4}), int_vector({0, 5})}),
                       make_cone(a4, {int_vector({4, 1}), int_vector({1, 4})}),
                       make_cone(a4, {int_vector({5, 0}), int_vector({4, 1})})};
  out.require(cone_set(env) == three, "envelope of sigma_0 for 1/5(1,4)");

  SeriesType t(5, 2);
  auto sp = factorize(t, FactorMode::Speedy);
  auto sw = factorize(t, FactorMode::Stepwise);
  out.require(sp.steps.size() == 2 && sw.steps.size() == 4, "1/5(1,4) step counts");
  if (sp.steps.size() == 2) {
    out.require(cone_set(fan_of(sp.steps[0].triangulation)) == three, "first speedy step is the envelope");
    out.require(sp.steps[1].triangulation.simplices.size() == 5, "speedy ends with five cones");
  }
  for (std::size_t s = 0; s < sw.steps.size(); ++s)
    out.require(sw.steps[s].triangulation.simplices.size() == s + 2, "stepwise adds one ray per step");

  std::mt19937 rng(20);
  int sampled = 0;
  while (sampled < 20) {
    long r = 2 + static_cast<long>(rng() % 5);
    long l = r + static_cast<long>(rng() % 60);
    SeriesType u(l, r);
    if (!basicness(u)) continue;
    long kappa;
    if (r == 2 || l % (r - 1) == 1) {
      long v = r == 2 ? l - 1 : (l - 1) / (r - 1);
      kappa = (v + 1) / 2;
    } else {
      kappa = l / (r - 1) / 2 + 1;
    }
    auto plan = factorize(u, FactorMode::Speedy);
    out.require(static_cast<long>(plan.steps.size()) == kappa, "speedy count at " + key(l, r));
    ++sampled;
  }
  out.note << "20 sampled speedy counts";
}

// 7. Uniqueness by enumeration and the stars of 1/7(1,2,4).
void uniqueness_suite(Outcome& out) {
  CyclicQuotientType k(7, int_vector({1, 2, 4}));
  auto res = enumerate_maximal_triangulations(k.lattice(), junior_points(k).all(), 10);
  out.require(res.triangulations.size() == 1 && !res.truncated, "1/7(1,2,4) has one triangulation");
  for (long l = 3; l <= 9; ++l) {
    CyclicQuotientType t(l, series_weights(l, 3));
    auto e = enumerate_maximal_triangulations(t.lattice(), junior_points(t).all(), 10);
    out.require(e.triangulations.size() == 1 && !e.truncated, "unique triangulation at " + key(l, 3));
  }
  if (res.triangulations.size() != 1) return;
  auto fan = fan_of(res.triangulations[0]);
  int stars = 0;
  for (const auto& p : junior_points(k).interior) {
    auto st = star(fan, Cone{{k.lattice().primitive(p)}});
    auto hk = detect_hk(st.fan);
    out.require(hk && hk->to_string() == "Y(2;2)", "star is F_2");
    ++stars;
  }
  out.require(stars == 3, "three compact divisors");
  out.note << stars << " stars";
}

// Independent Hilbert basis: cube elements not dominated by another cube element.
std::set<IntVector> cube_oracle(const WeightLattice& lat) {
  const std::size_t r = lat.dim();
  const Integer& L = lat.denominator();
  std::set<IntVector> cube;
  for (const auto& res : lat.residues()) {
    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < r; ++i)
      if (res[i] == 0) zeros.push_back(i);
    for (std::size_t mask = 0; mask < (std::size_t{1} << zeros.size()); ++mask) {
      IntVector x = res;
      for (std::size_t b = 0; b < zeros.size(); ++b)
        if (mask >> b & 1) x[zeros[b]] = L;
      if (std::any_of(x.begin(), x.end(), [](const Integer& v) { return v != 0; })) cube.insert(x);
    }
  }
  std::set<IntVector> out;
  for (const auto& x : cube) {
    bool reducible = std::any_of(cube.begin(), cube.end(), [&](const IntVector& y) {
      if (y == x) return false;
      for (std::size_t i = 0; i < r; ++i)
        if (y[i] > x[i]) return false;
      return true;
    });
    if (!reducible) out.insert(x);
  }
  return out;
}

std::optional<CyclicQuotientType> random_type(std::mt19937& rng, long max_l, long max_r, bool gorenstein) {
  long r = 2 + static_cast<long>(rng() % static_cast<unsigned long>(max_r - 1));
  long l = 2 + static_cast<long>(rng() % static_cast<unsigned long>(max_l - 1));
  IntVector w(static_cast<std::size_t>(r));
  for (auto& x : w) x = static_cast<long>(rng() % static_cast<unsigned long>(l));
  if (gorenstein) {
    Integer s = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) s += w[i];
    w.back() = floor_mod(-s, Integer(l));
  }
  try {
    return CyclicQuotientType(l, w);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// 8. Randomized property suites.
void property_suite(Outcome& out) {
  std::mt19937 rng(8);
  std::size_t cases = 0;
  auto draw = [&](long max_l, long max_r, bool gor) {
    for (;;)
      if (auto t = random_type(rng, max_l, max_r, gor)) return *t;
  };

  for (int i = 0; i < 250; ++i, ++cases) {
    auto t = draw(64, 4, false);
    auto hb = hilbert_basis_orthant(t.lattice()).elements;
    out.require(std::set<IntVector>(hb.begin(), hb.end()) == cube_oracle(t.lattice()), "Hilbert oracle " + t.to_string());
  }
  for (int i = 0; i < 200; ++i, ++cases) {
    auto t = draw(40, 5, true);
    out.require(cohomology_cyclic(t) == cohomology_parallelotope(t.lattice()), "cohomology double count " + t.to_string());
  }
  for (int i = 0; i < 200; ++i, ++cases) {
    auto t = draw(40, 5, false);
    auto nf = normal_form(t);
    out.require(normal_form(nf) == nf, "normal form idempotent " + t.to_string());
    out.require(equivalent(t, t), "reflexive " + t.to_string());
    long l = t.l.get_si();
    auto transform = [&](const CyclicQuotientType& s) {
      long u;
      do u = 1 + static_cast<long>(rng() % static_cast<unsigned long>(l - 1 > 0 ? l - 1 : 1));
      while (std::gcd(u, l) != 1);
      IntVector w = s.weights;
      for (auto& x : w) x = floor_mod(x * u, s.l);
      std::shuffle(w.begin(), w.end(), rng);
      return CyclicQuotientType(s.l, w);
    };
    auto t2 = transform(t);
    auto t3 = transform(t2);
    out.require(equivalent(t, t2) && equivalent(t2, t), "symmetric " + t.to_string());
    out.require(equivalent(t, t3), "transitive " + t.to_string());
    out.require(normal_form(t2) == nf, "normal form is an invariant " + t.to_string());
    auto other = draw(40, 5, false);
    out.require(equivalent(t, other) == (normal_form(other) == nf), "equivalence matches normal forms");
  }
  for (int i = 0; i < 100; ++i, ++cases) {
    long lam = 1 + static_cast<long>(rng() % 1000);
    out.require(canonical_self_intersection(2, lam) == 8, "Formula1 at r = 2");
  }
  for (int i = 0; i < 150; ++i, ++cases) {
    long r = 2 + static_cast<long>(rng() % 3);
    long k = 1 + static_cast<long>(rng() % static_cast<unsigned long>(r - 1));
    std::vector<long> tw;
    for (long j = 0; j < k; ++j) tw.push_back(static_cast<long>(rng() % 6));
    auto y = build_hk_fan(r, tw);
    auto got = detect_hk(y.fan);
    out.require(got && *got == canonical_params(y.params), "detect_hk round trip " + y.params.to_string());
  }
  for (int i = 0; i < 200; ++i, ++cases) {
    auto t = draw(30, 4, false);
    auto lat = t.lattice();
    const auto& res = lat.residues();
    IntVector v = lat.primitive(res[1 + rng() % (res.size() - 1)]);
    std::vector<Cone> cones;
    std::vector<IntVector> units;
    for (std::size_t j = 0; j < lat.dim(); ++j) units.push_back(lat.unit(j));
    for (std::size_t j = 0; j < lat.dim(); ++j) {
      if (v[j] == 0) continue;
      auto gens = units;
      gens[j] = v;
      cones.push_back(make_cone(lat, gens));
    }
    Fan f(lat, cones);
    // age of the primitive point, from the group element it represents
    Rational age(sum_of(v), lat.denominator());
    age.canonicalize();
    out.require(discrepancies(f).crepant == (age == 1), "discrepancy vs junior " + t.to_string());
  }
  out.require(cases >= 1000, "at least 1000 cases");
  out.note << cases << " cases";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "bundle Y(3;2): K^3 = -62, Vol = 31/3, (-K)^3 = 62", 1.0, golden_bundle},
      {2, "Hilbert bases: 1/9(1,2,3,3) violator, series junior sets l <= 60, r <= 5", 5.0, golden_hilbert},
      {3, "criterion passes for 1/39(1,5,8,25)", 0.0, golden_firla},
      {4, "series suite r <= 6, l <= 100", 60.0, series_suite},
      {5, "r = 3 intersection table, 3 <= l <= 20", 0.0, intersection_suite},
      {6, "envelope subdivisions and factorizations", 0.0, blowup_suite},
      {7, "unique triangulations and F_2 stars", 0.0, uniqueness_suite},
      {8, "randomized property suites", 0.0, property_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.note << " exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit_s == 0.0 || secs < c.limit_s;
    bool pass = out.ok && in_time;
    if (!pass) ++failed;
    char timing[64];
    if (c.limit_s > 0)
      std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", secs, c.limit_s);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << timing << "] "
              << out.note.str() << (in_time ? "" : " (over time limit)") << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}

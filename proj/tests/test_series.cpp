#include <doctest.h>

#include <set>

#include "crepanto/hilbert.hpp"
#include "crepanto/series.hpp"

using namespace crepanto;

namespace {

std::set<Cone> cone_set(const Fan& f) { return {f.cones().begin(), f.cones().end()}; }

Fan envelope_of_origin(const SeriesType& t) {
  auto lat = t.lattice();
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < lat.dim(); ++i) gens.push_back(lat.unit(i));
  std::vector<RationalVector> fs;
  for (const auto& m : dual_hilbert_basis(lat)) fs.push_back(to_rational(m));
  return envelope_subdivision(lat, make_cone(lat, gens), fs);
}

}  // namespace

TEST_CASE("series triangulation sizes") {
  CHECK(build_triangulation(SeriesType(7, 3)).simplices.size() == 7);
  CHECK(build_triangulation(SeriesType(10, 3)).simplices.size() == 10);
  CHECK(build_triangulation(SeriesType(5, 4)).simplices.size() == 4);
  CHECK(build_triangulation(SeriesType(2, 2)).simplices.size() == 2);
  for (long r = 2; r <= 5; ++r)
    for (long l = r; l <= 25; ++l) {
      SeriesType t(l, r);
      auto tri = build_triangulation(t);
      std::size_t expect = static_cast<std::size_t>(t.nu() * (r - 1) + (t.remainder() != 0 ? 1 : 0));
      CHECK(tri.simplices.size() == expect);
      Integer mult_sum = 0, nonunit = 0;
      for (std::size_t s = 0; s < tri.simplices.size(); ++s) {
        Integer m = simplex_multiplicity(tri.lattice, tri.vertices_of(s));
        mult_sum += m;
        if (m != 1) nonunit = m;
      }
      CHECK(mult_sum == l);
      CHECK(nonunit == (t.remainder() > 1 ? t.remainder() : 0));
      auto flags = classify(tri);
      CHECK(flags.maximal);
      CHECK(flags.basic == basicness(t));
    }
  CHECK_THROWS_AS(SeriesType(3, 4), DomainError);
}

TEST_CASE("series uniqueness and coherence") {
  CHECK(verify_uniqueness(SeriesType(11, 3)));
  CHECK(verify_uniqueness(SeriesType(9, 4)));
  CHECK(verify_uniqueness(SeriesType(2, 2)));
  auto cert = coherence_certificate(build_triangulation(SeriesType(11, 3)));
  CHECK(cert.coherent);
  CHECK(cert.epsilon > 0);
  for (long l = 3; l <= 9; ++l) {
    SeriesType t(l, 3);
    auto res = enumerate_maximal_triangulations(t.lattice(), junior_points(t.type()).all(), 10);
    REQUIRE(res.triangulations.size() == 1);
    CHECK(res.triangulations[0] == build_triangulation(t));
  }
}

TEST_CASE("divisor reports") {
  auto d10 = divisor_reports(SeriesType(10, 3));
  REQUIRE(d10.size() == 5);
  CHECK(*d10[0].with_next == 6);
  CHECK(*d10[0].next_with == -8);
  CHECK(d10[4].kind == DivisorKind::ProjectiveTimesLine);
  CHECK(d10[4].self == -2);
  for (long j = 0; j < 4; ++j) {
    CHECK(d10[static_cast<std::size_t>(j)].lambda == 8 - 2 * j);
    CHECK(d10[static_cast<std::size_t>(j)].self == 8);
    CHECK(*d10[static_cast<std::size_t>(j)].self_printed == 12);
  }
  auto d7 = divisor_reports(SeriesType(7, 3));
  CHECK(d7[2].kind == DivisorKind::ProjectiveSpace);
  CHECK(d7[2].self == 9);
  CHECK_THROWS_AS(divisor_reports(SeriesType(5, 4)), DomainError);

  auto c = divisor_kind_check(SeriesType(7, 3), 1);
  CHECK(c.detected == "Y(2;5)");
  CHECK(c.kind_matches);
  CHECK(divisor_kind_check(SeriesType(7, 3), 2).detected == "Y(2;3)");
  CHECK(divisor_kind_check(SeriesType(9, 4), 1).detected == "Y(3;6)");
  CHECK(divisor_kind_check(SeriesType(10, 3), 5).detected == "P^1xC");
  CHECK(divisor_kind_check(SeriesType(7, 3), 3).detected == "P^2");
}

TEST_CASE("divisor reports agree with the fan") {
  for (long r = 2; r <= 5; ++r)
    for (long l = r; l <= 22; ++l) {
      SeriesType t(l, r);
      if (!basicness(t)) continue;
      auto reps = divisor_reports(t);
      for (const auto& d : reps) {
        auto c = divisor_kind_check(t, d.j);
        CHECK_MESSAGE(c.kind_matches, "l=" << l << " r=" << r << " j=" << d.j << " got " << c.detected);
        CHECK_MESSAGE(c.numbers_match, "l=" << l << " r=" << r << " j=" << d.j);
      }
    }
}

TEST_CASE("r = 3 intersection table") {
  for (long l = 3; l <= 20; ++l) {
    SeriesType t(l, 3);
    CHECK(intersection_table_fan(t) == intersection_table_closed(t));
  }
  // self-intersection against the number of rays in the star
  for (long l = 3; l <= 20; ++l) {
    SeriesType t(l, 3);
    auto fan = fan_of(build_triangulation(t));
    for (const auto& d : divisor_reports(t)) {
      if (d.kind == DivisorKind::ProjectiveTimesLine) continue;
      auto st = star(fan, Cone{{fan.lattice().primitive(t.point(d.j))}});
      CHECK(d.self == 12 - static_cast<long>(st.fan.rays().size()));
    }
  }
}

TEST_CASE("residual singularities") {
  auto a = residual_singularities(SeriesType(5, 4));
  REQUIRE(a.type.has_value());
  CHECK(a.multiplicity == 2);
  CHECK(equivalent(*a.type, CyclicQuotientType(2, int_vector({1, 1, 1, 1}))));
  CHECK(a.matches_prediction);
  auto b = residual_singularities(SeriesType(8, 4));
  REQUIRE(b.type.has_value());
  CHECK(equivalent(*b.type, CyclicQuotientType(2, int_vector({1, 1, 1, 1}))));
  auto c = residual_singularities(SeriesType(6, 5));
  REQUIRE(c.type.has_value());
  CHECK(equivalent(*c.type, CyclicQuotientType(2, int_vector({0, 1, 1, 1, 1}))));
  CHECK(c.matches_prediction);
  CHECK_THROWS_AS(residual_singularities(SeriesType(9, 5)), DomainError);
}

TEST_CASE("factorizations") {
  SeriesType a4(5, 2);
  auto sp = factorize(a4, FactorMode::Speedy);
  auto sw = factorize(a4, FactorMode::Stepwise);
  CHECK(sp.steps.size() == 2);
  CHECK(sw.steps.size() == 4);
  CHECK(sp.steps[0].triangulation.simplices.size() == 3);
  CHECK(cone_set(fan_of(sp.steps[0].triangulation)) == cone_set(envelope_of_origin(a4)));
  CHECK(factorize(SeriesType(11, 3), FactorMode::Speedy).steps.size() == 3);
  CHECK(factorize(SeriesType(10, 3), FactorMode::Speedy).steps.size() == 3);
  CHECK_THROWS_AS(factorize(SeriesType(5, 4), FactorMode::Speedy), DomainError);
  for (long r = 2; r <= 5; ++r)
    for (long l = r; l <= 24; ++l) {
      SeriesType t(l, r);
      if (!basicness(t)) continue;
      auto s = factorize(t, FactorMode::Speedy);
      CHECK(static_cast<long>(s.steps.size()) == speedy_step_count(t));
      if (r <= 3 || l <= 7) CHECK(cone_set(fan_of(s.steps[0].triangulation)) == cone_set(envelope_of_origin(t)));
      auto w = factorize(t, FactorMode::Stepwise);
      CHECK(static_cast<long>(w.steps.size()) == stepwise_step_count(t));
    }
}

TEST_CASE("series resolutions are crepant with the expected Euler number") {
  for (long r = 2; r <= 4; ++r)
    for (long l = r; l <= 16; ++l) {
      SeriesType t(l, r);
      auto fan = fan_of(build_triangulation(t));
      CHECK(euler_characteristic(fan) == series_euler_number(t));
      if (basicness(t)) CHECK(series_euler_number(t) == l);
      CHECK(discrepancies(fan).crepant);
      auto coh = cohomology_cyclic(t.type());
      CHECK(coh.euler == l);
      CHECK(coh == series_cohomology(t));
      if (r == 3) CHECK(coh == cohomology_3d_closed_form(t.type()));
      if (basicness(t)) {
        std::vector<Integer> boxed{1};
        for (long i = 1; i <= r - 2; ++i) boxed.push_back(l / (r - 1));
        boxed.push_back((l - 1) / (r - 1));
        CHECK(coh.dims == boxed);
      }
    }
}

TEST_CASE("stars of the unique resolution of 1/7(1,2,4)") {
  CyclicQuotientType k(7, int_vector({1, 2, 4}));
  auto lat = k.lattice();
  auto res = enumerate_maximal_triangulations(lat, junior_points(k).all(), 10);
  REQUIRE(res.triangulations.size() == 1);
  auto fan = fan_of(res.triangulations[0]);
  CHECK(is_smooth_fan(fan));
  std::size_t compact = 0;
  for (const auto& p : junior_points(k).interior) {
    auto st = star(fan, Cone{{lat.primitive(p)}});
    REQUIRE(st.fan.is_complete());
    auto hk = detect_hk(st.fan);
    REQUIRE(hk.has_value());
    CHECK(hk->to_string() == "Y(2;2)");
    ++compact;
  }
  CHECK(compact == 3);
}

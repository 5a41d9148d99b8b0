#include <doctest.h>

#include <random>

#include "crepanto/lattice.hpp"

using namespace crepanto;

namespace {

WeightLattice cyc(long l, std::initializer_list<long> w) { return WeightLattice::cyclic(l, int_vector(w)); }

std::vector<IntVector> vecs(std::initializer_list<std::initializer_list<long>> xs) {
  std::vector<IntVector> out;
  for (auto x : xs) out.push_back(int_vector(x));
  return out;
}

Fan orthant_fan(const WeightLattice& lat) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < lat.dim(); ++i) gens.push_back(lat.unit(i));
  return Fan(lat, {make_cone(lat, gens)});
}

}  // namespace

TEST_CASE("weight lattice residues and smallness") {
  auto lat = cyc(5, {1, 4});
  CHECK(lat.group_order() == 5);
  CHECK(lat.contains(int_vector({1, 4})));
  CHECK_FALSE(lat.contains(int_vector({1, 1})));
  CHECK_NOTHROW(cyc(6, {1, 1, 4}));
  CHECK_THROWS_AS(cyc(4, {2, 2, 1}), DomainError);
  CHECK_THROWS_AS(WeightLattice::abelian({{Integer(2), int_vector({1, 0, 0})}}, 3), DomainError);
  auto z44 = WeightLattice::abelian({{Integer(4), int_vector({1, 3, 0})}, {Integer(4), int_vector({0, 1, 3})}}, 3);
  CHECK(z44.group_order() == 16);
}

TEST_CASE("multiplicity and smoothness") {
  auto z3 = WeightLattice::standard(3);
  CHECK(multiplicity(z3, make_cone(z3, vecs({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))) == 1);
  CHECK(multiplicity(z3, make_cone(z3, vecs({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}))) == 2);
  auto lat = cyc(7, {1, 2, 4});
  auto sigma0 = make_cone(lat, vecs({{7, 0, 0}, {0, 7, 0}, {0, 0, 7}}));
  CHECK(multiplicity(lat, sigma0) == 7);
  auto a4 = cyc(5, {1, 4});
  CHECK_FALSE(is_smooth(a4, make_cone(a4, vecs({{5, 0}, {0, 5}}))));
  CHECK(is_smooth_fan(orthant_fan(z3)));
  // final subdivision of 1/5(1,4)
  std::vector<Cone> cones;
  for (long j = 0; j < 5; ++j)
    cones.push_back(make_cone(a4, vecs({{5 - j, j == 0 ? 0 : 5 - (5 - j)}, {4 - j, j + 1}})));
  Fan f(a4, cones);
  CHECK(f.cones().size() == 5);
  CHECK(is_smooth_fan(f));
  CHECK(euler_characteristic(f) == 5);
  CHECK_THROWS_AS(multiplicity(z3, Cone{vecs({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}})}), DomainError);
}

TEST_CASE("multiplicity is invariant under unimodular maps") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-4, 4);
  auto z3 = WeightLattice::standard(3);
  std::vector<IntVector> u = vecs({{1, 2, 0}, {0, 1, -3}, {1, 2, 1}});  // det 1
  for (int t = 0; t < 100; ++t) {
    std::vector<IntVector> g(3, IntVector(3));
    for (auto& v : g)
      for (auto& x : v) x = d(rng);
    if (det(g) == 0) continue;
    std::vector<IntVector> h;
    for (auto& v : g) {
      IntVector w(3, 0);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w[i] += u[i][j] * v[j];
      h.push_back(w);
    }
    CHECK(multiplicity(z3, make_cone(z3, g)) == multiplicity(z3, make_cone(z3, h)));
  }
}

TEST_CASE("dual generators") {
  auto z3 = WeightLattice::standard(3);
  auto d = dual_generators(z3, make_cone(z3, vecs({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
  CHECK(d.size() == 3);
  // ordered by the opposite generator; generators are sorted
  CHECK(d[0] == RationalVector{0, 0, 1});
  CHECK(d[2] == RationalVector{1, 0, 0});
  auto a4 = cyc(5, {1, 4});
  auto dd = dual_generators(a4, make_cone(a4, vecs({{5, 0}, {0, 5}})));
  CHECK(dd[0] == RationalVector{0, 5});
  CHECK(dd[1] == RationalVector{5, 0});
  auto z2 = WeightLattice::standard(2);
  auto c = make_cone(z2, vecs({{2, 1}, {0, 1}}));
  auto n = dual_generators(z2, c);
  CHECK(n[0] == RationalVector{-1, 2});
  CHECK(n[1] == RationalVector{1, 0});
}

TEST_CASE("star") {
  auto z3 = WeightLattice::standard(3);
  Fan f = orthant_fan(z3);
  CHECK(star(f, Cone{}).fan == f);
  auto s = star(f, f.cones()[0]);
  CHECK(s.quotient.dim() == 0);
  CHECK(s.fan.cones().size() == 1);
  CHECK_THROWS_AS(star(f, Cone{vecs({{1, 1, 1}})}), DomainError);
}

TEST_CASE("starring subdivision") {
  auto z2 = WeightLattice::standard(2);
  Fan f = orthant_fan(z2);
  Fan g = starring_subdivision(f, f.cones()[0]);
  Fan expect(z2, {make_cone(z2, vecs({{1, 1}, {0, 1}})), make_cone(z2, vecs({{1, 0}, {1, 1}}))});
  CHECK(g == expect);
  CHECK(starring_subdivision(f, Cone{vecs({{1, 0}})}) == f);
  auto z3 = WeightLattice::standard(3);
  Fan f3 = orthant_fan(z3);
  Fan g3 = starring_subdivision(f3, Cone{vecs({{0, 1, 0}, {1, 0, 0}})});
  CHECK(g3.cones().size() == 2);
  for (const auto& c : g3.cones()) CHECK(c.contains_generator(int_vector({1, 1, 0})));
}

TEST_CASE("envelope subdivision") {
  auto z2 = WeightLattice::standard(2);
  auto quad = make_cone(z2, vecs({{1, 0}, {0, 1}}));
  Fan e = envelope_subdivision(z2, quad, {{1, 0}, {0, 2}});
  Fan expect(z2, {make_cone(z2, vecs({{2, 1}, {0, 1}})), make_cone(z2, vecs({{1, 0}, {2, 1}}))});
  CHECK(e == expect);
  CHECK(multiplicity(z2, make_cone(z2, vecs({{2, 1}, {0, 1}}))) == 2);
  CHECK(multiplicity(z2, make_cone(z2, vecs({{1, 0}, {2, 1}}))) == 1);

  auto a4 = cyc(5, {1, 4});
  auto s0 = make_cone(a4, vecs({{5, 0}, {0, 5}}));
  Fan e2 = envelope_subdivision(a4, s0, {{5, 0}, {1, 1}, {0, 5}});
  Fan expect2(a4, {make_cone(a4, vecs({{1, 4}, {0, 5}})), make_cone(a4, vecs({{4, 1}, {1, 4}})),
                   make_cone(a4, vecs({{5, 0}, {4, 1}}))});
  CHECK(e2 == expect2);
  CHECK(envelope_subdivision(z2, quad, {{1, 1}}).cones() == std::vector<Cone>{quad});
  CHECK_THROWS_AS(envelope_subdivision(z2, quad, {}), DomainError);
}

TEST_CASE("discrepancies") {
  auto lat = WeightLattice::cyclic(4, int_vector({1, 1, 1, 1}));
  auto sigma0 = make_cone(lat, {lat.unit(0), lat.unit(1), lat.unit(2), lat.unit(3)});
  Fan f(lat, {sigma0});
  Fan g = starring_subdivision(f, sigma0);
  auto rep = discrepancies(g);
  CHECK(rep.by_ray.at(int_vector({1, 1, 1, 1})) == 0);
  CHECK(rep.by_ray.at(lat.unit(0)) == 0);
  CHECK(rep.crepant);
  auto lat5 = WeightLattice::cyclic(5, int_vector({1, 1, 1, 1}));
  auto s5 = make_cone(lat5, {lat5.unit(0), lat5.unit(1), lat5.unit(2), lat5.unit(3)});
  auto g5 = starring_subdivision(Fan(lat5, {s5}), s5);
  auto rep5 = discrepancies(g5);
  CHECK(rep5.by_ray.at(int_vector({1, 1, 1, 1})) == Rational(4, 5) - 1);
  CHECK_FALSE(rep5.crepant);
}

TEST_CASE("fan validation rejects overlaps") {
  auto z2 = WeightLattice::standard(2);
  CHECK_THROWS_AS(Fan(z2, {make_cone(z2, vecs({{1, 0}, {1, 2}})), make_cone(z2, vecs({{1, 1}, {0, 1}}))}), DomainError);
  auto z3 = WeightLattice::standard(3);
  CHECK_THROWS_AS(Fan(z3, {make_cone(z3, vecs({{1, 0, 0}, {0, 1, 0}})), make_cone(z3, vecs({{1, 1, 0}, {0, 0, 1}}))}),
                  DomainError);
}

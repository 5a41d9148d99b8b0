#pragma once

#include <optional>
#include <vector>

#include "crepanto/lattice.hpp"

namespace crepanto {

struct LatticePolytope {
  std::vector<RationalVector> vertices;  // extreme points, sorted

  std::size_t ambient_dim() const { return vertices.empty() ? 0 : vertices[0].size(); }
};

// Extreme points of the hull.
LatticePolytope convex_hull(std::vector<RationalVector> points);
LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b);
LatticePolytope scaled(const LatticePolytope& p, const Rational& t);

// Euclidean volume of a full-dimensional polytope, ambient dimension at most 4.
Rational polytope_volume(const LatticePolytope& p);
// r! * Vol(p).
Rational self_intersection_via_volume(const LatticePolytope& p, std::size_t r);
// r! times the mixed volume of r polytopes in dimension r <= 3.
Rational mixed_volume(const std::vector<LatticePolytope>& ps);

// Polytope of -K for a complete smooth fan in the standard lattice, if -K is ample.
std::optional<LatticePolytope> anticanonical_polytope(const Fan& f);

}  // namespace crepanto

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "crepanto/lattice.hpp"

namespace crepanto {

using SimplexIndices = std::vector<std::size_t>;

// Membership in a lattice simplex via an integer adjugate of a nonsingular minor of
// the homogenized vertex matrix.
class SimplexFrame {
public:
  explicit SimplexFrame(const std::vector<IntVector>& vertices);

  bool independent() const { return independent_; }
  std::size_t size() const { return verts_.size(); }
  // Scaled barycentric coordinates (common factor scale()), if p lies in the affine hull.
  std::optional<IntVector> barycentric(const IntVector& p) const;
  const Integer& scale() const { return det_; }
  bool contains(const IntVector& p) const;           // closed simplex
  bool contains_interior(const IntVector& p) const;  // relative interior

private:
  std::vector<IntVector> verts_;
  bool independent_ = false;
  std::vector<std::size_t> rows_;
  std::vector<IntVector> adj_;
  Integer det_;
  IntVector lo_, hi_;
};

// Triangulation of the junior simplex by lattice simplices.
struct LatticeTriangulation {
  WeightLattice lattice;
  std::vector<IntVector> points;        // sorted numerators
  std::vector<SimplexIndices> simplices;  // sorted index lists, sorted

  std::vector<IntVector> vertices_of(std::size_t s) const;
  std::size_t index_of(const IntVector& p) const;
  bool operator==(const LatticeTriangulation& o) const {
    return points == o.points && simplices == o.simplices;
  }
};

// Canonicalizes and validates; throws DomainError when the simplices do not tile s_G.
LatticeTriangulation make_triangulation(const WeightLattice& lat, std::vector<IntVector> points,
                                        const std::vector<std::vector<IntVector>>& simplices);
void validate_triangulation(const LatticeTriangulation& t);

Integer simplex_multiplicity(const WeightLattice& lat, const std::vector<IntVector>& vertices);

bool is_elementary(const WeightLattice& lat, const std::vector<IntVector>& vertices);
bool is_basic(const WeightLattice& lat, const std::vector<IntVector>& vertices);

struct TriangulationFlags {
  bool maximal = false;
  bool basic = false;
  bool crepant = false;
};
TriangulationFlags classify(const LatticeTriangulation& t);

struct SupportHeights {
  bool coherent = false;
  RationalVector heights;  // one per point, in [0, 1]
  Rational epsilon;        // minimum slack over all (simplex, non-member point) pairs
  // incoherent: (simplex, point) constraints with nonzero multiplier
  std::vector<std::pair<std::size_t, std::size_t>> tight;
  RationalVector multipliers;
};

// Points must lie on a common affine hyperplane not through the origin.
SupportHeights coherence_certificate(const std::vector<IntVector>& points, const std::vector<SimplexIndices>& simplices);
SupportHeights coherence_certificate(const LatticeTriangulation& t);

// Exact minimum of extension(w) - height(w) over all simplices and non-member points.
Rational certificate_slack(const std::vector<IntVector>& points, const std::vector<SimplexIndices>& simplices,
                           const RationalVector& heights);

Fan fan_of(const LatticeTriangulation& t);

struct EnumerationResult {
  std::vector<LatticeTriangulation> triangulations;
  bool truncated = false;
};

// All maximal triangulations of s_G; points must be every lattice point of s_G.
EnumerationResult enumerate_maximal_triangulations(const WeightLattice& lat, const std::vector<IntVector>& points,
                                                   std::size_t max_count);

// Full-dimensional simplices on the given points containing no other of them.
std::vector<SimplexIndices> elementary_simplices(const std::vector<IntVector>& points);

}  // namespace crepanto

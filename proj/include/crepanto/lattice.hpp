#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include "crepanto/exact.hpp"

namespace crepanto {

struct GroupFactor {
  Integer order;
  IntVector weights;
};

// N_G = Z^r + sum_k Z * weights_k / order_k. Points are numerator vectors over the
// common denominator L.
class WeightLattice {
public:
  WeightLattice();
  static WeightLattice standard(std::size_t r);
  static WeightLattice cyclic(const Integer& l, const IntVector& weights);
  static WeightLattice abelian(const std::vector<GroupFactor>& factors, std::size_t r);

  std::size_t dim() const { return d_->r; }
  const Integer& denominator() const { return d_->L; }
  const std::vector<GroupFactor>& factors() const { return d_->factors; }
  std::size_t group_order() const { return d_->residues.size(); }

  // Numerators of Par(sigma_0) cap N_G, entries in [0, L), sorted.
  const std::vector<IntVector>& residues() const { return d_->residues; }
  bool contains(const IntVector& num) const;
  IntVector unit(std::size_t i) const;
  IntVector primitive(const IntVector& direction) const;
  IntVector reduce(const IntVector& num) const;

  const IntHermite& basis() const { return d_->hnf; }
  IntVector coordinates(const IntVector& num) const;
  RationalVector to_point(const IntVector& num) const;

  bool operator==(const WeightLattice& o) const;

private:
  struct Data {
    std::size_t r = 0;
    Integer L = 1;
    std::vector<GroupFactor> factors;
    std::vector<IntVector> residues;
    IntHermite hnf;
  };
  std::shared_ptr<const Data> d_;
  static WeightLattice build(std::vector<GroupFactor> factors, std::size_t r, bool check_small);
};

struct Cone {
  std::vector<IntVector> gens;  // primitive numerators, sorted

  std::size_t dim() const;
  bool is_simplicial() const;
  bool contains_generator(const IntVector& g) const;
  bool operator==(const Cone& o) const { return gens == o.gens; }
  bool operator<(const Cone& o) const { return gens < o.gens; }
};

Cone make_cone(const WeightLattice& lat, std::vector<IntVector> gens);

class Fan {
public:
  Fan() = default;
  Fan(WeightLattice lattice, std::vector<Cone> cones, bool validate = true);

  const WeightLattice& lattice() const { return lat_; }
  const std::vector<Cone>& cones() const { return cones_; }
  std::size_t dim() const { return lat_.dim(); }
  std::vector<IntVector> rays() const;
  bool is_simplicial() const;
  bool is_complete() const;
  bool has_cone(const Cone& c) const;

  bool operator==(const Fan& o) const { return lat_ == o.lat_ && cones_ == o.cones_; }

private:
  WeightLattice lat_;
  std::vector<Cone> cones_;
};

// Throws DomainError when the two cones do not meet in a common face.
void check_common_face(const Cone& a, const Cone& b);

Integer multiplicity(const WeightLattice& lat, const Cone& c);
bool is_smooth(const WeightLattice& lat, const Cone& c);
bool is_smooth_fan(const Fan& f);

// Inward facet normals, primitive in M_G, ordered by the opposite generator.
std::vector<RationalVector> dual_generators(const WeightLattice& lat, const Cone& c);

struct StarResult {
  WeightLattice quotient;
  Fan fan;
};
StarResult star(const Fan& f, const Cone& tau);

Fan starring_subdivision(const Fan& f, const Cone& tau);

Fan envelope_subdivision(const WeightLattice& lat, const Cone& c,
                         const std::vector<RationalVector>& functionals);

Integer euler_characteristic(const Fan& f);

struct DiscrepancyReport {
  std::map<IntVector, Rational> by_ray;
  bool crepant = true;
};
DiscrepancyReport discrepancies(const Fan& refinement);

}  // namespace crepanto

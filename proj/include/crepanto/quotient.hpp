#pragma once

#include <string>
#include <vector>

#include "crepanto/hilbert.hpp"
#include "crepanto/lattice.hpp"

namespace crepanto {

// Type 1/l(a_1,...,a_r) of a small cyclic group.
struct CyclicQuotientType {
  Integer l;
  IntVector weights;

  CyclicQuotientType(Integer order, IntVector w);
  std::size_t dim() const { return weights.size(); }
  WeightLattice lattice() const { return WeightLattice::cyclic(l, weights); }
  std::string to_string() const;
  bool operator==(const CyclicQuotientType& o) const { return l == o.l && weights == o.weights; }
};

CyclicQuotientType parse_type(const std::string& l, const std::string& weights);

bool is_gorenstein(const CyclicQuotientType& t);
bool is_gorenstein(const WeightLattice& lat);
std::size_t splitting_codimension(const CyclicQuotientType& t);
bool is_isolated(const CyclicQuotientType& t);

CyclicQuotientType normal_form(const CyclicQuotientType& t);
bool equivalent(const CyclicQuotientType& a, const CyclicQuotientType& b);

struct JuniorData {
  Integer denominator;
  std::vector<IntVector> vertices;
  std::vector<IntVector> interior;  // all coordinates positive
  std::vector<IntVector> boundary;  // some coordinate zero, not a vertex

  std::vector<IntVector> all() const;  // sorted
  std::size_t count() const { return vertices.size() + interior.size() + boundary.size(); }
};

JuniorData junior_points(const WeightLattice& lat);
JuniorData junior_points(const CyclicQuotientType& t);

struct CriterionResult {
  bool passes = true;
  std::vector<IntVector> violators;
};

CriterionResult necessary_criterion(const WeightLattice& lat);
CriterionResult necessary_criterion(const CyclicQuotientType& t);

struct CohomologyProfile {
  std::vector<Integer> dims;  // dim H^{2i}, i = 0..r-1
  Integer euler;
  bool operator==(const CohomologyProfile& o) const { return dims == o.dims && euler == o.euler; }
};

CohomologyProfile cohomology_cyclic(const CyclicQuotientType& t);
CohomologyProfile cohomology_parallelotope(const WeightLattice& lat);
CohomologyProfile cohomology_3d_closed_form(const CyclicQuotientType& t);

struct VeroneseFlags {
  bool terminal = false;
  bool canonical = false;
  bool gorenstein = false;
};
VeroneseFlags veronese_classify(long l, long r);

Integer embedding_dimension(const WeightLattice& lat);
Integer embedding_dimension(const CyclicQuotientType& t);

}  // namespace crepanto

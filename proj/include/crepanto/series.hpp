#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crepanto/hk.hpp"
#include "crepanto/quotient.hpp"
#include "crepanto/triangulation.hpp"

namespace crepanto {

// The series 1/l(1, ..., 1, l - (r - 1)).
struct SeriesType {
  long l = 0;
  long r = 0;

  SeriesType(long order, long dim);
  long nu() const { return l / (r - 1); }
  long remainder() const { return l % (r - 1); }
  CyclicQuotientType type() const;
  WeightLattice lattice() const;
  // numerator of n^(j) = (j, ..., j, [j (l - r + 1)]_l) / l
  IntVector point(long j) const;
  // numerator of conv(n^(a), n^(b), e_xi) for the xi-th (r-2)-subset of {e_1, ..., e_{r-1}}
  std::vector<std::vector<IntVector>> family(long a, long b) const;
  // conv(n^(j), e_1, ..., e_{r-1})
  std::vector<IntVector> cap(long j) const;
};

LatticeTriangulation build_triangulation(const SeriesType& t);
bool verify_uniqueness(const SeriesType& t);
bool basicness(const SeriesType& t);

// dim H^(2i) counted by floor differences of i l / (r - 1); for basic types this is
// 1, floor(l/(r-1)) (r-2 times), floor((l-1)/(r-1)).
CohomologyProfile series_cohomology(const SeriesType& t);
// Number of maximal cones of the series fan: l when basic, else l - [l]_(r-1) + 1.
long series_euler_number(const SeriesType& t);

enum class DivisorKind { HKBundle, ProjectiveSpace, ProjectiveTimesLine };
std::string to_string(DivisorKind k);

struct DivisorReport {
  long j = 0;
  DivisorKind kind = DivisorKind::HKBundle;
  long lambda = 0;                    // twist of the bundle
  long fiber_dim = 0;                 // dimension of the projective factor
  std::optional<Integer> with_next;   // D_j^(r-1) . D_(j+1)
  std::optional<Integer> next_with;   // D_j . D_(j+1)^(r-1)
  Integer self;                       // D_j^r, corrected closed form
  std::optional<Integer> self_printed;  // the uncorrected exponent base, for comparison
};

// Closed-form report per exceptional divisor; throws for non-basic types.
std::vector<DivisorReport> divisor_reports(const SeriesType& t);

struct DivisorCheck {
  long j = 0;
  std::string detected;
  bool kind_matches = false;
  Integer self_fan;  // D_j^r from the fan (for the non-compact divisor: K^(r-2) of its compact factor)
  std::optional<Integer> with_next_fan;
  std::optional<Integer> next_with_fan;
  bool numbers_match = false;
};
DivisorCheck divisor_kind_check(const SeriesType& t, long j);

// r = 3 table of D_i D_j D_k over exceptional divisors 1..nu.
using IntersectionTable = std::vector<std::vector<std::vector<Integer>>>;
IntersectionTable intersection_table_fan(const SeriesType& t);
IntersectionTable intersection_table_closed(const SeriesType& t);

struct ResidualSingularity {
  Integer multiplicity;         // of the non-basic cone
  bool cyclic = false;
  std::optional<CyclicQuotientType> type;  // from the cone's group, in generator coordinates
  std::string predicted;        // closed-form description
  bool matches_prediction = false;
};
ResidualSingularity residual_singularities(const SeriesType& t);

enum class FactorMode { Speedy, Stepwise };

struct FactorStep {
  std::string center;
  LatticeTriangulation triangulation;
};

struct FactorizationPlan {
  FactorMode mode = FactorMode::Speedy;
  std::vector<FactorStep> steps;
};

FactorizationPlan factorize(const SeriesType& t, FactorMode mode);
// Step counts predicted by the closed formulas.
long speedy_step_count(const SeriesType& t);
long stepwise_step_count(const SeriesType& t);

// Every simplex of b lies in a simplex of a.
bool refines(const LatticeTriangulation& b, const LatticeTriangulation& a);

}  // namespace crepanto

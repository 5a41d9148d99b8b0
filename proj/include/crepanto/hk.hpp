#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crepanto/lattice.hpp"

namespace crepanto {

// Parameters (r; lambda_1, ..., lambda_k) of a Hirzebruch-Kleinschmidt variety.
struct HKParams {
  long r = 0;
  std::vector<long> twists;

  long k() const { return static_cast<long>(twists.size()); }
  long s() const { return r - k(); }
  std::string to_string() const;
  bool operator==(const HKParams& o) const { return r == o.r && twists == o.twists; }
};

// Sorted twists; an untwisted product P^k x P^s is labeled with k <= s.
HKParams canonical_params(HKParams p);

struct HKVariety {
  HKParams params;
  std::vector<IntVector> base;   // n_1, ..., n_{k+1}, summing to zero
  std::vector<IntVector> fiber;  // n'_1, ..., n'_{s+1}, summing to sum lambda_i n_i
  Fan fan;
};

HKVariety build_hk_fan(long r, std::vector<long> twists);

// Throws DomainError unless the fan is complete and smooth.
std::vector<std::vector<IntVector>> primitive_collections(const Fan& f);

std::optional<HKParams> detect_hk(const Fan& f);

enum class StarKind { ProjectiveSpace, HKBundle, ProjectiveTimesLine, Other };

struct StarClass {
  StarKind kind = StarKind::Other;
  long dim = 0;
  std::optional<HKParams> hk;
  std::string to_string() const;
};

StarClass classify_star(const Fan& f);

// K^r of Y(r; lambda) from the closed formula.
Integer canonical_self_intersection(long r, long lambda);
// E^r = lambda^(r-1).
Integer e_divisor_self_intersection(long r, long lambda);
Integer ews_embedding_dimension(long r, const std::vector<long>& twists);

// Intersection number of V(rho) over a multiset of rays of a smooth fan; the product must be compact.
Integer intersection_number(const Fan& f, const std::vector<IntVector>& rays);
// K^d of a complete smooth d-dimensional fan.
Integer canonical_degree(const Fan& f);

}  // namespace crepanto

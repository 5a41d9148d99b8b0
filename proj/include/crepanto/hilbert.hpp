#pragma once

#include <map>
#include <utility>
#include <vector>

#include "crepanto/lattice.hpp"

namespace crepanto {

struct HilbertBasis {
  WeightLattice lattice;
  std::vector<IntVector> elements;  // numerators over the lattice denominator, sorted
  // reducible candidate -> (basis element h, remainder x - h)
  std::map<IntVector, std::pair<IntVector, IntVector>> witnesses;

  bool contains(const IntVector& num) const;
};

std::vector<IntVector> group_residues(const WeightLattice& lat);

// Hilbert basis of the orthant in N_G.
HilbertBasis hilbert_basis_orthant(const WeightLattice& lat);

// Hilbert basis of the dual orthant in M_G, as integer vectors.
std::vector<IntVector> dual_hilbert_basis(const WeightLattice& lat);

}  // namespace crepanto

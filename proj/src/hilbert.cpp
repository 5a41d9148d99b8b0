#include "crepanto/hilbert.hpp"

#include <algorithm>

#include "crepanto/guard.hpp"

namespace crepanto {

namespace {

constexpr std::size_t kDualBoxGuard = 2000000;

bool dominated(const IntVector& h, const IntVector& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (h[i] > x[i]) return false;
  return true;
}

bool by_weight(const IntVector& a, const IntVector& b) {
  Integer sa = sum_of(a), sb = sum_of(b);
  return sa != sb ? sa < sb : a < b;
}

// Irreducible candidates of a simplicial orthant-type monoid. Every candidate is a
// monoid element; anything reducible has an irreducible summand of smaller weight.
std::vector<IntVector> filter_irreducible(std::vector<IntVector> cand,
                                          std::map<IntVector, std::pair<IntVector, IntVector>>* witnesses) {
  std::sort(cand.begin(), cand.end(), by_weight);
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::vector<IntVector> basis;
  for (const auto& x : cand) {
    const IntVector* hit = nullptr;
    for (const auto& h : basis)
      if (h != x && dominated(h, x)) {
        hit = &h;
        break;
      }
    if (hit) {
      if (witnesses) (*witnesses)[x] = {*hit, sub(x, *hit)};
    } else {
      basis.push_back(x);
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace

bool HilbertBasis::contains(const IntVector& num) const {
  return std::binary_search(elements.begin(), elements.end(), num);
}

std::vector<IntVector> group_residues(const WeightLattice& lat) { return lat.residues(); }

HilbertBasis hilbert_basis_orthant(const WeightLattice& lat) {
  std::vector<IntVector> cand;
  for (std::size_t i = 0; i < lat.dim(); ++i) cand.push_back(lat.unit(i));
  for (const auto& v : lat.residues())
    if (gcd_of(v) != 0) cand.push_back(v);
  HilbertBasis hb;
  hb.lattice = lat;
  hb.elements = filter_irreducible(cand, &hb.witnesses);
  return hb;
}

std::vector<IntVector> dual_hilbert_basis(const WeightLattice& lat) {
  const std::size_t r = lat.dim();
  const Integer& L = lat.denominator();
  // m lies in M_G iff <m, g> is integral for every group generator g.
  std::vector<IntVector> gens;
  for (const auto& f : lat.factors()) gens.push_back(scale(f.weights, L / f.order));
  auto in_dual = [&](const IntVector& m) {
    for (const auto& g : gens)
      if (!mpz_divisible_p(Integer(dot(m, g)).get_mpz_t(), L.get_mpz_t())) return false;
    return true;
  };
  IntVector d(r);
  std::size_t box = 1;
  for (std::size_t i = 0; i < r; ++i) {
    d[i] = 1;
    for (const auto& g : gens) {
      Integer q;
      mpz_gcd(q.get_mpz_t(), L.get_mpz_t(), g[i].get_mpz_t());
      Integer t = L / q;
      mpz_lcm(d[i].get_mpz_t(), d[i].get_mpz_t(), t.get_mpz_t());
    }
    box *= d[i].get_ui();
    check_guard(box, kDualBoxGuard, "dual parallelotope");
  }
  std::vector<IntVector> cand;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, 0);
    e[i] = d[i];
    cand.push_back(e);
  }
  IntVector m(r, 0);
  for (;;) {
    if (gcd_of(m) != 0 && in_dual(m)) cand.push_back(m);
    std::size_t i = 0;
    while (i < r) {
      if (++m[i] < d[i]) break;
      m[i] = 0;
      ++i;
    }
    if (i == r) break;
  }
  return filter_irreducible(cand, nullptr);
}

}  // namespace crepanto

#include "crepanto/quotient.hpp"

#include <algorithm>
#include <sstream>

namespace crepanto {

CyclicQuotientType::CyclicQuotientType(Integer order, IntVector w) : l(std::move(order)), weights(std::move(w)) {
  if (l < 2) throw DomainError("group order must be at least 2");
  if (weights.size() < 2) throw DomainError("dimension must be at least 2");
  std::size_t nonzero = 0;
  for (const auto& a : weights) {
    if (a < 0 || a >= l) throw DomainError("weights must lie in [0, l)");
    if (a != 0) ++nonzero;
  }
  if (nonzero < 2) throw DomainError("at least two weights must be nonzero");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    Integer g = l;
    for (std::size_t j = 0; j < weights.size(); ++j)
      if (j != i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), weights[j].get_mpz_t());
    if (g != 1) throw DomainError("group is not small");
  }
}

std::string CyclicQuotientType::to_string() const {
  std::string s = "1/" + l.get_str() + "(";
  for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + weights[i].get_str();
  return s + ")";
}

CyclicQuotientType parse_type(const std::string& l, const std::string& weights) {
  Integer order;
  if (l.empty() || order.set_str(l, 10) != 0) throw std::invalid_argument("malformed order: " + l);
  IntVector w;
  std::stringstream ss(weights);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Integer a;
    if (item.empty() || a.set_str(item, 10) != 0) throw std::invalid_argument("malformed weights: " + weights);
    w.push_back(a);
  }
  return CyclicQuotientType(order, w);
}

bool is_gorenstein(const CyclicQuotientType& t) {
  return mpz_divisible_p(sum_of(t.weights).get_mpz_t(), t.l.get_mpz_t()) != 0;
}

bool is_gorenstein(const WeightLattice& lat) {
  for (const auto& v : lat.residues())
    if (!mpz_divisible_p(sum_of(v).get_mpz_t(), lat.denominator().get_mpz_t())) return false;
  return true;
}

std::size_t splitting_codimension(const CyclicQuotientType& t) {
  return static_cast<std::size_t>(std::count_if(t.weights.begin(), t.weights.end(), [](const Integer& a) { return a != 0; }));
}

bool is_isolated(const CyclicQuotientType& t) {
  for (const auto& a : t.weights) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), t.l.get_mpz_t());
    if (g != 1) return false;
  }
  return true;
}

CyclicQuotientType normal_form(const CyclicQuotientType& t) {
  IntVector best;
  for (Integer lam = 1; lam < t.l; ++lam) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), lam.get_mpz_t(), t.l.get_mpz_t());
    if (g != 1) continue;
    IntVector w(t.weights.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = floor_mod(lam * t.weights[i], t.l);
    std::sort(w.begin(), w.end());
    if (best.empty() || w < best) best = w;
  }
  return CyclicQuotientType(t.l, best);
}

bool equivalent(const CyclicQuotientType& a, const CyclicQuotientType& b) {
  return a.l == b.l && a.dim() == b.dim() && normal_form(a) == normal_form(b);
}

std::vector<IntVector> JuniorData::all() const {
  std::vector<IntVector> out = vertices;
  out.insert(out.end(), interior.begin(), interior.end());
  out.insert(out.end(), boundary.begin(), boundary.end());
  std::sort(out.begin(), out.end());
  return out;
}

JuniorData junior_points(const WeightLattice& lat) {
  if (!is_gorenstein(lat)) throw DomainError("junior points need a Gorenstein type");
  JuniorData jd;
  jd.denominator = lat.denominator();
  for (std::size_t i = 0; i < lat.dim(); ++i) jd.vertices.push_back(lat.unit(i));
  std::sort(jd.vertices.begin(), jd.vertices.end());
  for (const auto& v : lat.residues()) {
    if (sum_of(v) != lat.denominator()) continue;
    bool interior = std::all_of(v.begin(), v.end(), [](const Integer& x) { return x > 0; });
    (interior ? jd.interior : jd.boundary).push_back(v);
  }
  return jd;
}

JuniorData junior_points(const CyclicQuotientType& t) {
  if (!is_gorenstein(t)) throw DomainError("junior points need a Gorenstein type");
  return junior_points(t.lattice());
}

CriterionResult necessary_criterion(const WeightLattice& lat) {
  if (!is_gorenstein(lat)) throw DomainError("the criterion needs a Gorenstein type");
  CriterionResult res;
  for (const auto& h : hilbert_basis_orthant(lat).elements)
    if (sum_of(h) != lat.denominator()) res.violators.push_back(h);
  res.passes = res.violators.empty();
  return res;
}

CriterionResult necessary_criterion(const CyclicQuotientType& t) { return necessary_criterion(t.lattice()); }

CohomologyProfile cohomology_cyclic(const CyclicQuotientType& t) {
  if (!is_gorenstein(t)) throw DomainError("cohomology formulas need a Gorenstein type");
  CohomologyProfile p;
  p.dims.assign(t.dim(), 0);
  for (Integer lam = 0; lam < t.l; ++lam) {
    Integer s = 0;
    for (const auto& a : t.weights) s += floor_mod(lam * a, t.l);
    Integer i = s / t.l;
    p.dims[i.get_ui()] += 1;
  }
  p.euler = 0;
  for (const auto& d : p.dims) p.euler += d;
  return p;
}

CohomologyProfile cohomology_parallelotope(const WeightLattice& lat) {
  if (!is_gorenstein(lat)) throw DomainError("cohomology formulas need a Gorenstein type");
  CohomologyProfile p;
  p.dims.assign(lat.dim(), 0);
  for (const auto& v : lat.residues()) {
    Integer i = sum_of(v) / lat.denominator();
    p.dims[i.get_ui()] += 1;
  }
  p.euler = 0;
  for (const auto& d : p.dims) p.euler += d;
  return p;
}

CohomologyProfile cohomology_3d_closed_form(const CyclicQuotientType& t) {
  if (t.dim() != 3) throw DomainError("closed form needs r = 3");
  if (!is_gorenstein(t)) throw DomainError("cohomology formulas need a Gorenstein type");
  Integer g = 0;
  for (const auto& a : t.weights) {
    Integer x;
    mpz_gcd(x.get_mpz_t(), a.get_mpz_t(), t.l.get_mpz_t());
    g += x;
  }
  CohomologyProfile p;
  p.dims = {Integer(1), Integer((t.l + g) / 2 - 2), Integer((t.l - g) / 2 + 1)};
  p.euler = p.dims[0] + p.dims[1] + p.dims[2];
  return p;
}

VeroneseFlags veronese_classify(long l, long r) {
  if (l < 2 || r < 2) throw DomainError("Veronese type needs l, r >= 2");
  return {r > l, r >= l, r % l == 0};
}

Integer embedding_dimension(const WeightLattice& lat) {
  return Integer(static_cast<unsigned long>(dual_hilbert_basis(lat).size()));
}

Integer embedding_dimension(const CyclicQuotientType& t) { return embedding_dimension(t.lattice()); }

}  // namespace crepanto

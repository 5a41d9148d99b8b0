#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crepanto {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

// Raised for inputs outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
  static RationalMatrix from_int_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RationalVector row(std::size_t i) const;
  RationalMatrix transposed() const;
  bool is_integral() const;
  std::vector<IntVector> to_int_rows() const;

  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalVector operator*(const RationalVector& v) const;
  bool operator==(const RationalMatrix& o) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

Rational det(const RationalMatrix& m);
Integer det(const std::vector<IntVector>& rows);

std::optional<RationalVector> solve_linear(const RationalMatrix& a, const RationalVector& b);

std::size_t rank(const RationalMatrix& m);
std::size_t rank(const std::vector<IntVector>& rows);

// Basis of {x : m x = 0}, integral and primitive.
std::vector<IntVector> kernel(const std::vector<IntVector>& rows, std::size_t cols);

struct HermiteForm {
  RationalMatrix h;
  RationalMatrix u;
};

// Row style: h = u m, pivots positive, entries above a pivot in [0, pivot).
HermiteForm hermite_normal_form(const RationalMatrix& m);

struct IntHermite {
  std::vector<IntVector> h;
  std::vector<IntVector> u;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
IntHermite hermite_normal_form(const std::vector<IntVector>& m);

bool lattice_membership(const RationalVector& v, const RationalMatrix& basis);

// Integer coordinates of v in the row lattice of an integer HNF, if any.
std::optional<IntVector> solve_in_hnf(const IntHermite& hnf, IntVector v);

Integer gcd_of(const IntVector& v);
Integer lcm_of_denominators(const RationalVector& v);
IntVector primitive_vector(const IntVector& v);
Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);
Integer sum_of(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const IntVector& a, const Integer& k);
RationalVector to_rational(const IntVector& v);
IntVector int_vector(std::initializer_list<long> xs);
Integer floor_mod(const Integer& a, const Integer& m);
Integer binomial(long n, long k);

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(const IntVector& v);
Rational parse_rational(const std::string& s);

}  // namespace crepanto

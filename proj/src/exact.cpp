#include "crepanto/exact.hpp"

#include <algorithm>
#include <utility>

namespace crepanto {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  RationalMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::from_int_rows(const std::vector<IntVector>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  RationalMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalVector RationalMatrix::row(std::size_t i) const {
  return RationalVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RationalMatrix::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

std::vector<IntVector> RationalMatrix::to_int_rows() const {
  if (!is_integral()) throw DomainError("matrix has non-integer entries");
  std::vector<IntVector> out(rows_, IntVector(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).get_num();
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw DomainError("dimension mismatch in matrix product");
  RationalMatrix p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += x * o(k, j);
    }
  return p;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (cols_ != v.size()) throw DomainError("dimension mismatch in matrix-vector product");
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Integer det(const std::vector<IntVector>& rows) {
  std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw DomainError("determinant of a non-square matrix");
  if (n == 0) return 1;
  std::vector<IntVector> m = rows;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t i = k + 1;
      while (i < n && m[i][k] == 0) ++i;
      if (i == n) return 0;
      std::swap(m[i], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Rational det(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  std::size_t n = m.rows();
  std::vector<IntVector> rows(n, IntVector(n));
  Integer scale_total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = lcm_of_denominators(m.row(i));
    scale_total *= d;
    for (std::size_t j = 0; j < n; ++j) {
      Rational x = m(i, j) * d;
      rows[i][j] = x.get_num();
    }
  }
  Rational out(det(rows), scale_total);
  out.canonicalize();
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RationalVector>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < a[i].size(); ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<RationalVector> solve_linear(const RationalMatrix& a, const RationalVector& b) {
  if (a.rows() != b.size()) throw DomainError("dimension mismatch in solve_linear");
  std::size_t n = a.cols();
  std::vector<RationalVector> aug(a.rows(), RationalVector(n + 1));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a(i, j);
    aug[i][n] = b[i];
  }
  auto pivots = rref(aug, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  RationalVector x(n);
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug[k][n];
  return x;
}

std::size_t rank(const RationalMatrix& m) {
  std::vector<RationalVector> a;
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(m.row(i));
  return rref(a, m.cols()).size();
}

std::size_t rank(const std::vector<IntVector>& rows) {
  if (rows.empty()) return 0;
  return rank(RationalMatrix::from_int_rows(rows));
}

std::vector<IntVector> kernel(const std::vector<IntVector>& rows, std::size_t cols) {
  std::vector<RationalVector> a;
  for (const auto& r : rows) a.push_back(to_rational(r));
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<IntVector> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector x(cols);
    x[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -a[k][f];
    Integer d = lcm_of_denominators(x);
    IntVector v(cols);
    for (std::size_t j = 0; j < cols; ++j) v[j] = Rational(x[j] * d).get_num();
    out.push_back(primitive_vector(v));
  }
  return out;
}

namespace {

void row_axpy(std::vector<IntVector>& m, std::size_t dst, const Integer& q, std::size_t src) {
  for (std::size_t j = 0; j < m[dst].size(); ++j)
    if (m[src][j] != 0) m[dst][j] -= q * m[src][j];
}

}  // namespace

IntHermite hermite_normal_form(const std::vector<IntVector>& m) {
  std::size_t n = m.size();
  std::size_t c = n ? m[0].size() : 0;
  IntHermite out;
  out.h = m;
  out.u.assign(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) out.u[i][i] = 1;
  auto& h = out.h;
  auto& u = out.u;
  std::size_t p = 0;
  for (std::size_t col = 0; col < c && p < n; ++col) {
    bool found = false;
    for (;;) {
      std::size_t best = n;
      for (std::size_t i = p; i < n; ++i)
        if (h[i][col] != 0 && (best == n || abs(h[i][col]) < abs(h[best][col]))) best = i;
      if (best == n) break;
      found = true;
      std::swap(h[best], h[p]);
      std::swap(u[best], u[p]);
      bool clean = true;
      for (std::size_t i = p + 1; i < n; ++i) {
        if (h[i][col] == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), h[i][col].get_mpz_t(), h[p][col].get_mpz_t());
        row_axpy(h, i, q, p);
        row_axpy(u, i, q, p);
        if (h[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (!found) continue;
    if (h[p][col] < 0) {
      for (auto& x : h[p]) x = -x;
      for (auto& x : u[p]) x = -x;
    }
    for (std::size_t i = 0; i < p; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h[i][col].get_mpz_t(), h[p][col].get_mpz_t());
      if (q == 0) continue;
      row_axpy(h, i, q, p);
      row_axpy(u, i, q, p);
    }
    out.pivots.push_back(col);
    ++p;
  }
  return out;
}

HermiteForm hermite_normal_form(const RationalMatrix& m) {
  auto r = hermite_normal_form(m.to_int_rows());
  HermiteForm out;
  out.h = m.rows() ? RationalMatrix::from_int_rows(r.h) : RationalMatrix(0, m.cols());
  out.u = RationalMatrix::from_int_rows(r.u);
  if (m.rows() == 0) out.u = RationalMatrix(0, 0);
  return out;
}

std::optional<IntVector> solve_in_hnf(const IntHermite& hnf, IntVector v) {
  IntVector x(hnf.pivots.size());
  for (std::size_t k = 0; k < hnf.pivots.size(); ++k) {
    std::size_t col = hnf.pivots[k];
    if (v[col] == 0) continue;
    if (!mpz_divisible_p(v[col].get_mpz_t(), hnf.h[k][col].get_mpz_t())) return std::nullopt;
    Integer q;
    mpz_divexact(q.get_mpz_t(), v[col].get_mpz_t(), hnf.h[k][col].get_mpz_t());
    x[k] = q;
    for (std::size_t j = col; j < v.size(); ++j)
      if (hnf.h[k][j] != 0) v[j] -= q * hnf.h[k][j];
  }
  for (const auto& y : v)
    if (y != 0) return std::nullopt;
  return x;
}

bool lattice_membership(const RationalVector& v, const RationalMatrix& basis) {
  if (basis.cols() != v.size()) throw DomainError("dimension mismatch in lattice_membership");
  Integer d = lcm_of_denominators(v);
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    Integer e = lcm_of_denominators(basis.row(i));
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
  }
  std::vector<IntVector> rows(basis.rows(), IntVector(basis.cols()));
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) rows[i][j] = Rational(basis(i, j) * d).get_num();
  auto hnf = hermite_normal_form(rows);
  if (hnf.pivots.size() < v.size()) throw DomainError("rank-deficient basis");
  IntVector w(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) w[j] = Rational(v[j] * d).get_num();
  return solve_in_hnf(hnf, w).has_value();
}

Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Integer lcm_of_denominators(const RationalVector& v) {
  Integer d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

IntVector primitive_vector(const IntVector& v) {
  Integer g = gcd_of(v);
  if (g == 0) throw DomainError("zero vector has no primitive multiple");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer sum_of(const IntVector& v) {
  Integer s = 0;
  for (const auto& x : v) s += x;
  return s;
}

IntVector add(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVector scale(const IntVector& a, const Integer& k) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * k;
  return out;
}

RationalVector to_rational(const IntVector& v) { return RationalVector(v.begin(), v.end()); }

IntVector int_vector(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw DomainError("malformed rational: " + s);
  if (q.get_den() == 0) throw DomainError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace crepanto

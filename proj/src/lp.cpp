#include "crepanto/lp.hpp"

namespace crepanto {

void LinearProgram::add_row(RationalVector coeffs, Relation rel, Rational b) {
  if (coeffs.size() != num_vars) throw DomainError("LP row has wrong length");
  rows.push_back(std::move(coeffs));
  relations.push_back(rel);
  rhs.push_back(std::move(b));
}

namespace {

struct Tableau {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<RationalVector> t;
  RationalVector obj;  // reduced costs, obj[n] = -value
  std::vector<std::size_t> basis;

  void pivot(std::size_t p, std::size_t q) {
    Rational inv = 1 / t[p][q];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= n; ++j) {
      if (t[p][j] == 0) continue;
      t[p][j] *= inv;
      nz.push_back(j);
    }
    auto eliminate = [&](RationalVector& row) {
      if (row[q] == 0) return;
      Rational f = row[q];
      for (auto j : nz) row[j] -= f * t[p][j];
    };
    for (std::size_t i = 0; i < m; ++i)
      if (i != p) eliminate(t[i]);
    eliminate(obj);
    basis[p] = q;
  }

  // false when unbounded
  bool run(const std::vector<bool>& allowed) {
    std::size_t degenerate = 0;
    for (;;) {
      bool bland = degenerate > 24;
      std::size_t q = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (!allowed[j] || obj[j] <= 0) continue;
        if (bland) {
          q = j;
          break;
        }
        if (q == n || obj[j] > obj[q]) q = j;
      }
      if (q == n) return true;
      std::size_t p = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][q] <= 0) continue;
        Rational ratio = t[i][n] / t[i][q];
        if (p == m || ratio < best || (ratio == best && basis[i] < basis[p])) {
          p = i;
          best = ratio;
        }
      }
      if (p == m) return false;
      degenerate = (best == 0) ? degenerate + 1 : 0;
      pivot(p, q);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t nv = lp.num_vars;
  const std::size_t m = lp.rows.size();
  auto is_free = [&](std::size_t v) { return !lp.free_vars.empty() && lp.free_vars[v]; };

  std::vector<std::size_t> pos_col(nv), neg_col(nv, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    pos_col[v] = ncols++;
    if (is_free(v)) neg_col[v] = ncols++;
  }

  std::vector<int> sign(m, 1);
  std::vector<Relation> rel(m);
  for (std::size_t i = 0; i < m; ++i) {
    rel[i] = lp.relations[i];
    if (lp.rhs[i] < 0) {
      sign[i] = -1;
      if (rel[i] == Relation::LessEq) rel[i] = Relation::GreaterEq;
      else if (rel[i] == Relation::GreaterEq) rel[i] = Relation::LessEq;
    }
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX), id_col(m);
  for (std::size_t i = 0; i < m; ++i)
    if (rel[i] != Relation::Equal) slack_col[i] = ncols++;
  const std::size_t first_art = ncols;
  for (std::size_t i = 0; i < m; ++i)
    if (rel[i] != Relation::LessEq) art_col[i] = ncols++;

  Tableau tb;
  tb.m = m;
  tb.n = ncols;
  tb.t.assign(m, RationalVector(ncols + 1));
  tb.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = tb.t[i];
    for (std::size_t v = 0; v < nv; ++v) {
      Rational a = lp.rows[i][v] * sign[i];
      row[pos_col[v]] = a;
      if (neg_col[v] != SIZE_MAX) row[neg_col[v]] = -a;
    }
    row[ncols] = lp.rhs[i] * sign[i];
    if (rel[i] == Relation::LessEq) {
      row[slack_col[i]] = 1;
      id_col[i] = slack_col[i];
    } else {
      if (rel[i] == Relation::GreaterEq) row[slack_col[i]] = -1;
      row[art_col[i]] = 1;
      id_col[i] = art_col[i];
    }
    tb.basis[i] = id_col[i];
  }

  LpResult res;
  std::vector<bool> removed(m, false);
  std::vector<std::size_t> row_origin(m);
  for (std::size_t i = 0; i < m; ++i) row_origin[i] = i;

  if (first_art < ncols) {
    tb.obj.assign(ncols + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (art_col[i] == SIZE_MAX) continue;
      for (std::size_t j = 0; j <= ncols; ++j)
        if (j < first_art || j == ncols) tb.obj[j] += tb.t[i][j];
    }
    std::vector<bool> allowed(ncols, true);
    tb.run(allowed);
    if (tb.obj[ncols] != 0) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    for (std::size_t i = 0; i < tb.m;) {
      if (tb.basis[i] < first_art) {
        ++i;
        continue;
      }
      std::size_t q = first_art;
      for (std::size_t j = 0; j < first_art; ++j)
        if (tb.t[i][j] != 0) {
          q = j;
          break;
        }
      if (q < first_art) {
        tb.pivot(i, q);
        ++i;
      } else {
        removed[row_origin[i]] = true;
        tb.t.erase(tb.t.begin() + static_cast<std::ptrdiff_t>(i));
        tb.basis.erase(tb.basis.begin() + static_cast<std::ptrdiff_t>(i));
        row_origin.erase(row_origin.begin() + static_cast<std::ptrdiff_t>(i));
        --tb.m;
      }
    }
  }

  RationalVector cost(ncols, 0);
  for (std::size_t v = 0; v < nv && v < lp.objective.size(); ++v) {
    cost[pos_col[v]] = lp.objective[v];
    if (neg_col[v] != SIZE_MAX) cost[neg_col[v]] = -lp.objective[v];
  }
  tb.obj.assign(ncols + 1, 0);
  for (std::size_t j = 0; j < ncols; ++j) tb.obj[j] = cost[j];
  for (std::size_t i = 0; i < tb.m; ++i) {
    const Rational& cb = cost[tb.basis[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j <= ncols; ++j)
      if (tb.t[i][j] != 0) tb.obj[j] -= cb * tb.t[i][j];
  }
  std::vector<bool> allowed(ncols, true);
  for (std::size_t j = first_art; j < ncols; ++j) allowed[j] = false;
  if (!tb.run(allowed)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  RationalVector colval(ncols, 0);
  for (std::size_t i = 0; i < tb.m; ++i) colval[tb.basis[i]] = tb.t[i][ncols];
  res.status = LpStatus::Optimal;
  res.value = -tb.obj[ncols];
  res.x.assign(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    res.x[v] = colval[pos_col[v]];
    if (neg_col[v] != SIZE_MAX) res.x[v] -= colval[neg_col[v]];
  }
  res.duals.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (!removed[i]) res.duals[i] = -tb.obj[id_col[i]] * sign[i];
  return res;
}

bool is_feasible(const LinearProgram& lp) {
  LinearProgram q = lp;
  q.objective.clear();
  return solve_lp(q).status != LpStatus::Infeasible;
}

}  // namespace crepanto

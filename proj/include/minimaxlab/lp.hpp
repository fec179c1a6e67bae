#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "minimaxlab/core.hpp"

// Dense two-phase primal simplex and the zero-sum matrix game solver built
// on top of it. Small instances, determinism over speed: Bland's rule
// everywhere, ties broken by lowest index, fixed pivot tolerance.

namespace minimaxlab {

inline constexpr double kPivotTol = 1e-10;

enum class RowSense { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class LpDirection { Minimize, Maximize };

struct LpProblem {
  LpDirection direction = LpDirection::Minimize;
  std::vector<double> objective;                  // length nvars
  std::vector<std::vector<double>> rows;          // nrows x nvars
  std::vector<double> rhs;                        // length nrows
  std::vector<RowSense> senses;                   // length nrows
  std::vector<double> lower;                      // empty => all 0
  std::vector<double> upper;                      // empty => all +inf

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }

  double lower_bound(std::size_t j) const {
    return lower.empty() ? 0.0 : lower[j];
  }
  double upper_bound(std::size_t j) const {
    return upper.empty() ? kInf : upper[j];
  }

  void validate() const {
    const std::size_t n = num_vars(), m = num_rows();
    if (n == 0) fail(Errc::DimensionMismatch, "problem has no variables");
    if (rhs.size() != m || senses.size() != m)
      fail(Errc::DimensionMismatch, "rhs/senses length does not match rows");
    if (!lower.empty() && lower.size() != n)
      fail(Errc::DimensionMismatch, "lower bounds length mismatch");
    if (!upper.empty() && upper.size() != n)
      fail(Errc::DimensionMismatch, "upper bounds length mismatch");
    for (double c : objective)
      if (!std::isfinite(c)) fail(Errc::NonFiniteEntry, "objective coefficient");
    for (std::size_t i = 0; i < m; ++i) {
      if (rows[i].size() != n)
        fail(Errc::DimensionMismatch, "row " + std::to_string(i) + " length mismatch");
      for (double a : rows[i])
        if (!std::isfinite(a)) fail(Errc::NonFiniteEntry, "constraint coefficient");
      if (!std::isfinite(rhs[i])) fail(Errc::NonFiniteEntry, "rhs entry");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double l = lower_bound(j), u = upper_bound(j);
      if (std::isnan(l) || std::isnan(u) || l == kInf || u == -kInf)
        fail(Errc::NonFiniteEntry, "variable bound");
    }
  }
};

/// Duals follow the sensitivity convention: dual[i] is the derivative of
/// the optimal objective (in the problem's own direction) with respect to
/// rhs[i].
struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  std::vector<double> primal;
  std::vector<double> dual;
  double objective_value = 0.0;
};

namespace detail {

// Solves A x = b by Gaussian elimination with partial pivoting. A is n x n
// row-major and is consumed.
inline std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b,
                                       std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a[perm[k] * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a[perm[i] * n + k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= 0.0) fail(Errc::CycleLimitExceeded, "singular basis matrix");
    std::swap(perm[k], perm[piv]);
    const double pivot = a[perm[k] * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = a[perm[i] * n + k] / pivot;
      if (factor == 0.0) continue;
      a[perm[i] * n + k] = 0.0;
      for (std::size_t j = k + 1; j < n; ++j)
        a[perm[i] * n + j] -= factor * a[perm[k] * n + j];
      b[perm[i]] -= factor * b[perm[k]];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[perm[k]];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[perm[k] * n + j] * x[j];
    x[k] = s / a[perm[k] * n + k];
  }
  return x;
}

// LU factorization with partial pivoting (PA = LU, multipliers stored in
// place, permutation-indexed) supporting solves against A and A^T from the
// same factor.
struct LuFactor {
  std::size_t n = 0;
  std::vector<double> f;
  std::vector<std::size_t> perm;
  bool ok = true;

  LuFactor(std::vector<double> m, std::size_t dim)
      : n(dim), f(std::move(m)), perm(dim) {
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      double best = std::abs(f[perm[k] * n + k]);
      for (std::size_t i = k + 1; i < n; ++i) {
        const double v = std::abs(f[perm[i] * n + k]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (best <= 0.0) {
        ok = false;
        return;
      }
      std::swap(perm[k], perm[piv]);
      const double pivot = f[perm[k] * n + k];
      for (std::size_t i = k + 1; i < n; ++i) {
        const double factor = f[perm[i] * n + k] / pivot;
        f[perm[i] * n + k] = factor;
        if (factor == 0.0) continue;
        for (std::size_t j = k + 1; j < n; ++j)
          f[perm[i] * n + j] -= factor * f[perm[k] * n + j];
      }
    }
  }

  // x with A x = b.
  std::vector<double> solve(const std::vector<double>& b) const {
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = b[perm[i]];
      for (std::size_t k = 0; k < i; ++k) s -= f[perm[i] * n + k] * y[k];
      y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = y[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= f[perm[i] * n + j] * x[j];
      x[i] = s / f[perm[i] * n + i];
    }
    return x;
  }

  // y with A^T y = c.
  std::vector<double> solve_transposed(const std::vector<double>& c) const {
    std::vector<double> v(n), w(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = c[i];
      for (std::size_t k = 0; k < i; ++k) s -= f[perm[k] * n + i] * v[k];
      v[i] = s / f[perm[i] * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = v[i];
      for (std::size_t k = i + 1; k < n; ++k) s -= f[perm[k] * n + i] * w[k];
      w[i] = s;
    }
    for (std::size_t i = 0; i < n; ++i) y[perm[i]] = w[i];
    return y;
  }
};

// Standard-form tableau shared by both simplex phases.
struct Tableau {
  std::size_t nrows = 0;
  std::size_t ncols = 0;
  std::vector<double> a;     // nrows x ncols, current (B^-1 A)
  std::vector<double> rhs;   // nrows, current (B^-1 b), kept >= 0
  std::vector<double> dcost; // ncols, reduced costs of current phase
  std::vector<std::size_t> basis;  // basic column per row

  double& at(std::size_t i, std::size_t j) { return a[i * ncols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * ncols + j]; }

  void pivot(std::size_t prow, std::size_t pcol) {
    const double p = at(prow, pcol);
    const double inv = 1.0 / p;
    for (std::size_t j = 0; j < ncols; ++j) at(prow, j) *= inv;
    rhs[prow] *= inv;
    at(prow, pcol) = 1.0;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == prow) continue;
      const double f = at(i, pcol);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < ncols; ++j) at(i, j) -= f * at(prow, j);
      at(i, pcol) = 0.0;
      rhs[i] -= f * rhs[prow];
      if (rhs[i] < 0.0 && rhs[i] > -1e-30) rhs[i] = 0.0;
    }
    const double fd = dcost[pcol];
    if (fd != 0.0) {
      for (std::size_t j = 0; j < ncols; ++j) dcost[j] -= fd * at(prow, j);
      dcost[pcol] = 0.0;
    }
    basis[prow] = pcol;
  }

  // Bland: entering column is the lowest index with reduced cost below
  // -kPivotTol; leaving row is the min-ratio row, ties by lowest basic
  // index. Returns false on optimality, throws on the iteration cap.
  bool step(std::size_t first_banned_col, std::size_t& iterations,
            std::size_t iteration_cap, bool& unbounded) {
    std::size_t enter = ncols;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (j >= first_banned_col) break;
      if (dcost[j] < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter == ncols) return false;
    std::size_t leave = nrows;
    double best_ratio = kInf;
    for (std::size_t i = 0; i < nrows; ++i) {
      const double aij = at(i, enter);
      if (aij > kPivotTol) {
        const double ratio = rhs[i] / aij;
        if (ratio < best_ratio ||
            (ratio == best_ratio && leave != nrows && basis[i] < basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == nrows) {
      unbounded = true;
      return false;
    }
    pivot(leave, enter);
    if (++iterations > iteration_cap)
      fail(Errc::CycleLimitExceeded,
           "simplex iteration cap reached (" + std::to_string(iteration_cap) + ")");
    return true;
  }
};

}  // namespace detail

/// Two-phase primal simplex over a dense tableau. Variable bounds are
/// reduced to the nonnegative standard form by shifting, reflection or
/// splitting; finite upper bounds become appended rows.
inline LpSolution solve_lp(const LpProblem& problem, const Tolerance& tol) {
  problem.validate();
  tol.validate();

  const std::size_t nvars = problem.num_vars();
  const std::size_t nuser_rows = problem.num_rows();

  // Quick infeasibility from crossed bounds.
  for (std::size_t j = 0; j < nvars; ++j)
    if (problem.lower_bound(j) > problem.upper_bound(j))
      return LpSolution{LpStatus::Infeasible, {}, {}, 0.0};

  // Variable transforms to x' >= 0.
  enum class VarKind { Shifted, Reflected, Split };
  struct VarMap {
    VarKind kind;
    double offset;    // x = offset + sign * x'  (Shifted/Reflected)
    double sign;
    std::size_t col;  // structural column (first of two when Split)
  };
  std::vector<VarMap> vmap(nvars);
  std::size_t nstruct = 0;
  for (std::size_t j = 0; j < nvars; ++j) {
    const double l = problem.lower_bound(j), u = problem.upper_bound(j);
    if (l > -kInf) {
      vmap[j] = {VarKind::Shifted, l, 1.0, nstruct};
      nstruct += 1;
    } else if (u < kInf) {
      vmap[j] = {VarKind::Reflected, u, -1.0, nstruct};
      nstruct += 1;
    } else {
      vmap[j] = {VarKind::Split, 0.0, 1.0, nstruct};
      nstruct += 2;
    }
  }

  // Appended upper-bound rows for doubly bounded variables.
  struct BoundRow {
    std::size_t var;
    double rhs;
  };
  std::vector<BoundRow> bound_rows;
  for (std::size_t j = 0; j < nvars; ++j)
    if (problem.lower_bound(j) > -kInf && problem.upper_bound(j) < kInf)
      bound_rows.push_back({j, problem.upper_bound(j)});

  const std::size_t nrows = nuser_rows + bound_rows.size();
  const double dir_sign = problem.direction == LpDirection::Maximize ? -1.0 : 1.0;

  // Internal minimization costs over structural columns. The constant the
  // variable shifts add to the objective never matters: the reported value
  // is recomputed from the mapped-back primal.
  std::vector<double> cost_struct(nstruct, 0.0);
  for (std::size_t j = 0; j < nvars; ++j) {
    const double c = dir_sign * problem.objective[j];
    const VarMap& vm = vmap[j];
    if (vm.kind == VarKind::Split) {
      cost_struct[vm.col] += c;
      cost_struct[vm.col + 1] -= c;
    } else {
      cost_struct[vm.col] += c * vm.sign;
    }
  }

  // Assemble equality rows: structural columns, then one slack/surplus per
  // inequality row, negating rows to keep the rhs nonnegative.
  std::size_t nslacks = 0;
  for (RowSense s : problem.senses)
    if (s != RowSense::Equal) ++nslacks;
  nslacks += bound_rows.size();

  const std::size_t slack_base = nstruct;
  std::vector<double> amat;  // filled after ncols known
  std::vector<double> bvec(nrows, 0.0);
  std::vector<double> row_flip(nrows, 1.0);

  // First pass without artificials to find which rows need one.
  std::size_t ncols_noart = nstruct + nslacks;
  std::vector<double> base(nrows * ncols_noart, 0.0);
  std::size_t next_slack = slack_base;
  std::vector<std::size_t> slack_of_row(nrows, ncols_noart);

  auto fill_row = [&](std::size_t i, const std::vector<double>& coeffs,
                      double b, RowSense sense) {
    double rhs_i = b;
    for (std::size_t j = 0; j < nvars; ++j) {
      const double a = coeffs[j];
      if (a == 0.0) continue;
      const VarMap& vm = vmap[j];
      rhs_i -= a * vm.offset;
      if (vm.kind == VarKind::Split) {
        base[i * ncols_noart + vm.col] += a;
        base[i * ncols_noart + vm.col + 1] -= a;
      } else {
        base[i * ncols_noart + vm.col] += a * vm.sign;
      }
    }
    if (sense != RowSense::Equal) {
      slack_of_row[i] = next_slack;
      base[i * ncols_noart + next_slack] = sense == RowSense::LessEqual ? 1.0 : -1.0;
      ++next_slack;
    }
    if (rhs_i < 0.0) {
      row_flip[i] = -1.0;
      for (std::size_t j = 0; j < ncols_noart; ++j) base[i * ncols_noart + j] *= -1.0;
      rhs_i = -rhs_i;
    }
    bvec[i] = rhs_i;
  };

  for (std::size_t i = 0; i < nuser_rows; ++i)
    fill_row(i, problem.rows[i], problem.rhs[i], problem.senses[i]);
  for (std::size_t k = 0; k < bound_rows.size(); ++k) {
    std::vector<double> coeffs(nvars, 0.0);
    coeffs[bound_rows[k].var] = 1.0;
    fill_row(nuser_rows + k, coeffs, bound_rows[k].rhs, RowSense::LessEqual);
  }

  // Rows whose slack survived with +1 start basic on it; the rest get an
  // artificial column.
  std::vector<std::size_t> art_of_row(nrows, 0);
  std::vector<bool> needs_art(nrows, false);
  std::size_t narts = 0;
  for (std::size_t i = 0; i < nrows; ++i) {
    const std::size_t s = slack_of_row[i];
    const bool slack_ok = s < ncols_noart && base[i * ncols_noart + s] == 1.0;
    if (!slack_ok) {
      needs_art[i] = true;
      ++narts;
    }
  }

  const std::size_t ncols = ncols_noart + narts;
  detail::Tableau tab;
  tab.nrows = nrows;
  tab.ncols = ncols;
  tab.a.assign(nrows * ncols, 0.0);
  tab.rhs = bvec;
  tab.basis.assign(nrows, 0);
  {
    std::size_t next_art = ncols_noart;
    for (std::size_t i = 0; i < nrows; ++i) {
      for (std::size_t j = 0; j < ncols_noart; ++j)
        tab.at(i, j) = base[i * ncols_noart + j];
      if (needs_art[i]) {
        art_of_row[i] = next_art;
        tab.at(i, next_art) = 1.0;
        tab.basis[i] = next_art;
        ++next_art;
      } else {
        tab.basis[i] = slack_of_row[i];
      }
    }
  }

  const std::size_t iteration_cap = 50000 + 200 * (nrows + ncols);
  std::size_t iterations = 0;
  bool unbounded = false;

  // Exact entry of an original standard-form column.
  auto column_entry = [&](std::size_t col, std::size_t r) -> double {
    if (col < ncols_noart) return base[r * ncols_noart + col];
    return (needs_art[r] && art_of_row[r] == col) ? 1.0 : 0.0;
  };

  // Certifies a claimed phase optimum against the original data: reduced
  // costs are recomputed through an LU factorization of the basis, immune
  // to the drift the incremental updates accumulate over long degenerate
  // runs. If a hidden entering column shows up, the tableau is rebuilt
  // exactly and the phase resumes; returns false when the claim stands (or
  // cannot be checked).
  auto refresh = [&](const std::vector<double>& cost_full,
                     std::size_t banned) -> bool {
    std::vector<double> bm(nrows * nrows);
    for (std::size_t i = 0; i < nrows; ++i)
      for (std::size_t r = 0; r < nrows; ++r)
        bm[r * nrows + i] = column_entry(tab.basis[i], r);
    const detail::LuFactor lu(std::move(bm), nrows);
    if (!lu.ok) return false;
    std::vector<double> cb(nrows);
    for (std::size_t i = 0; i < nrows; ++i) cb[i] = cost_full[tab.basis[i]];
    const std::vector<double> y = lu.solve_transposed(cb);
    std::vector<double> d(ncols, 0.0);
    for (std::size_t j = 0; j < ncols; ++j) {
      double s = cost_full[j];
      for (std::size_t r = 0; r < nrows; ++r) {
        const double a = column_entry(j, r);
        if (a != 0.0) s -= y[r] * a;
      }
      d[j] = s;
    }
    for (std::size_t i = 0; i < nrows; ++i) d[tab.basis[i]] = 0.0;
    bool entering = false;
    for (std::size_t j = 0; j < banned && !entering; ++j)
      if (d[j] < -kPivotTol) entering = true;
    if (!entering) return false;
    std::vector<double> nb = lu.solve(bvec);
    for (double& v : nb) {
      if (v < 0.0) {
        if (v < -1e-6) return false;  // basis wandered off; keep the claim
        v = 0.0;
      }
    }
    std::vector<double> col(nrows);
    for (std::size_t j = 0; j < ncols; ++j) {
      for (std::size_t r = 0; r < nrows; ++r) col[r] = column_entry(j, r);
      const std::vector<double> sol = lu.solve(col);
      for (std::size_t i = 0; i < nrows; ++i) tab.at(i, j) = sol[i];
    }
    tab.rhs = std::move(nb);
    tab.dcost = std::move(d);
    return true;
  };
  constexpr int kMaxRefresh = 8;

  // Phase 1: minimize the artificial sum.
  if (narts > 0) {
    tab.dcost.assign(ncols, 0.0);
    for (std::size_t j = 0; j < ncols_noart; ++j) {
      double d = 0.0;
      for (std::size_t i = 0; i < nrows; ++i)
        if (needs_art[i]) d -= tab.at(i, j);
      tab.dcost[j] = d;
    }
    std::vector<double> cost_phase1(ncols, 0.0);
    for (std::size_t j = ncols_noart; j < ncols; ++j) cost_phase1[j] = 1.0;
    for (int pass = 0; pass < kMaxRefresh; ++pass) {
      while (tab.step(ncols, iterations, iteration_cap, unbounded)) {
      }
      if (unbounded || !refresh(cost_phase1, ncols)) break;
    }
    double art_level = 0.0;
    for (std::size_t i = 0; i < nrows; ++i)
      if (tab.basis[i] >= ncols_noart) art_level += tab.rhs[i];
    if (art_level > tol.eps_feas)
      return LpSolution{LpStatus::Infeasible, {}, {}, 0.0};
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t i = 0; i < nrows; ++i) {
      if (tab.basis[i] < ncols_noart) continue;
      for (std::size_t j = 0; j < ncols_noart; ++j) {
        if (std::abs(tab.at(i, j)) > kPivotTol) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2: original costs, artificial columns banned from entering.
  tab.dcost.assign(ncols, 0.0);
  for (std::size_t j = 0; j < ncols; ++j) {
    double d = j < nstruct ? cost_struct[j] : 0.0;
    for (std::size_t i = 0; i < nrows; ++i) {
      const std::size_t bi = tab.basis[i];
      const double cb = bi < nstruct ? cost_struct[bi] : 0.0;
      if (cb != 0.0) d -= cb * tab.at(i, j);
    }
    tab.dcost[j] = d;
  }
  std::vector<double> cost_phase2(ncols, 0.0);
  for (std::size_t j = 0; j < nstruct; ++j) cost_phase2[j] = cost_struct[j];
  for (int pass = 0; pass < kMaxRefresh; ++pass) {
    while (tab.step(ncols_noart, iterations, iteration_cap, unbounded)) {
    }
    if (unbounded || !refresh(cost_phase2, ncols_noart)) break;
  }
  if (unbounded) return LpSolution{LpStatus::Unbounded, {}, {}, 0.0};

  // Recompute the basic solution and duals exactly from the final basis,
  // discarding accumulated pivot error.
  std::vector<double> bmat(nrows * nrows, 0.0);
  std::vector<double> btmat(nrows * nrows, 0.0);
  std::vector<double> cbasis(nrows, 0.0);
  for (std::size_t i = 0; i < nrows; ++i) {
    const std::size_t col = tab.basis[i];
    for (std::size_t r = 0; r < nrows; ++r) {
      double v;
      if (col < ncols_noart)
        v = base[r * ncols_noart + col];
      else
        v = (needs_art[r] && art_of_row[r] == col) ? 1.0 : 0.0;
      bmat[r * nrows + i] = v;
      btmat[i * nrows + r] = v;
    }
    cbasis[i] = col < nstruct ? cost_struct[col] : 0.0;
  }
  std::vector<double> xbasic = detail::solve_dense(bmat, bvec, nrows);
  std::vector<double> ydual = detail::solve_dense(btmat, cbasis, nrows);

  std::vector<double> xstd(ncols, 0.0);
  for (std::size_t i = 0; i < nrows; ++i) xstd[tab.basis[i]] = xbasic[i];

  LpSolution out;
  out.status = LpStatus::Optimal;
  out.primal.resize(nvars);
  for (std::size_t j = 0; j < nvars; ++j) {
    const VarMap& vm = vmap[j];
    if (vm.kind == VarKind::Split)
      out.primal[j] = xstd[vm.col] - xstd[vm.col + 1];
    else
      out.primal[j] = vm.offset + vm.sign * xstd[vm.col];
  }
  out.dual.resize(nuser_rows);
  for (std::size_t i = 0; i < nuser_rows; ++i)
    out.dual[i] = dir_sign * row_flip[i] * ydual[i];
  double obj = 0.0;
  for (std::size_t j = 0; j < nvars; ++j)
    obj += problem.objective[j] * out.primal[j];
  out.objective_value = obj;
  return out;
}

// ---------------------------------------------------------------------------
// Certificate verification for LP solutions

struct VerifyResult {
  bool ok = true;
  std::string detail;
};

/// Re-checks an Optimal LpSolution against the problem from scratch:
/// primal feasibility, dual sign feasibility, reduced-cost conditions and
/// the absolute duality gap.
inline VerifyResult verify_lp_solution(const LpProblem& problem,
                                       const LpSolution& sol, const Tolerance& tol) {
  if (sol.status != LpStatus::Optimal) return {false, "solution is not Optimal"};
  const std::size_t n = problem.num_vars(), m = problem.num_rows();
  if (sol.primal.size() != n || sol.dual.size() != m)
    return {false, "primal/dual length mismatch"};
  const double sgn = problem.direction == LpDirection::Maximize ? -1.0 : 1.0;

  for (std::size_t j = 0; j < n; ++j) {
    if (sol.primal[j] < problem.lower_bound(j) - tol.eps_feas)
      return {false, "variable " + std::to_string(j) + " below lower bound"};
    if (sol.primal[j] > problem.upper_bound(j) + tol.eps_feas)
      return {false, "variable " + std::to_string(j) + " above upper bound"};
  }
  for (std::size_t i = 0; i < m; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) ax += problem.rows[i][j] * sol.primal[j];
    const double r = ax - problem.rhs[i];
    switch (problem.senses[i]) {
      case RowSense::LessEqual:
        if (r > tol.eps_feas) return {false, "row " + std::to_string(i) + " violated"};
        break;
      case RowSense::GreaterEqual:
        if (r < -tol.eps_feas) return {false, "row " + std::to_string(i) + " violated"};
        break;
      case RowSense::Equal:
        if (std::abs(r) > tol.eps_feas)
          return {false, "row " + std::to_string(i) + " violated"};
        break;
    }
  }

  // Work in minimization form: y_min = sgn * dual.
  std::vector<double> ymin(m);
  for (std::size_t i = 0; i < m; ++i) {
    ymin[i] = sgn * sol.dual[i];
    if (problem.senses[i] == RowSense::LessEqual && ymin[i] > tol.eps_feas)
      return {false, "dual sign on <= row " + std::to_string(i)};
    if (problem.senses[i] == RowSense::GreaterEqual && ymin[i] < -tol.eps_feas)
      return {false, "dual sign on >= row " + std::to_string(i)};
  }
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < m; ++i) dual_obj += ymin[i] * problem.rhs[i];
  for (std::size_t j = 0; j < n; ++j) {
    double red = sgn * problem.objective[j];
    for (std::size_t i = 0; i < m; ++i) red -= ymin[i] * problem.rows[i][j];
    const double l = problem.lower_bound(j), u = problem.upper_bound(j);
    if (red > tol.eps_feas) {
      if (l <= -kInf) return {false, "positive reduced cost on unbounded-below var"};
      dual_obj += red * l;
    } else if (red < -tol.eps_feas) {
      if (u >= kInf)
        return {false, "negative reduced cost on var " + std::to_string(j)};
      dual_obj += red * u;
    }
  }
  const double gap = std::abs(sgn * sol.objective_value - dual_obj);
  if (gap > tol.eps_opt)
    return {false, "duality gap " + std::to_string(gap)};
  return {true, ""};
}

// ---------------------------------------------------------------------------
// Zero-sum matrix games

/// Mixed value and optimal strategies of the matrix game on F, rows
/// minimizing and columns maximizing. row_weights plays the attaining
/// measure on X, col_weights the attaining measure on Y.
struct GameSolution {
  double value = 0.0;
  Weights row_weights;
  Weights col_weights;
};

/// Solves the game by the reciprocal-value reduction: shift F entrywise to
/// make it >= 1, solve max 1'p s.t. F'p <= 1, p >= 0, and read the column
/// strategy off the dual. Deterministic for fixed input and tolerance.
inline GameSolution solve_zero_sum(const BiMatrix& f, const Tolerance& tol) {
  tol.validate();
  const std::size_t m = f.rows(), n = f.cols();
  const double shift = 1.0 - f.min_entry();

  LpProblem lp;
  lp.direction = LpDirection::Maximize;
  lp.objective.assign(m, 1.0);
  lp.rows.assign(n, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) lp.rows[j][i] = f(i, j) + shift;
  lp.rhs.assign(n, 1.0);
  lp.senses.assign(n, RowSense::LessEqual);

  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal || !(sol.objective_value > 0.0))
    fail(Errc::CycleLimitExceeded, "zero-sum reduction did not reach an optimum");

  const double inv_value = sol.objective_value;  // = 1 / shifted game value
  std::vector<double> lambda(m), mu(n);
  for (std::size_t i = 0; i < m; ++i) lambda[i] = sol.primal[i] / inv_value;
  for (std::size_t j = 0; j < n; ++j) mu[j] = sol.dual[j] / inv_value;

  GameSolution gs{1.0 / inv_value - shift,
                  validate_weights(std::move(lambda), m, tol),
                  validate_weights(std::move(mu), n, tol)};
  return gs;
}

/// Independent scan-based re-check of a GameSolution certificate.
inline VerifyResult verify_game_solution(const BiMatrix& f, const GameSolution& gs,
                                         const Tolerance& tol) {
  const std::size_t m = f.rows(), n = f.cols();
  if (gs.row_weights.size() != m || gs.col_weights.size() != n)
    return {false, "strategy length mismatch"};
  validate_weights(gs.row_weights.values(), m, tol);
  validate_weights(gs.col_weights.values(), n, tol);
  double worst_col = -kInf;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += gs.row_weights[i] * f(i, j);
    worst_col = std::max(worst_col, s);
  }
  if (worst_col > gs.value + tol.eps_cert)
    return {false, "row strategy guarantees only " + std::to_string(worst_col)};
  double worst_row = kInf;
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += f(i, j) * gs.col_weights[j];
    worst_row = std::min(worst_row, s);
  }
  if (worst_row < gs.value - tol.eps_cert)
    return {false, "column strategy guarantees only " + std::to_string(worst_row)};
  return {true, ""};
}

}  // namespace minimaxlab

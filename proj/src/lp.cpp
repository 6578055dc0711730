#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/error.hpp"
#include "maxent/numeric.hpp"

namespace maxent::numeric {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;
constexpr double kFeasTol = 1e-9;

struct Tableau {
  std::size_t m = 0;     // constraint rows
  std::size_t cols = 0;  // structural + slack + artificial columns (rhs stored after)
  std::vector<double> t;  // (m + 1) x (cols + 1), last row = reduced costs
  std::vector<std::size_t> basis;
  std::vector<bool> allowed;
  std::size_t pivots = 0;
  std::size_t budget = 0;

  double& at(std::size_t r, std::size_t c) { return t[r * (cols + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t[r * (cols + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols); }

  void pivot(std::size_t pr, std::size_t pc) {
    if (++pivots > budget) throw Error(ErrorCode::SimplexCycle, "simplex pivot budget exhausted");
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis[pr] = pc;
  }

  // Returns false when the objective is unbounded below.
  bool run() {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t c = 0; c < cols; ++c) {
        if (allowed[c] && at(m, c) < -kCostEps) {
          enter = c;
          break;
        }
      }
      if (enter == cols) return true;
      std::size_t leave = m;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m; ++r) {
        const double a = at(r, enter);
        if (a <= kPivotEps) continue;
        const double ratio = std::max(at(r, cols), 0.0) / a;
        if (leave == m) {
          best = ratio;
          leave = r;
          continue;
        }
        const double slack = 1e-12 * std::max(1.0, best);
        if (ratio < best - slack || (ratio <= best + slack && basis[r] < basis[leave])) {
          best = std::min(best, ratio);
          leave = r;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }

  void set_costs(const std::vector<double>& cost) {
    for (std::size_t c = 0; c <= cols; ++c) at(m, c) = c < cols ? cost[c] : 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      const double cb = cost[basis[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) at(m, c) -= cb * at(r, c);
    }
  }

  void drop_row(std::size_t r) {
    std::vector<double> nt;
    nt.reserve(m * (cols + 1));
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r) continue;
      nt.insert(nt.end(), t.begin() + i * (cols + 1), t.begin() + (i + 1) * (cols + 1));
    }
    t = std::move(nt);
    basis.erase(basis.begin() + r);
    --m;
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.c.size();
  if (lp.a_ub.size() != lp.b_ub.size() || lp.a_eq.size() != lp.b_eq.size() ||
      (!lp.free.empty() && lp.free.size() != n))
    throw Error(ErrorCode::DimensionMismatch, "linear program shape");
  for (const auto& row : lp.a_ub)
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "inequality row length");
  for (const auto& row : lp.a_eq)
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "equality row length");

  // Column layout: structural (free variables split into +/-), slacks, artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t i = 0; i < n; ++i) {
    pos_col[i] = ncols++;
    if (!lp.free.empty() && lp.free[i]) neg_col[i] = ncols++;
  }
  const std::size_t n_struct = ncols;
  const std::size_t m_ub = lp.a_ub.size();
  const std::size_t m = m_ub + lp.a_eq.size();
  ncols += m_ub;
  const std::size_t first_art = ncols;

  struct RowSpec {
    std::vector<double> a;
    double b;
    std::size_t slack;
  };
  std::vector<RowSpec> rows;
  rows.reserve(m);
  auto structural = [&](const std::vector<double>& src) {
    std::vector<double> a(n_struct, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      a[pos_col[i]] = src[i];
      if (neg_col[i] != SIZE_MAX) a[neg_col[i]] = -src[i];
    }
    return a;
  };
  for (std::size_t r = 0; r < m_ub; ++r) rows.push_back({structural(lp.a_ub[r]), lp.b_ub[r], n_struct + r});
  for (std::size_t r = 0; r < lp.a_eq.size(); ++r)
    rows.push_back({structural(lp.a_eq[r]), lp.b_eq[r], SIZE_MAX});

  std::size_t n_art = 0;
  for (const auto& row : rows)
    if (row.slack == SIZE_MAX || row.b < 0.0) ++n_art;
  ncols += n_art;

  Tableau tab;
  tab.m = m;
  tab.cols = ncols;
  tab.t.assign((m + 1) * (ncols + 1), 0.0);
  tab.basis.assign(m, 0);
  tab.allowed.assign(ncols, true);
  tab.budget = 50000 + 200 * (m + ncols);

  double bscale = 1.0;
  std::size_t art = first_art;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = rows[r];
    const double sign = row.b < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n_struct; ++c) tab.at(r, c) = sign * row.a[c];
    if (row.slack != SIZE_MAX) tab.at(r, row.slack) = sign;
    tab.rhs(r) = sign * row.b;
    bscale = std::max(bscale, std::abs(row.b));
    if (row.slack != SIZE_MAX && row.b >= 0.0) {
      tab.basis[r] = row.slack;
    } else {
      tab.at(r, art) = 1.0;
      tab.basis[r] = art++;
    }
  }

  LpResult result;
  if (n_art > 0) {
    std::vector<double> cost(ncols, 0.0);
    for (std::size_t c = first_art; c < ncols; ++c) cost[c] = 1.0;
    tab.set_costs(cost);
    tab.run();
    if (-tab.at(tab.m, tab.cols) > kFeasTol * bscale) {
      result.status = LpStatus::Infeasible;
      result.pivots = tab.pivots;
      return result;
    }
    for (std::size_t r = 0; r < tab.m;) {
      if (tab.basis[r] < first_art) {
        ++r;
        continue;
      }
      std::size_t pc = first_art;
      for (std::size_t c = 0; c < first_art; ++c) {
        if (std::abs(tab.at(r, c)) > 1e-9) {
          pc = c;
          break;
        }
      }
      if (pc == first_art) {
        tab.drop_row(r);
      } else {
        tab.pivot(r, pc);
        ++r;
      }
    }
    for (std::size_t c = first_art; c < ncols; ++c) tab.allowed[c] = false;
  }

  std::vector<double> cost(ncols, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cost[pos_col[i]] = lp.c[i];
    if (neg_col[i] != SIZE_MAX) cost[neg_col[i]] = -lp.c[i];
  }
  tab.set_costs(cost);
  const bool bounded = tab.run();
  result.pivots = tab.pivots;
  if (!bounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  std::vector<double> col_value(ncols, 0.0);
  for (std::size_t r = 0; r < tab.m; ++r) col_value[tab.basis[r]] = std::max(tab.rhs(r), 0.0);
  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    result.x[i] = col_value[pos_col[i]];
    if (neg_col[i] != SIZE_MAX) result.x[i] -= col_value[neg_col[i]];
  }
  result.objective = 0.0;
  for (std::size_t i = 0; i < n; ++i) result.objective += lp.c[i] * result.x[i];
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace maxent::numeric

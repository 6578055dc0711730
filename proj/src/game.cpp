#include <algorithm>
#include <cmath>

#include "maxent/error.hpp"
#include "maxent/numeric.hpp"

namespace maxent::numeric {

MatrixGameSolution solve_matrix_game(const Rows& payoff) {
  const std::size_t m = payoff.size();
  if (m == 0 || payoff.front().empty()) throw Error(ErrorCode::DimensionMismatch, "empty game");
  const std::size_t n = payoff.front().size();
  double lo = payoff[0][0];
  for (const auto& row : payoff) {
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "ragged payoff matrix");
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "payoff entries must be finite");
      lo = std::min(lo, v);
    }
  }
  const double shift = 1.0 - lo;

  // Row player: minimize sum u subject to sum_i u_i A'_ij >= 1; value = 1 / sum u.
  LinearProgram rows;
  rows.c.assign(m, 1.0);
  rows.a_ub.assign(n, std::vector<double>(m));
  rows.b_ub.assign(n, -1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) rows.a_ub[j][i] = -(payoff[i][j] + shift);
  const LpResult ru = solve_lp(rows);

  // Column player: maximize sum y subject to sum_j A'_ij y_j <= 1.
  LinearProgram cols;
  cols.c.assign(n, -1.0);
  cols.a_ub.assign(m, std::vector<double>(n));
  cols.b_ub.assign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) cols.a_ub[i][j] = payoff[i][j] + shift;
  const LpResult cy = solve_lp(cols);

  if (ru.status != LpStatus::Optimal || cy.status != LpStatus::Optimal)
    throw Error(ErrorCode::SimplexCycle, "matrix game programs did not reach an optimum");

  MatrixGameSolution out;
  double su = 0.0, sy = 0.0;
  for (double v : ru.x) su += v;
  for (double v : cy.x) sy += v;
  out.row.resize(m);
  out.col.resize(n);
  for (std::size_t i = 0; i < m; ++i) out.row[i] = ru.x[i] / su;
  for (std::size_t j = 0; j < n; ++j) out.col[j] = cy.x[j] / sy;
  out.value = 0.5 * (1.0 / su + 1.0 / sy) - shift;
  return out;
}

}  // namespace maxent::numeric

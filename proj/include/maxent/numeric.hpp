#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace maxent::numeric {

using Rows = std::vector<std::vector<double>>;

// ---------------------------------------------------------------------------
// Dense two-phase simplex.

/// minimize c'x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x_i >= 0 unless free[i].
struct LinearProgram {
  std::vector<double> c;
  Rows a_ub;
  std::vector<double> b_ub;
  Rows a_eq;
  std::vector<double> b_eq;
  std::vector<bool> free;  ///< empty means every variable is nonnegative
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t pivots = 0;
};

/// Bland's rule throughout, so the method terminates; a pivot budget
/// overrun still throws SimplexCycle.
LpResult solve_lp(const LinearProgram& lp);

// ---------------------------------------------------------------------------
// Finite two-person zero-sum games.

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row;  ///< maximizing row player's mixed strategy
  std::vector<double> col;  ///< minimizing column player's mixed strategy
};

/// Mixed-strategy value of payoff[i][j] (column player pays row player),
/// from the usual pair of linear programs after shifting all entries to >= 1.
MatrixGameSolution solve_matrix_game(const Rows& payoff);

// ---------------------------------------------------------------------------
// Euclidean projection onto a polyhedron.

/// minimize 0.5 ||x - target||^2  s.t.  A_eq x = b_eq,  A_in x <= b_in.
struct ProjectionProblem {
  std::vector<double> target;
  Rows a_eq;
  std::vector<double> b_eq;
  Rows a_in;
  std::vector<double> b_in;
};

struct ProjectionResult {
  bool feasible = false;
  std::vector<double> x;
  std::size_t iterations = 0;
};

/// Primal active-set method started from a simplex phase-1 point.
ProjectionResult project(const ProjectionProblem& qp);

// ---------------------------------------------------------------------------
// Pairwise Frank-Wolfe for maximizing a concave function of mixture weights.

struct FwProblem {
  std::size_t atoms = 0;
  /// Returns f(w) and writes a supergradient (one entry per atom, +inf
  /// allowed) into grad.
  std::function<double(std::span<const double> w, std::vector<double>& grad)> eval;
};

struct FwOptions {
  double tol = 1e-8;
  std::size_t max_iter = 100000;
  /// Also require max_i g_i - min over weighted atoms of g_i <= tol, which
  /// bounds the weight left on atoms whose supergradient is strictly lower.
  bool pairwise_gap = false;
};

struct FwResult {
  std::vector<double> w;
  double value = 0.0;
  double gap = 0.0;  ///< max_i g_i - w'g, an upper bound on f* - f(w)
  std::size_t iterations = 0;
  bool converged = false;
};

/// Moves mass from the worst active atom to the best atom with an exact
/// line search (false position on the directional supergradient).
FwResult pairwise_frank_wolfe(const FwProblem& problem, std::vector<double> w0,
                              const FwOptions& options = {});

// ---------------------------------------------------------------------------
// Small dense least squares.

struct LeastSquares {
  std::vector<double> x;  ///< minimum-norm minimizer of ||A x - b||
  double residual = 0.0;  ///< ||A x - b||_inf
  std::size_t rank = 0;
};

LeastSquares least_squares(const Rows& a, std::span<const double> b, double rank_tol = 1e-10);

/// Numerical rank of a row set.
std::size_t matrix_rank(const Rows& a, double rank_tol = 1e-10);

}  // namespace maxent::numeric

#pragma once

#include <cstdint>
#include <vector>

#include "maxent/constraints.hpp"
#include "maxent/losses.hpp"
#include "maxent/numeric.hpp"

namespace maxent {

/// payoff[i][j] = L(x_i, a_j): rows are Nature's choices, columns the
/// decision maker's, and the decision maker pays.
struct MatrixGame {
  numeric::Rows payoff;
};

struct GameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double row_margin = 0.0;  ///< value - min_j (row' L)_j
  double col_margin = 0.0;  ///< max_i (L col)_i - value
};

/// Mixed-strategy value by linear programming. Throws InvalidArgument on
/// non-finite or ragged payoffs.
GameSolution lp_game_value(const MatrixGame& game);

struct UpperValue {
  double value = 0.0;
  bool exact = false;      ///< finite act set: solved as a matrix game
  bool certified = false;  ///< agrees with h(tau) within 1e-7 and the saddle checks pass
  double h = 0.0;          ///< specific entropy from the solver
  std::size_t acts = 0;    ///< acts examined
};

/// inf over acts of max over vertices of L(V, act). Exact for models with
/// finitely many pure acts; otherwise the minimum over the solver's act,
/// the vertices' Bayes acts and a seeded cloud of random acts.
UpperValue restricted_upper_value(const LossModel& model, const GammaTau& g, std::uint64_t seed = 0);

struct SaddleReport {
  double bayes_margin = 0.0;  ///< L(P*, zeta*) - H(P*)
  double worst_margin = 0.0;  ///< max over vertices of L(V, zeta*) - L(P*, zeta*)
  bool bayes_ok = false;      ///< |bayes_margin| <= 1e-8
  bool worst_ok = false;      ///< worst_margin <= 1e-7
  bool in_polytope = false;
  bool equalizer = false;
  double equalizer_spread = 0.0;
  bool passed() const { return bayes_ok && worst_ok && in_polytope; }
};

SaddleReport verify_saddle(const LossModel& model, const GammaTau& g, const Distribution& p_star,
                           const Act& zeta_star);

struct USetReport {
  std::vector<std::size_t> u;  ///< outcomes with |L(x, zeta*) - H*| <= 1e-8
  double mass = 0.0;           ///< P*(U)
  bool supported = false;      ///< mass >= 1 - 1e-8
  bool applicable = false;     ///< the game's family is closed under conditioning
};

/// g == nullptr stands for the full simplex. A polytope is closed under
/// conditioning exactly when all its vertices are point masses.
USetReport u_set_check(const LossModel& model, const Act& zeta_star, double h_star,
                       const Distribution& p_star, const GammaTau* g = nullptr);

}  // namespace maxent

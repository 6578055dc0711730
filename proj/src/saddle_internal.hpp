#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxent/constraints.hpp"
#include "maxent/maxent.hpp"

namespace maxent::detail {

/// Coefficients with loss(x) = beta0 + beta' t(x) on the support and
/// loss(x) <= beta0 + beta' t(x) off it; minimum-norm beta when not unique.
std::optional<DualCoefficients> fit_dual(const std::vector<ExtReal>& loss, const Statistic& t,
                                         const std::vector<std::size_t>& support, double tol);

/// Least-squares affine fit of the loss over every outcome, if it is exact to 1e-7.
std::optional<DualCoefficients> fit_linear(const std::vector<ExtReal>& loss, const Statistic& t);

/// Fills margins, flags and dual coefficients of a solved pair.
SaddlePoint finalize(const LossModel& model, const GammaTau& g, const VertexSet& verts,
                     Distribution p_star, Act zeta_star, double value, double dual_tol,
                     std::string solver);

}  // namespace maxent::detail

#include <Eigen/Dense>
#include <cmath>

#include "maxent/error.hpp"
#include "maxent/numeric.hpp"

namespace maxent::numeric {
namespace {

Eigen::MatrixXd to_matrix(const Rows& a, std::size_t cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = a[r][c];
  }
  return m;
}

}  // namespace

LeastSquares least_squares(const Rows& a, std::span<const double> b, double rank_tol) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "least squares rhs");
  LeastSquares out;
  if (a.empty()) return out;
  const std::size_t cols = a.front().size();
  const Eigen::MatrixXd m = to_matrix(a, cols);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i) = b[i];
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m.rows(), m.cols());
  cod.setThreshold(rank_tol);
  cod.compute(m);
  const Eigen::VectorXd x = cod.solve(rhs);
  out.x.assign(x.data(), x.data() + x.size());
  out.rank = static_cast<std::size_t>(cod.rank());
  out.residual = (m * x - rhs).lpNorm<Eigen::Infinity>();
  return out;
}

std::size_t matrix_rank(const Rows& a, double rank_tol) {
  if (a.empty()) return 0;
  const Eigen::MatrixXd m = to_matrix(a, a.front().size());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m.rows(), m.cols());
  qr.setThreshold(rank_tol);
  qr.compute(m);
  return static_cast<std::size_t>(qr.rank());
}

}  // namespace maxent::numeric

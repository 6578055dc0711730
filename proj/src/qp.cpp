#include <algorithm>
#include <cmath>

#include "maxent/error.hpp"
#include "maxent/numeric.hpp"

namespace maxent::numeric {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Transpose of the working-set rows, so that least squares solves A_W' y = r.
Rows transpose_rows(const std::vector<const std::vector<double>*>& rows, std::size_t n) {
  Rows t(n, std::vector<double>(rows.size()));
  for (std::size_t w = 0; w < rows.size(); ++w)
    for (std::size_t i = 0; i < n; ++i) t[i][w] = (*rows[w])[i];
  return t;
}

}  // namespace

ProjectionResult project(const ProjectionProblem& qp) {
  const std::size_t n = qp.target.size();
  if (qp.a_eq.size() != qp.b_eq.size() || qp.a_in.size() != qp.b_in.size())
    throw Error(ErrorCode::DimensionMismatch, "projection problem shape");

  LinearProgram phase1;
  phase1.c.assign(n, 0.0);
  phase1.a_ub = qp.a_in;
  phase1.b_ub = qp.b_in;
  phase1.a_eq = qp.a_eq;
  phase1.b_eq = qp.b_eq;
  phase1.free.assign(n, true);
  const LpResult start = solve_lp(phase1);
  ProjectionResult out;
  if (start.status != LpStatus::Optimal) return out;
  out.feasible = true;
  std::vector<double> x = start.x;

  // Working set: an independent subset of the equalities, then active inequalities.
  std::vector<const std::vector<double>*> rows;
  std::vector<long> tags;  // -1 for equalities, else inequality index
  auto try_add = [&](const std::vector<double>* row, long tag) {
    rows.push_back(row);
    Rows current;
    for (const auto* r : rows) current.push_back(*r);
    if (matrix_rank(current) < rows.size()) {
      rows.pop_back();
      return false;
    }
    tags.push_back(tag);
    return true;
  };
  for (const auto& row : qp.a_eq) try_add(&row, -1);
  for (std::size_t j = 0; j < qp.a_in.size(); ++j) {
    const double scale = 1.0 + std::abs(qp.b_in[j]);
    if (std::abs(dot(qp.a_in[j], x) - qp.b_in[j]) <= 1e-10 * scale)
      try_add(&qp.a_in[j], static_cast<long>(j));
  }

  const std::size_t max_iter = 100 * (n + qp.a_in.size() + 10);
  for (std::size_t it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = qp.target[i] - x[i];
    std::vector<double> y;
    std::vector<double> p = r;
    if (!rows.empty()) {
      y = least_squares(transpose_rows(rows, n), r).x;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t w = 0; w < rows.size(); ++w) p[i] -= (*rows[w])[i] * y[w];
    }
    double pnorm = 0.0, xnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      pnorm = std::max(pnorm, std::abs(p[i]));
      xnorm = std::max(xnorm, std::abs(x[i]));
    }
    if (pnorm <= 1e-13 * (1.0 + xnorm)) {
      std::size_t worst = rows.size();
      double most_negative = -1e-12;
      for (std::size_t w = 0; w < rows.size(); ++w) {
        if (tags[w] >= 0 && y[w] < most_negative) {
          most_negative = y[w];
          worst = w;
        }
      }
      if (worst == rows.size()) break;
      rows.erase(rows.begin() + static_cast<long>(worst));
      tags.erase(tags.begin() + static_cast<long>(worst));
      continue;
    }
    double alpha = 1.0;
    long block = -1;
    for (std::size_t j = 0; j < qp.a_in.size(); ++j) {
      if (std::find(tags.begin(), tags.end(), static_cast<long>(j)) != tags.end()) continue;
      const double ap = dot(qp.a_in[j], p);
      if (ap <= 1e-14) continue;
      const double ratio = std::max(qp.b_in[j] - dot(qp.a_in[j], x), 0.0) / ap;
      if (ratio < alpha) {
        alpha = ratio;
        block = static_cast<long>(j);
      }
    }
    for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
    if (block >= 0) {
      rows.push_back(&qp.a_in[static_cast<std::size_t>(block)]);
      tags.push_back(block);
    }
  }
  out.x = std::move(x);
  return out;
}

}  // namespace maxent::numeric

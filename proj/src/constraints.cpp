#include "maxent/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <string>

#include "maxent/kernels.hpp"
#include "maxent/numeric.hpp"

namespace maxent {
namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kNegativeTol = 1e-10;
constexpr double kDedupTol = 1e-8;
constexpr double kHullTol = 1e-9;

// Calls fn(indices) for every size-s subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t s, Fn&& fn) {
  if (s > n) return;
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

EnumerationLimits EnumerationLimits::from_env() {
  EnumerationLimits limits;
  if (const char* env = std::getenv("MAXENT_MAX_N")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) limits.max_outcomes = v;
  }
  return limits;
}

GammaTau::GammaTau(SampleSpace space, Statistic t, std::vector<double> tau)
    : space_(std::move(space)), t_(std::move(t)), tau_(std::move(tau)) {
  if (t_.outcomes() != space_.size())
    throw Error(ErrorCode::DimensionMismatch, "statistic columns differ from sample space size");
  if (tau_.size() != t_.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "target has " + std::to_string(tau_.size()) + " entries, statistic has " +
                    std::to_string(t_.dim()) + " rows");
  for (std::size_t j = 0; j < t_.dim(); ++j) {
    if (!std::isfinite(tau_[j])) throw Error(ErrorCode::InvalidArgument, "non-finite target");
    const auto row = t_.row(j);
    const bool zero_row = std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; });
    if (zero_row && tau_[j] != 0.0)
      throw Error(ErrorCode::Infeasible, "statistic row " + std::to_string(j) +
                                             " is identically zero but its target is not");
  }
}

std::vector<std::size_t> VertexSet::maximal_support() const {
  std::set<std::size_t> all;
  for (const auto& s : supports) all.insert(s.begin(), s.end());
  return {all.begin(), all.end()};
}

VertexSet try_vertices(const GammaTau& g, const EnumerationLimits& limits) {
  const std::size_t n = g.outcomes();
  const std::size_t k = g.dim();
  if (n > limits.max_outcomes || k > limits.max_dim)
    throw Error(ErrorCode::CombinatorialBlowup,
                "vertex enumeration limited to N <= " + std::to_string(limits.max_outcomes) +
                    " and k <= " + std::to_string(limits.max_dim) + " (got N = " +
                    std::to_string(n) + ", k = " + std::to_string(k) + ")");
  const auto& t = g.statistic();
  const auto& tau = g.tau();
  std::vector<double> rhs(k + 1);
  rhs[0] = 1.0;
  std::copy(tau.begin(), tau.end(), rhs.begin() + 1);
  double scale = 1.0;
  for (double v : tau) scale = std::max(scale, std::abs(v));

  std::vector<std::vector<double>> found;
  for (std::size_t s = 1; s <= std::min(n, k + 1); ++s) {
    for_each_subset(n, s, [&](const std::vector<std::size_t>& idx) {
      numeric::Rows a(k + 1, std::vector<double>(s));
      for (std::size_t c = 0; c < s; ++c) {
        a[0][c] = 1.0;
        for (std::size_t j = 0; j < k; ++j) a[j + 1][c] = t(j, idx[c]);
      }
      const auto ls = numeric::least_squares(a, rhs);
      if (ls.rank < s || ls.residual > kResidualTol * scale) return;
      std::vector<double> p(n, 0.0);
      for (std::size_t c = 0; c < s; ++c) {
        if (ls.x[c] < -kNegativeTol) return;
        p[idx[c]] = std::max(ls.x[c], 0.0);
      }
      for (const auto& q : found)
        if (kernels::max_abs_diff(p, q) <= kDedupTol) return;
      found.push_back(std::move(p));
    });
  }
  std::sort(found.begin(), found.end());

  VertexSet out;
  for (const auto& p : found) {
    out.vertices.push_back(renormalized(p));
    out.supports.push_back(out.vertices.back().support());
  }
  return out;
}

VertexSet vertices(const GammaTau& g, const EnumerationLimits& limits) {
  VertexSet v = try_vertices(g, limits);
  if (v.empty()) throw Error(ErrorCode::Infeasible, "no distribution meets the moment targets");
  return v;
}

bool feasible(const GammaTau& g) { return !try_vertices(g).empty(); }

bool contains(const GammaTau& g, const Distribution& p) {
  if (p.size() != g.outcomes()) return false;
  const auto m = moment(p, g.statistic());
  return kernels::max_abs_diff(m, g.tau()) <= 1e-8;
}

std::string_view to_string(HullPosition position) noexcept {
  switch (position) {
    case HullPosition::Interior: return "interior";
    case HullPosition::Boundary: return "boundary";
    case HullPosition::Outside: return "outside";
  }
  return "unknown";
}

HullPosition hull_interior(const Statistic& t, std::span<const double> tau) {
  if (tau.size() != t.dim()) throw Error(ErrorCode::DimensionMismatch, "target dimension");
  if (t.dim() == 1) {
    const auto row = t.row(0);
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    const double x = tau[0];
    if (x < *lo - kHullTol || x > *hi + kHullTol) return HullPosition::Outside;
    if (*lo == *hi) return HullPosition::Interior;
    if (std::abs(x - *lo) <= kHullTol || std::abs(x - *hi) <= kHullTol) return HullPosition::Boundary;
    return HullPosition::Interior;
  }
  VertexSet v;
  try {
    v = try_vertices(GammaTau(SampleSpace::indexed(t.outcomes()), t,
                              std::vector<double>(tau.begin(), tau.end())));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infeasible) return HullPosition::Outside;
    throw;
  }
  if (v.empty()) return HullPosition::Outside;
  return v.maximal_support().size() == t.outcomes() ? HullPosition::Interior
                                                      : HullPosition::Boundary;
}

}  // namespace maxent

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "maxent/core.hpp"

namespace maxent {

/// Caps on vertex enumeration, which visits every support of size <= k + 1.
struct EnumerationLimits {
  std::size_t max_outcomes = 20;
  std::size_t max_dim = 3;

  /// Defaults, with max_outcomes taken from MAXENT_MAX_N when set.
  static EnumerationLimits from_env();
};

/// The polytope {P : E_P T = tau} of distributions meeting the moment targets.
class GammaTau {
 public:
  /// Throws DimensionMismatch on shape errors and Infeasible when an all-zero
  /// statistic row is paired with a nonzero target.
  GammaTau(SampleSpace space, Statistic t, std::vector<double> tau);

  const SampleSpace& space() const noexcept { return space_; }
  const Statistic& statistic() const noexcept { return t_; }
  const std::vector<double>& tau() const noexcept { return tau_; }
  std::size_t dim() const noexcept { return t_.dim(); }
  std::size_t outcomes() const noexcept { return t_.outcomes(); }

 private:
  SampleSpace space_;
  Statistic t_;
  std::vector<double> tau_;
};

struct VertexSet {
  std::vector<Distribution> vertices;              ///< sorted lexicographically
  std::vector<std::vector<std::size_t>> supports;  ///< support of each vertex

  std::size_t size() const noexcept { return vertices.size(); }
  bool empty() const noexcept { return vertices.empty(); }
  /// Union of all vertex supports: the largest support of any member of the polytope.
  std::vector<std::size_t> maximal_support() const;
};

/// All vertices of the polytope. Throws Infeasible when it is empty and
/// CombinatorialBlowup beyond the enumeration limits.
VertexSet vertices(const GammaTau& g, const EnumerationLimits& limits = EnumerationLimits::from_env());

/// Same enumeration, returning an empty set instead of throwing Infeasible.
VertexSet try_vertices(const GammaTau& g,
                       const EnumerationLimits& limits = EnumerationLimits::from_env());

bool feasible(const GammaTau& g);

/// ||T p - tau||_inf <= 1e-8.
bool contains(const GammaTau& g, const Distribution& p);

enum class HullPosition { Interior, Boundary, Outside };

std::string_view to_string(HullPosition position) noexcept;

/// Position of tau relative to the convex hull of the columns of T
/// (relative interior counts as interior).
HullPosition hull_interior(const Statistic& t, std::span<const double> tau);

}  // namespace maxent

#include "maxent/random.hpp"

namespace maxent {

std::vector<double> random_simplex_point(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) total += (x = expo(rng));
  for (double& x : w) x /= total;
  return w;
}

Distribution random_distribution(Rng& rng, std::size_t n, double zero_prob) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> w(n);
  const std::size_t keep = pick(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const bool zero = i != keep && zero_prob > 0.0 && unit(rng) < zero_prob;
    w[i] = zero ? 0.0 : expo(rng);
  }
  return renormalized(w);
}

}  // namespace maxent

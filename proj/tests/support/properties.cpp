#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "maxent/divergence.hpp"
#include "maxent/losses.hpp"
#include "maxent/random.hpp"

using namespace maxent;

namespace props {
namespace {

struct Instance {
  std::string label;
  LossModelPtr model;
};

// A rotating cast of models over 2..6 outcomes.
std::vector<Instance> models_for(std::size_t n, Rng& rng) {
  const SampleSpace space = SampleSpace::indexed(n);
  std::vector<double> mu(n), values(n);
  std::uniform_real_distribution<double> u(0.2, 2.0), v(-2.0, 2.0);
  for (double& m : mu) m = u(rng);
  for (double& x : values) x = v(rng);
  return {
      {"brier", brier_model(space)},
      {"log", log_model(space, BaseMeasure::counting(n))},
      {"log_mu", log_model(space, BaseMeasure(mu))},
      {"zero_one", zero_one_model(space)},
      {"quadratic", quadratic_model(space, values)},
      {"bregman_power", bregman_model(space, BaseMeasure(mu), ConvexGenerator::power(2.5))},
  };
}

std::string fmt(const std::string& what, double v) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %.3g", what.c_str(), v);
  return buf;
}

void record(Result& r, bool ok, double violation, const std::string& what) {
  ++r.cases;
  if (ok) return;
  ++r.failures;
  r.worst = std::max(r.worst, violation);
  if (r.witness.empty()) r.witness = fmt(what, violation);
}

double value_or(const ExtReal& x, double fallback) { return x.is_finite() ? x.value() : fallback; }

/// Runs body(rng, instance) for `cases` seeded draws cycling through the models.
void sweep(std::uint64_t seed, std::size_t cases, bool distribution_acts_only,
           const std::function<void(Rng&, const Instance&, std::size_t n)>& body) {
  Rng rng(seed);
  std::size_t done = 0;
  while (done < cases) {
    const std::size_t n = 2 + done % 5;
    for (const auto& inst : models_for(n, rng)) {
      if (done >= cases) break;
      if (distribution_acts_only && !inst.model->distribution_acts()) continue;
      body(rng, inst, n);
      ++done;
    }
  }
}

}  // namespace

Result entropy_concavity(std::uint64_t seed, std::size_t cases) {
  Result r{"entropy concavity"};
  sweep(seed, cases, false, [&](Rng& rng, const Instance& inst, std::size_t n) {
    const auto p = random_distribution(rng, n, 0.2);
    const auto q = random_distribution(rng, n, 0.2);
    const double lam = std::uniform_real_distribution<double>(0, 1)(rng);
    const double mid = inst.model->entropy(mixture(p, q, lam));
    const double chord = (1 - lam) * inst.model->entropy(p) + lam * inst.model->entropy(q);
    const double viol = chord - mid;
    record(r, viol <= 1e-12, viol, inst.label);
  });
  return r;
}

Result propriety_margins(std::uint64_t seed, std::size_t cases) {
  Result r{"propriety margins"};
  sweep(seed, cases, true, [&](Rng& rng, const Instance& inst, std::size_t n) {
    const auto p = random_distribution(rng, n, 0.2);
    const auto q = random_distribution(rng, n, 0.2);
    const ExtReal own = expected_loss(p, inst.model->act_for(p), *inst.model);
    const ExtReal other = expected_loss(p, inst.model->act_for(q), *inst.model);
    const double margin = other.is_pos_inf() ? 0.0 : other.value() - own.value();
    record(r, margin >= -1e-9, -margin, inst.label);
  });
  return r;
}

Result discrepancy_nonnegative(std::uint64_t seed, std::size_t cases) {
  Result r{"discrepancy nonnegative, zero at the Bayes act"};
  sweep(seed, cases, false, [&](Rng& rng, const Instance& inst, std::size_t n) {
    const auto p = random_distribution(rng, n, 0.2);
    const auto q = random_distribution(rng, n, 0.2);
    const double d = value_or(discrepancy(p, inst.model->bayes_act(q).act, *inst.model), 0.0);
    const double zero = discrepancy(p, inst.model->bayes_act(p).act, *inst.model).value();
    const double viol = std::max(-d, std::abs(zero));
    record(r, d >= -1e-10 && std::abs(zero) <= 1e-10, viol, inst.label);
  });
  return r;
}

Result mixture_identities(std::uint64_t seed, std::size_t cases) {
  Result r{"mixture identities for entropy and divergence"};
  sweep(seed, cases, true, [&](Rng& rng, const Instance& inst, std::size_t n) {
    const std::size_t m = 1 + rng() % 4;
    std::vector<Distribution> ps;
    // Full-support members keep every divergence finite.
    for (std::size_t i = 0; i < m; ++i) ps.push_back(random_distribution(rng, n));
    const auto w = random_simplex_point(rng, m);
    const auto res = maxent::mixture_identities(*inst.model, ps, w, random_distribution(rng, n));
    const double viol = std::max(res.entropy_identity, res.divergence_identity);
    record(r, viol <= 1e-9, viol, inst.label);
  });
  return r;
}

Result expected_loss_linearity(std::uint64_t seed, std::size_t cases) {
  Result r{"expected loss is linear in P"};
  sweep(seed, cases, false, [&](Rng& rng, const Instance& inst, std::size_t n) {
    const auto p = random_distribution(rng, n);
    const auto q = random_distribution(rng, n);
    const Act a = inst.model->bayes_act(random_distribution(rng, n)).act;
    const double lam = std::uniform_real_distribution<double>(0, 1)(rng);
    const double lhs = expected_loss(mixture(p, q, lam), a, *inst.model).value();
    const double rhs = (1 - lam) * expected_loss(p, a, *inst.model).value() +
                       lam * expected_loss(q, a, *inst.model).value();
    const double viol = std::abs(lhs - rhs);
    record(r, viol <= 1e-12 * (1 + std::abs(rhs)), viol, inst.label);
  });
  return r;
}

Result relative_bayes_invariance(std::uint64_t seed, std::size_t cases) {
  Result r{"relative model keeps Bayes acts and discrepancies"};
  sweep(seed, cases, false, [&](Rng& rng, const Instance& inst, std::size_t n) {
    const Act zeta0 = inst.model->bayes_act(random_distribution(rng, n)).act;
    const auto rel = relative_model(inst.model, zeta0);
    const auto p = random_distribution(rng, n, 0.2);
    const Act a = inst.model->bayes_act(random_distribution(rng, n)).act;
    const auto base_b = inst.model->bayes_act(p).act;
    const auto rel_b = rel->bayes_act(p).act;
    double viol = 0;
    for (std::size_t i = 0; i < base_b.payload.size(); ++i)
      viol = std::max(viol, std::abs(base_b.payload[i] - rel_b.payload[i]));
    const ExtReal d0 = discrepancy(p, a, *inst.model);
    const ExtReal d1 = discrepancy(p, a, *rel);
    if (d0.is_finite() != d1.is_finite()) {
      viol = INFINITY;
    } else if (d0.is_finite()) {
      viol = std::max(viol, std::abs(d0.value() - d1.value()));
    }
    record(r, viol <= 1e-12, viol, inst.label);
  });
  return r;
}

Result bregman_specializations(std::uint64_t seed, std::size_t cases) {
  Result r{"Bregman scores reproduce log and Brier"};
  Rng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t n = 2 + c % 5;
    const SampleSpace space = SampleSpace::indexed(n);
    const auto counting = BaseMeasure::counting(n);
    const auto q = random_distribution(rng, n, 0.2);
    double viol = 0;
    if (c % 2 == 0) {
      const auto a = bregman_model(space, counting, ConvexGenerator::entropy());
      const auto b = log_model(space, counting);
      const auto la = a->loss_vector(a->act_for(q));
      const auto lb = b->loss_vector(b->act_for(q));
      for (std::size_t x = 0; x < n; ++x) {
        if (la[x].is_finite() != lb[x].is_finite()) viol = INFINITY;
        else if (la[x].is_finite()) viol = std::max(viol, std::abs(la[x].value() - lb[x].value()));
      }
    } else {
      const auto a = bregman_model(space, counting, ConvexGenerator::square(-1.0 / static_cast<double>(n)));
      const auto b = brier_model(space);
      const auto la = a->loss_vector(a->act_for(q));
      const auto lb = b->loss_vector(b->act_for(q));
      for (std::size_t x = 0; x < n; ++x) viol = std::max(viol, std::abs(la[x].value() - lb[x].value()));
    }
    record(r, viol <= 1e-9, viol, c % 2 == 0 ? "log" : "brier");
  }
  return r;
}

std::vector<Result> all(std::uint64_t seed, std::size_t cases) {
  return {entropy_concavity(seed, cases),         propriety_margins(seed + 1, cases),
          discrepancy_nonnegative(seed + 2, cases), mixture_identities(seed + 3, cases),
          expected_loss_linearity(seed + 4, cases), relative_bayes_invariance(seed + 5, cases),
          bregman_specializations(seed + 6, cases)};
}

}  // namespace props

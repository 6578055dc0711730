#include "maxent/derived.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/divergence.hpp"
#include "maxent/kernels.hpp"
#include "maxent/numeric.hpp"

namespace maxent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void finish(CapacityResult& r, const StatModel& sm) {
  r.derived_losses.clear();
  double top = -kInf;
  for (std::size_t w = 0; w < sm.omegas.size(); ++w) {
    const ExtReal d = derived_loss(sm, w, r.act);
    r.derived_losses.push_back(d.is_finite() ? d.value() : kInf);
    top = std::max(top, r.derived_losses.back());
  }
  r.gap = top - r.value;
  const double tol = 1e-6 * std::max(1.0, std::abs(r.value));
  r.upsilon.clear();
  r.upsilon_mass = 0.0;
  for (std::size_t w = 0; w < sm.omegas.size(); ++w) {
    if (std::abs(r.derived_losses[w] - r.value) <= tol) {
      r.upsilon.push_back(w);
      r.upsilon_mass += r.prior[w];
    }
  }
}

}  // namespace

StatModel make_stat_model(LossModelPtr model, std::vector<Distribution> omegas,
                          std::vector<std::string> labels) {
  if (!model) throw Error(ErrorCode::InvalidArgument, "statistical model needs a loss model");
  if (omegas.empty()) throw Error(ErrorCode::InvalidArgument, "statistical model is empty");
  for (const auto& p : omegas)
    if (p.size() != model->outcomes())
      throw Error(ErrorCode::DimensionMismatch, "member size differs from the sample space");
  if (labels.empty())
    for (std::size_t i = 0; i < omegas.size(); ++i) labels.push_back("w" + std::to_string(i));
  if (labels.size() != omegas.size())
    throw Error(ErrorCode::DimensionMismatch, "one label per member");
  return StatModel{std::move(omegas), std::move(labels), std::move(model)};
}

ExtReal derived_loss(const StatModel& sm, std::size_t omega, const Act& act) {
  if (omega >= sm.omegas.size()) throw Error(ErrorCode::InvalidArgument, "member index");
  return discrepancy(sm.omegas[omega], act, *sm.model);
}

Distribution mixture_of(const StatModel& sm, const Distribution& prior) {
  if (prior.size() != sm.omegas.size()) throw Error(ErrorCode::DimensionMismatch, "prior size");
  std::vector<double> w(sm.model->outcomes(), 0.0);
  for (std::size_t i = 0; i < prior.size(); ++i)
    if (prior[i] > 0.0) kernels::axpby(prior[i], sm.omegas[i].weights(), 1.0, w);
  return renormalized(w);
}

double value_of_information(const StatModel& sm, const Distribution& prior) {
  double v = sm.model->entropy(mixture_of(sm, prior));
  for (std::size_t i = 0; i < prior.size(); ++i)
    if (prior[i] > 0.0) v -= prior[i] * sm.model->entropy(sm.omegas[i]);
  return v;
}

CapacityResult capacity_solve(const StatModel& sm, double tol, std::size_t max_iter) {
  const std::size_t m = sm.omegas.size();
  std::vector<double> h(m);
  for (std::size_t i = 0; i < m; ++i) h[i] = sm.model->entropy(sm.omegas[i]);

  numeric::FwProblem prob;
  prob.atoms = m;
  prob.eval = [&](std::span<const double> w, std::vector<double>& grad) {
    const Distribution prior = renormalized(w);
    const Distribution mix = mixture_of(sm, prior);
    const auto bayes = sm.model->bayes_act(mix);
    const auto losses = sm.model->loss_vector(bayes.act);
    double value = bayes.entropy;
    for (std::size_t i = 0; i < m; ++i) {
      const ExtReal l = expected_loss(sm.omegas[i], losses);
      grad[i] = l.is_finite() ? l.value() - h[i] : kInf;
      if (prior[i] > 0.0) value -= prior[i] * h[i];
    }
    return value;
  };
  numeric::FwOptions opts{tol, max_iter, true};
  const auto fw = numeric::pairwise_frank_wolfe(
      prob, std::vector<double>(m, 1.0 / static_cast<double>(m)), opts);

  const Distribution prior = renormalized(fw.w);
  CapacityResult r{prior, sm.model->bayes_act(mixture_of(sm, prior)).act};
  r.value = value_of_information(sm, prior);
  r.iterations = fw.iterations;
  r.converged = fw.converged;
  finish(r, sm);
  return r;
}

CapacityResult blahut_arimoto(const StatModel& sm, double tol, std::size_t max_iter) {
  if (sm.model->family() != LossFamily::Log)
    throw Error(ErrorCode::InvalidArgument, "Blahut-Arimoto needs the log score");
  const std::size_t m = sm.omegas.size();
  const std::size_t n = sm.model->outcomes();
  std::vector<double> pi(m, 1.0 / static_cast<double>(m)), d(m), q(n);

  auto kl_to_mixture = [&] {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t x = 0; x < n; ++x) q[x] += pi[i] * sm.omegas[i][x];
    for (std::size_t i = 0; i < m; ++i) {
      d[i] = 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        const double p = sm.omegas[i][x];
        if (p > 0.0) d[i] += p * std::log(p / q[x]);
      }
    }
  };

  std::size_t it = 0;
  bool converged = false;
  for (; it < max_iter; ++it) {
    kl_to_mixture();
    double mean = 0.0, top = -kInf;
    for (std::size_t i = 0; i < m; ++i) {
      mean += pi[i] * d[i];
      top = std::max(top, d[i]);
    }
    if (top - mean <= tol) {
      converged = true;
      break;
    }
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      pi[i] *= std::exp(d[i] - top);
      z += pi[i];
    }
    for (double& v : pi) v /= z;
  }
  const Distribution prior = renormalized(pi);
  CapacityResult r{prior, sm.model->bayes_act(mixture_of(sm, prior)).act};
  r.value = value_of_information(sm, prior);
  r.iterations = it;
  r.converged = converged;
  finish(r, sm);
  return r;
}

EqualizationReport equalization_report(const CapacityResult& result, const StatModel& sm) {
  EqualizationReport rep;
  double lo = kInf, hi = -kInf;
  rep.equalizer = true;
  for (std::size_t w = 0; w < sm.omegas.size(); ++w) {
    const ExtReal d = derived_loss(sm, w, result.act);
    rep.losses.push_back(d.is_finite() ? d.value() : kInf);
    if (rep.losses.back() < result.value - 1e-5) rep.equalizer = false;
  }
  for (std::size_t w : result.upsilon) {
    lo = std::min(lo, rep.losses[w]);
    hi = std::max(hi, rep.losses[w]);
  }
  rep.spread_on_upsilon = result.upsilon.empty() ? 0.0 : hi - lo;
  rep.constant_on_upsilon = rep.spread_on_upsilon <= 1e-5;
  return rep;
}

}  // namespace maxent

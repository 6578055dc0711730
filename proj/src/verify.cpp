#include "maxent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/maxent.hpp"
#include "maxent/random.hpp"

namespace maxent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double worst_vertex_loss(const VertexSet& verts, const std::vector<ExtReal>& losses) {
  double worst = -kInf;
  for (const auto& v : verts.vertices) {
    const ExtReal l = expected_loss(v, losses);
    worst = std::max(worst, l.is_finite() ? l.value() : kInf);
  }
  return worst;
}

}  // namespace

GameSolution lp_game_value(const MatrixGame& game) {
  const auto sol = numeric::solve_matrix_game(game.payoff);
  GameSolution out;
  out.value = sol.value;
  out.row_strategy = sol.row;
  out.col_strategy = sol.col;
  const std::size_t m = game.payoff.size();
  const std::size_t n = game.payoff.front().size();
  double row_min = kInf, col_max = -kInf;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += sol.row[i] * game.payoff[i][j];
    row_min = std::min(row_min, s);
  }
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += game.payoff[i][j] * sol.col[j];
    col_max = std::max(col_max, s);
  }
  out.row_margin = sol.value - row_min;
  out.col_margin = col_max - sol.value;
  return out;
}

UpperValue restricted_upper_value(const LossModel& model, const GammaTau& g, std::uint64_t seed) {
  const VertexSet verts = vertices(g);
  const SaddlePoint sp = solve(model, g);
  UpperValue out;
  out.h = sp.value;

  if (auto losses = model.finite_act_losses()) {
    MatrixGame game;
    const std::size_t acts = losses->front().size();
    game.payoff.assign(verts.size(), std::vector<double>(acts, 0.0));
    for (std::size_t v = 0; v < verts.size(); ++v)
      for (std::size_t j = 0; j < acts; ++j)
        for (std::size_t x = 0; x < g.outcomes(); ++x)
          game.payoff[v][j] += verts.vertices[v][x] * (*losses)[x][j];
    out.value = lp_game_value(game).value;
    out.exact = true;
    out.acts = acts;
  } else {
    std::vector<Act> candidates{sp.zeta_star};
    for (const auto& v : verts.vertices) candidates.push_back(model.bayes_act(v).act);
    Rng rng(seed);
    for (int i = 0; i < 64; ++i) {
      const Distribution q = random_distribution(rng, g.outcomes(), i % 4 == 3 ? 0.3 : 0.0);
      candidates.push_back(model.distribution_acts() ? model.act_for(q) : model.bayes_act(q).act);
    }
    out.value = kInf;
    for (const auto& a : candidates)
      out.value = std::min(out.value, worst_vertex_loss(verts, model.loss_vector(a)));
    out.acts = candidates.size();
  }
  const auto report = verify_saddle(model, g, sp.p_star, sp.zeta_star);
  out.certified = report.passed() && std::abs(out.value - sp.value) <= 1e-7;
  return out;
}

SaddleReport verify_saddle(const LossModel& model, const GammaTau& g, const Distribution& p_star,
                           const Act& zeta_star) {
  SaddleReport r;
  const auto losses = model.loss_vector(zeta_star);
  const ExtReal at_star = expected_loss(p_star, losses);
  r.in_polytope = contains(g, p_star);
  if (!at_star.is_finite()) {
    r.bayes_margin = kInf;
    r.worst_margin = kInf;
    r.equalizer_spread = kInf;
    return r;
  }
  r.bayes_margin = at_star.value() - model.entropy(p_star);
  r.bayes_ok = std::abs(r.bayes_margin) <= 1e-8;

  const VertexSet verts = try_vertices(g);
  double lo = kInf, hi = -kInf;
  for (const auto& v : verts.vertices) {
    const ExtReal l = expected_loss(v, losses);
    const double lv = l.is_finite() ? l.value() : kInf;
    lo = std::min(lo, lv);
    hi = std::max(hi, lv);
  }
  if (verts.empty()) {
    r.worst_margin = kInf;
    r.equalizer_spread = kInf;
    return r;
  }
  r.worst_margin = hi - at_star.value();
  r.worst_ok = r.worst_margin <= 1e-7;
  r.equalizer_spread = std::isfinite(hi) ? hi - lo : kInf;
  r.equalizer = r.equalizer_spread <= 1e-8;
  return r;
}

USetReport u_set_check(const LossModel& model, const Act& zeta_star, double h_star,
                       const Distribution& p_star, const GammaTau* g) {
  USetReport r;
  const auto losses = model.loss_vector(zeta_star);
  for (std::size_t x = 0; x < losses.size(); ++x) {
    if (losses[x].is_finite() && std::abs(losses[x].value() - h_star) <= 1e-8) {
      r.u.push_back(x);
      r.mass += p_star[x];
    }
  }
  r.supported = r.mass >= 1.0 - 1e-8;
  r.applicable = true;
  if (g) {
    const VertexSet verts = try_vertices(*g);
    r.applicable = !verts.empty();
    for (const auto& s : verts.supports) r.applicable = r.applicable && s.size() == 1;
  }
  return r;
}

}  // namespace maxent

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "maxent/divergence.hpp"
#include "maxent/kernels.hpp"
#include "maxent/maxent.hpp"
#include "maxent/numeric.hpp"
#include "saddle_internal.hpp"

namespace maxent {
namespace detail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLinearTol = 1e-7;

numeric::Rows polytope_equalities(const Statistic& t) {
  numeric::Rows a(t.dim() + 1, std::vector<double>(t.outcomes(), 1.0));
  for (std::size_t j = 0; j < t.dim(); ++j) {
    const auto row = t.row(j);
    a[j + 1].assign(row.begin(), row.end());
  }
  return a;
}

std::vector<double> polytope_rhs(const std::vector<double>& tau) {
  std::vector<double> b{1.0};
  b.insert(b.end(), tau.begin(), tau.end());
  return b;
}

void add_nonnegativity(numeric::Rows& a_in, std::vector<double>& b_in, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n, 0.0);
    row[i] = -1.0;
    a_in.push_back(std::move(row));
    b_in.push_back(0.0);
  }
}

std::optional<std::vector<double>> solve_dual_qp(const numeric::Rows& eq_a,
                                                 const std::vector<double>& eq_b,
                                                 const numeric::Rows& in_a,
                                                 const std::vector<double>& in_b, double slack,
                                                 bool band, std::size_t k) {
  numeric::ProjectionProblem qp;
  qp.target.assign(k, 0.0);
  if (band) {
    for (std::size_t r = 0; r < eq_a.size(); ++r) {
      qp.a_in.push_back(eq_a[r]);
      qp.b_in.push_back(eq_b[r] + slack);
      std::vector<double> neg = eq_a[r];
      for (double& v : neg) v = -v;
      qp.a_in.push_back(std::move(neg));
      qp.b_in.push_back(-eq_b[r] + slack);
    }
  } else {
    qp.a_eq = eq_a;
    qp.b_eq = eq_b;
  }
  for (std::size_t r = 0; r < in_a.size(); ++r) {
    qp.a_in.push_back(in_a[r]);
    qp.b_in.push_back(in_b[r] + slack);
  }
  const auto res = numeric::project(qp);
  if (!res.feasible) return std::nullopt;
  return res.x;
}

}  // namespace

std::optional<DualCoefficients> fit_dual(const std::vector<ExtReal>& loss, const Statistic& t,
                                         const std::vector<std::size_t>& support, double tol) {
  if (support.empty()) return std::nullopt;
  const std::size_t n = t.outcomes();
  const std::size_t k = t.dim();
  for (const auto& l : loss)
    if (!l.is_finite()) return std::nullopt;

  const std::size_t r = support.front();
  const double lr = loss[r].value();
  std::vector<bool> on(n, false);
  for (std::size_t x : support) on[x] = true;

  numeric::Rows eq_a, in_a;
  std::vector<double> eq_b, in_b;
  for (std::size_t x = 0; x < n; ++x) {
    if (x == r) continue;
    std::vector<double> d(k);
    for (std::size_t j = 0; j < k; ++j) d[j] = t(j, x) - t(j, r);
    const double e = loss[x].value() - lr;
    if (on[x]) {
      eq_a.push_back(std::move(d));
      eq_b.push_back(e);
    } else {
      for (double& v : d) v = -v;
      in_a.push_back(std::move(d));
      in_b.push_back(-e);
    }
  }

  auto satisfied = [&](const std::vector<double>& beta) {
    for (std::size_t i = 0; i < eq_a.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) s += eq_a[i][j] * beta[j];
      if (std::abs(s - eq_b[i]) > tol) return false;
    }
    for (std::size_t i = 0; i < in_a.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) s += in_a[i][j] * beta[j];
      if (s > in_b[i] + tol) return false;
    }
    return true;
  };

  std::optional<std::vector<double>> beta;
  if (!eq_a.empty()) {
    const auto ls = numeric::least_squares(eq_a, eq_b);
    if (ls.rank == k) {
      if (ls.residual > tol || !satisfied(ls.x)) return std::nullopt;
      beta = ls.x;
    }
  }
  if (!beta) {
    beta = solve_dual_qp(eq_a, eq_b, in_a, in_b, 0.0, false, k);
    if (!beta || !satisfied(*beta)) beta = solve_dual_qp(eq_a, eq_b, in_a, in_b, tol, true, k);
    if (!beta || !satisfied(*beta)) return std::nullopt;
  }
  DualCoefficients dual;
  dual.beta = *beta;
  dual.beta0 = lr;
  for (std::size_t j = 0; j < k; ++j) dual.beta0 -= dual.beta[j] * t(j, r);
  return dual;
}

std::optional<DualCoefficients> fit_linear(const std::vector<ExtReal>& loss, const Statistic& t) {
  const std::size_t n = t.outcomes();
  const std::size_t k = t.dim();
  numeric::Rows a(n, std::vector<double>(k + 1, 1.0));
  std::vector<double> b(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!loss[x].is_finite()) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) a[x][j + 1] = t(j, x);
    b[x] = loss[x].value();
  }
  const auto ls = numeric::least_squares(a, b);
  if (ls.residual > kLinearTol) return std::nullopt;
  DualCoefficients dual;
  dual.beta0 = ls.x[0];
  dual.beta.assign(ls.x.begin() + 1, ls.x.end());
  return dual;
}

SaddlePoint finalize(const LossModel& model, const GammaTau& g, const VertexSet& verts,
                     Distribution p_star, Act zeta_star, double value, double dual_tol,
                     std::string solver) {
  SaddlePoint sp{std::move(p_star), std::move(zeta_star)};
  sp.value = value;
  sp.solver = std::move(solver);
  const auto losses = model.loss_vector(sp.zeta_star);

  const ExtReal at_star = expected_loss(sp.p_star, losses);
  sp.bayes_margin = at_star.is_finite() ? at_star.value() - model.entropy(sp.p_star) : kInf;

  double lo = kInf, hi = -kInf;
  for (const auto& v : verts.vertices) {
    const ExtReal l = expected_loss(v, losses);
    const double lv = l.is_finite() ? l.value() : kInf;
    lo = std::min(lo, lv);
    hi = std::max(hi, lv);
  }
  sp.worst_margin = hi - value;
  sp.equalizer_spread = std::isfinite(hi) ? hi - lo : kInf;
  sp.flags.is_equalizer = sp.equalizer_spread <= 1e-8;
  sp.flags.tau_interior = hull_interior(g.statistic(), g.tau()) == HullPosition::Interior;

  if (auto lin = fit_linear(losses, g.statistic())) {
    sp.flags.is_linear = true;
    sp.dual = std::move(lin);
  } else {
    sp.dual = fit_dual(losses, g.statistic(), sp.p_star.support(), dual_tol);
  }
  sp.flags.is_regular = sp.dual.has_value();
  return sp;
}

}  // namespace detail

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ----------------------------------------------------------------------------
// Brier: the maximizer is affine in t on its support.

SaddlePoint brier_impl(const LossModel& model, const GammaTau& g) {
  const VertexSet verts = vertices(g);
  const auto& t = g.statistic();
  const std::size_t n = g.outcomes();
  const std::size_t k = g.dim();
  const auto rhs = detail::polytope_rhs(g.tau());

  std::optional<std::vector<double>> best;
  double best_h = -kInf;
  // Every nonempty support, largest first, lexicographic within a size.
  for (std::size_t size = n; size >= 1; --size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) s.push_back(i);
      // Gram system: sum_{x in S} f(x) f(x)' alpha = (1, tau), f(x) = (1, t(x)).
      numeric::Rows gram(k + 1, std::vector<double>(k + 1, 0.0));
      for (std::size_t x : s) {
        std::vector<double> f(k + 1, 1.0);
        for (std::size_t j = 0; j < k; ++j) f[j + 1] = t(j, x);
        for (std::size_t a = 0; a <= k; ++a)
          for (std::size_t b = 0; b <= k; ++b) gram[a][b] += f[a] * f[b];
      }
      const auto ls = numeric::least_squares(gram, rhs, 1e-12);
      if (ls.residual > 1e-10) continue;
      std::vector<double> p(n, 0.0);
      bool ok = true;
      for (std::size_t x : s) {
        double v = ls.x[0];
        for (std::size_t j = 0; j < k; ++j) v += ls.x[j + 1] * t(j, x);
        if (v < -kClampTol) {
          ok = false;
          break;
        }
        p[x] = std::max(v, 0.0);
      }
      if (!ok) continue;
      const double h = 1.0 - kernels::dot(p, p);
      if (h > best_h + 1e-15) {
        best_h = h;
        best = std::move(p);
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  if (!best) throw Error(ErrorCode::Infeasible, "no nonnegative affine candidate");
  Distribution p = validate_distribution(*best, n);
  auto bayes = model.bayes_act(p);
  return detail::finalize(model, g, verts, p, bayes.act, bayes.entropy, 1e-9, "brier");
}

// ----------------------------------------------------------------------------
// Log score: exponential family on the face spanned by the polytope.

struct ExpFamilyPoint {
  double kappa = 0.0;
  std::vector<double> q;     // over the face
  std::vector<double> mean;  // E_q t
  double objective = 0.0;    // kappa + beta' tau
  std::vector<double> grad;  // tau - mean
};

class FaceFamily {
 public:
  FaceFamily(const Statistic& t, const BaseMeasure& mu, std::vector<std::size_t> face,
             std::vector<double> tau)
      : t_(t), face_(std::move(face)), tau_(std::move(tau)) {
    for (std::size_t x : face_) log_mu_.push_back(std::log(mu[x]));
  }

  std::size_t k() const { return t_.dim(); }

  ExpFamilyPoint eval(const std::vector<double>& beta) const {
    ExpFamilyPoint e;
    const std::size_t m = face_.size();
    std::vector<double> a(m);
    double amax = -kInf;
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = log_mu_[i];
      for (std::size_t j = 0; j < k(); ++j) a[i] -= beta[j] * t_(j, face_[i]);
      amax = std::max(amax, a[i]);
    }
    double z = 0.0;
    for (double v : a) z += std::exp(v - amax);
    e.kappa = amax + std::log(z);
    e.q.resize(m);
    for (std::size_t i = 0; i < m; ++i) e.q[i] = std::exp(a[i] - e.kappa);
    e.mean.assign(k(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k(); ++j) e.mean[j] += e.q[i] * t_(j, face_[i]);
    e.objective = e.kappa;
    e.grad.resize(k());
    for (std::size_t j = 0; j < k(); ++j) {
      e.objective += beta[j] * tau_[j];
      e.grad[j] = tau_[j] - e.mean[j];
    }
    return e;
  }

  numeric::Rows covariance(const ExpFamilyPoint& e) const {
    numeric::Rows c(k(), std::vector<double>(k(), 0.0));
    for (std::size_t i = 0; i < face_.size(); ++i)
      for (std::size_t a = 0; a < k(); ++a)
        for (std::size_t b = 0; b < k(); ++b)
          c[a][b] += e.q[i] * (t_(a, face_[i]) - e.mean[a]) * (t_(b, face_[i]) - e.mean[b]);
    return c;
  }

 private:
  const Statistic& t_;
  std::vector<std::size_t> face_;
  std::vector<double> tau_;
  std::vector<double> log_mu_;
};

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct LogFit {
  std::vector<double> beta;
  ExpFamilyPoint point;
  std::size_t iterations = 0;
  bool converged = false;
};

constexpr double kGradTol = 1e-10;

LogFit newton(const FaceFamily& fam) {
  LogFit fit;
  fit.beta.assign(fam.k(), 0.0);
  fit.point = fam.eval(fit.beta);
  for (std::size_t it = 0; it < 100; ++it) {
    if (inf_norm(fit.point.grad) <= kGradTol) {
      fit.converged = true;
      return fit;
    }
    fit.iterations = it + 1;
    std::vector<double> neg(fam.k());
    for (std::size_t j = 0; j < fam.k(); ++j) neg[j] = -fit.point.grad[j];
    const auto step = numeric::least_squares(fam.covariance(fit.point), neg, 1e-13).x;
    double slope = 0.0;
    for (std::size_t j = 0; j < fam.k(); ++j) slope += fit.point.grad[j] * step[j];
    if (!(slope < 0.0)) break;
    double alpha = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving, alpha *= 0.5) {
      std::vector<double> trial = fit.beta;
      for (std::size_t j = 0; j < fam.k(); ++j) trial[j] += alpha * step[j];
      auto e = fam.eval(trial);
      const bool decrease = e.objective <= fit.point.objective + 1e-4 * alpha * slope;
      const bool flat = std::abs(e.objective - fit.point.objective) <=
                            1e-15 * std::max(1.0, std::abs(e.objective)) &&
                        inf_norm(e.grad) < inf_norm(fit.point.grad);
      if (std::isfinite(e.objective) && (decrease || flat)) {
        fit.beta = std::move(trial);
        fit.point = std::move(e);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  fit.converged = inf_norm(fit.point.grad) <= kGradTol;
  return fit;
}

// One dimension: the gradient tau - E_beta t is nondecreasing in beta.
LogFit bisection(const FaceFamily& fam) {
  LogFit fit;
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 200 && fam.eval({lo}).grad[0] > 0.0; ++i) lo *= 2.0;
  for (int i = 0; i < 200 && fam.eval({hi}).grad[0] < 0.0; ++i) hi *= 2.0;
  for (int i = 0; i < 300 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (fam.eval({mid}).grad[0] < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++fit.iterations;
  }
  fit.beta = {0.5 * (lo + hi)};
  fit.point = fam.eval(fit.beta);
  fit.converged = inf_norm(fit.point.grad) <= kGradTol;
  return fit;
}

LogFit gradient_descent(const FaceFamily& fam, std::vector<double> beta) {
  LogFit fit;
  fit.beta = std::move(beta);
  fit.point = fam.eval(fit.beta);
  double step = 1.0;
  for (std::size_t it = 0; it < 200000 && inf_norm(fit.point.grad) > kGradTol; ++it) {
    fit.iterations = it + 1;
    double g2 = 0.0;
    for (double v : fit.point.grad) g2 += v * v;
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving, step *= 0.5) {
      std::vector<double> trial = fit.beta;
      for (std::size_t j = 0; j < fam.k(); ++j) trial[j] -= step * fit.point.grad[j];
      auto e = fam.eval(trial);
      if (e.objective <= fit.point.objective - 0.5 * step * g2) {
        fit.beta = std::move(trial);
        fit.point = std::move(e);
        moved = true;
        step *= 2.0;
        break;
      }
    }
    if (!moved) break;
  }
  fit.converged = inf_norm(fit.point.grad) <= kGradTol;
  return fit;
}

SaddlePoint log_impl(const LossModel& model, const GammaTau& g, const BaseMeasure& mu) {
  if (mu.size() != g.outcomes()) throw Error(ErrorCode::DimensionMismatch, "base measure size");
  const VertexSet verts = vertices(g);
  const auto face = verts.maximal_support();
  const std::size_t n = g.outcomes();
  const auto& t = g.statistic();

  if (face.size() == 1) {
    Distribution p = Distribution::point_mass(n, face.front());
    auto bayes = model.bayes_act(p);
    auto sp = detail::finalize(model, g, verts, p, bayes.act, bayes.entropy, 1e-9, "log");
    sp.gap = 0.0;
    return sp;
  }

  FaceFamily fam(t, mu, face, g.tau());
  LogFit fit = newton(fam);
  if (!fit.converged) fit = g.dim() == 1 ? bisection(fam) : gradient_descent(fam, fit.beta);
  if (!fit.converged)
    throw Error(ErrorCode::NewtonDivergence,
                "gradient norm " + std::to_string(inf_norm(fit.point.grad)) + " after fallback");

  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i < face.size(); ++i) w[face[i]] = fit.point.q[i];
  Distribution p = renormalized(w);
  const auto m = moment(p, t);
  if (kernels::max_abs_diff(m, g.tau()) > 1e-8)
    throw Error(ErrorCode::NewtonDivergence, "fitted moments miss the targets");

  auto bayes = model.bayes_act(p);
  const double value = fit.point.objective;
  auto sp = detail::finalize(model, g, verts, p, bayes.act, value, 1e-9, "log");
  sp.iterations = fit.iterations;
  sp.gap = inf_norm(fit.point.grad);
  sp.converged = true;
  if (face.size() == n) {
    // beta0 = kappa and beta from the fit, in the loss = beta0 + beta' t convention.
    DualCoefficients dual{fit.point.kappa, fit.beta};
    sp.dual = dual;
    sp.flags.is_regular = true;
  }
  return sp;
}

// ----------------------------------------------------------------------------
// Zero-one loss: a linear program for P*, then the set of robust acts.

SaddlePoint zero_one_impl(const LossModel& model, const GammaTau& g) {
  const VertexSet verts = vertices(g);
  const std::size_t n = g.outcomes();
  const auto eq_a = detail::polytope_equalities(g.statistic());
  const auto eq_b = detail::polytope_rhs(g.tau());

  // min s  s.t.  p_i <= s,  p in the polytope.
  numeric::LinearProgram lp;
  lp.c.assign(n + 1, 0.0);
  lp.c[n] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n + 1, 0.0);
    row[i] = 1.0;
    row[n] = -1.0;
    lp.a_ub.push_back(std::move(row));
    lp.b_ub.push_back(0.0);
  }
  for (std::size_t r = 0; r < eq_a.size(); ++r) {
    auto row = eq_a[r];
    row.push_back(0.0);
    lp.a_eq.push_back(std::move(row));
    lp.b_eq.push_back(eq_b[r]);
  }
  const auto lpr = numeric::solve_lp(lp);
  if (lpr.status != numeric::LpStatus::Optimal)
    throw Error(ErrorCode::Infeasible, "max-entropy program has no solution");
  const double s_star = lpr.x[n];

  // Minimum-norm member of the optimal face.
  numeric::ProjectionProblem face;
  face.target.assign(n, 0.0);
  face.a_eq = eq_a;
  face.b_eq = eq_b;
  detail::add_nonnegativity(face.a_in, face.b_in, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n, 0.0);
    row[i] = 1.0;
    face.a_in.push_back(std::move(row));
    face.b_in.push_back(s_star + 1e-12);
  }
  const auto proj = numeric::project(face);
  std::vector<double> pw(lpr.x.begin(), lpr.x.begin() + static_cast<long>(n));
  if (proj.feasible) pw = proj.x;
  for (double& v : pw) v = std::max(v, 0.0);
  Distribution p = renormalized(pw);
  const double pmax = *std::max_element(p.vec().begin(), p.vec().end());
  const double value = 1.0 - pmax;
  const auto modes = model.bayes_act_support(p);

  // Robust acts: zeta on the modes with V . zeta >= pmax at every vertex.
  numeric::ProjectionProblem acts;
  acts.target.assign(n, 0.0);
  acts.a_eq.push_back(std::vector<double>(n, 1.0));
  acts.b_eq.push_back(1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(modes.begin(), modes.end(), i) != modes.end()) continue;
    std::vector<double> row(n, 0.0);
    row[i] = 1.0;
    acts.a_eq.push_back(std::move(row));
    acts.b_eq.push_back(0.0);
  }
  detail::add_nonnegativity(acts.a_in, acts.b_in, n);
  for (const auto& v : verts.vertices) {
    std::vector<double> row(v.vec());
    for (double& x : row) x = -x;
    acts.a_in.push_back(std::move(row));
    acts.b_in.push_back(-pmax + 1e-12);
  }

  numeric::ProjectionProblem equalizer = acts;
  for (const auto& v : verts.vertices) {
    equalizer.a_eq.push_back(v.vec());
    equalizer.b_eq.push_back(pmax);
  }
  auto chosen = numeric::project(equalizer);
  if (!chosen.feasible) chosen = numeric::project(acts);
  std::vector<double> zeta = chosen.feasible ? chosen.x : model.bayes_act(p).act.payload;
  for (double& z : zeta) z = std::max(z, 0.0);
  zeta = renormalized(zeta).vec();

  auto sp = detail::finalize(model, g, verts, p, Act{ActKind::Randomized, zeta}, value, 1e-9,
                             "zero_one");
  sp.iterations = lpr.pivots;

  // Coordinate ranges over the robust act set.
  if (chosen.feasible) {
    ActFamily fam;
    fam.lower.resize(n);
    fam.upper.resize(n);
    bool spread = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (int sense : {1, -1}) {
        numeric::LinearProgram box;
        box.c.assign(n, 0.0);
        box.c[i] = sense;
        box.a_eq = acts.a_eq;
        box.b_eq = acts.b_eq;
        for (std::size_t r = n; r < acts.a_in.size(); ++r) {
          box.a_ub.push_back(acts.a_in[r]);
          box.b_ub.push_back(acts.b_in[r]);
        }
        const auto res = numeric::solve_lp(box);
        const double v = res.status == numeric::LpStatus::Optimal ? res.x[i] : zeta[i];
        (sense == 1 ? fam.lower : fam.upper)[i] = v;
      }
      if (fam.upper[i] - fam.lower[i] > 1e-9) spread = true;
    }
    if (spread) sp.family = std::move(fam);
  }
  return sp;
}

// ----------------------------------------------------------------------------
// Generic models.

SaddlePoint polyhedral_impl(const LossModel& model, const GammaTau& g, const VertexSet& verts,
                            const std::vector<std::vector<double>>& losses) {
  const std::size_t acts = losses.front().size();
  numeric::Rows payoff(verts.size(), std::vector<double>(acts, 0.0));
  for (std::size_t v = 0; v < verts.size(); ++v)
    for (std::size_t j = 0; j < acts; ++j)
      for (std::size_t x = 0; x < g.outcomes(); ++x)
        payoff[v][j] += verts.vertices[v][x] * losses[x][j];
  const auto game = numeric::solve_matrix_game(payoff);
  std::vector<double> w(g.outcomes(), 0.0);
  for (std::size_t v = 0; v < verts.size(); ++v)
    kernels::axpby(game.row[v], verts.vertices[v].weights(), 1.0, w);
  Distribution p = renormalized(w);
  Act zeta = model.mix_pure_acts(game.col);
  return detail::finalize(model, g, verts, p, zeta, game.value, 1e-9, "generic_lp");
}

SaddlePoint frank_wolfe_impl(const LossModel& model, const GammaTau& g, const VertexSet& verts,
                             const SolveOptions& options) {
  const std::size_t n = g.outcomes();
  auto mixture_of = [&](std::span<const double> w) {
    std::vector<double> p(n, 0.0);
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (w[v] > 0.0) kernels::axpby(w[v], verts.vertices[v].weights(), 1.0, p);
    return renormalized(p);
  };
  numeric::FwProblem prob;
  prob.atoms = verts.size();
  prob.eval = [&](std::span<const double> w, std::vector<double>& grad) {
    const Distribution p = mixture_of(w);
    const auto bayes = model.bayes_act(p);
    const auto losses = model.loss_vector(bayes.act);
    for (std::size_t v = 0; v < verts.size(); ++v) {
      const ExtReal l = expected_loss(verts.vertices[v], losses);
      grad[v] = l.is_finite() ? l.value() : kInf;
    }
    return bayes.entropy;
  };
  std::vector<double> w0(verts.size(), 1.0 / static_cast<double>(verts.size()));
  const auto fw = numeric::pairwise_frank_wolfe(prob, w0, {options.tol, options.max_iter});
  Distribution p = mixture_of(fw.w);
  auto bayes = model.bayes_act(p);
  auto sp = detail::finalize(model, g, verts, p, bayes.act, bayes.entropy, 1e-6, "generic_fw");
  sp.iterations = fw.iterations;
  sp.gap = fw.gap;
  sp.converged = fw.converged;
  return sp;
}

}  // namespace

SaddlePoint solve_brier(const GammaTau& g) {
  const auto model = brier_model(g.space());
  return brier_impl(*model, g);
}

SaddlePoint solve_log(const GammaTau& g, const BaseMeasure& mu) {
  const auto model = log_model(g.space(), mu);
  return log_impl(*model, g, mu);
}

SaddlePoint solve_zero_one(const GammaTau& g) {
  const auto model = zero_one_model(g.space());
  return zero_one_impl(*model, g);
}

SaddlePoint solve_generic(const LossModel& model, const GammaTau& g, const SolveOptions& options) {
  if (model.outcomes() != g.outcomes())
    throw Error(ErrorCode::DimensionMismatch, "model and constraint sizes differ");
  const VertexSet verts = vertices(g);
  if (auto losses = model.finite_act_losses()) return polyhedral_impl(model, g, verts, *losses);
  return frank_wolfe_impl(model, g, verts, options);
}

SaddlePoint solve(const LossModel& model, const GammaTau& g, const SolveOptions& options) {
  if (model.outcomes() != g.outcomes())
    throw Error(ErrorCode::DimensionMismatch, "model and constraint sizes differ");
  switch (model.family()) {
    case LossFamily::Brier: return brier_impl(model, g);
    case LossFamily::Log: return log_impl(model, g, *base_measure_of(model));
    case LossFamily::ZeroOne: return zero_one_impl(model, g);
    default: return solve_generic(model, g, options);
  }
}

double specific_entropy(const LossModel& model, const Statistic& t, std::span<const double> tau) {
  try {
    const GammaTau g(SampleSpace::indexed(t.outcomes()), t, {tau.begin(), tau.end()});
    if (try_vertices(g).empty()) return -kInf;
    return solve(model, g).value;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infeasible) return -kInf;
    throw;
  }
}

}  // namespace maxent

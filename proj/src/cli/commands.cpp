#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "maxent/cli.hpp"
#include "maxent/constraints.hpp"
#include "maxent/derived.hpp"
#include "maxent/divergence.hpp"
#include "maxent/random.hpp"

namespace maxent::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::abs(v) < 1e-15) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Rounds to the 12 significant digits used everywhere in the output.
double r12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(num(v).c_str(), nullptr);
}

Json reals(std::span<const double> v, double scale = 1.0) {
  Json a = Json::array();
  for (double x : v) a.push_back(r12(x / scale));
  return a;
}

Json tau_json(const std::vector<double>& tau) { return tau.size() == 1 ? Json(r12(tau[0])) : reals(tau); }

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Infeasible: return kInfeasible;
    case ErrorCode::NewtonDivergence:
    case ErrorCode::MaxIterExceeded:
    case ErrorCode::SimplexCycle: return kSaddleFailure;
    default: return kParse;
  }
}

/// Runs body with the output stream chosen by --out, mapping errors to exit codes.
int guarded(const Options& opt, std::ostream& out, std::ostream& err,
            const std::function<int(std::ostream&)>& body) {
  try {
    if (opt.out.empty()) return body(out);
    std::ofstream file(opt.out);
    if (!file) {
      err << "error: cannot write " << opt.out << "\n";
      return kParse;
    }
    return body(file);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }
}

const Statistic& statistic_of(const Problem& p) {
  if (!p.statistic) throw Error(ErrorCode::ParseError, "the problem file has no statistic");
  return *p.statistic;
}

double output_scale(const ProblemSpec& spec, bool bits) {
  if (!bits) return 1.0;
  if (spec.loss.kind != "log") throw Error(ErrorCode::ParseError, "--bits applies to the log loss only");
  return std::numbers::ln2;
}

/// Maximal runs of consecutive grid rows where flag holds, as [from, to] pairs.
Json regions(const std::vector<std::vector<double>>& taus, const std::vector<bool>& flag) {
  Json out = Json::array();
  for (std::size_t i = 0; i < flag.size();) {
    if (!flag[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < flag.size() && flag[j + 1]) ++j;
    out.push_back({tau_json(taus[i]), tau_json(taus[j])});
    i = j + 1;
  }
  return out;
}

struct SuiteOutcome {
  Json report;
  bool passed = true;
  std::string witness;

  void fail(const std::string& what) {
    if (passed) witness = what;
    passed = false;
  }
};

std::string at_tau(const std::string& what, const std::vector<double>& tau) {
  std::string s = what + " at tau=";
  for (std::size_t i = 0; i < tau.size(); ++i) s += (i ? "," : "") + num(tau[i]);
  return s;
}

SuiteOutcome saddle_suite(const Problem& p, const std::vector<std::vector<double>>& taus, const SolveOptions& so) {
  SuiteOutcome o;
  Json rows = Json::array();
  for (const auto& tau : taus) {
    Json row{{"tau", tau_json(tau)}};
    try {
      const auto rec = solve_record(p, tau, so);
      row["h"] = r12(rec.point->value);
      row["bayes_margin"] = r12(rec.report->bayes_margin);
      row["worst_margin"] = r12(rec.report->worst_margin);
      row["passed"] = rec.report->passed();
      if (!rec.report->passed()) o.fail(at_tau("saddle conditions fail", tau));
    } catch (const Error& e) {
      row["error"] = std::string(to_string(e.code()));
      row["passed"] = false;
      o.fail(at_tau(std::string(to_string(e.code())), tau));
    }
    rows.push_back(row);
  }
  o.report["rows"] = rows;
  return o;
}

SuiteOutcome pythagorean_suite(const Problem& p, const std::vector<std::vector<double>>& taus,
                               const SolveOptions& so) {
  SuiteOutcome o;
  Act zeta0;
  if (p.reference) zeta0 = *p.reference;
  else if (auto neutral = find_neutral(*p.base)) zeta0 = *neutral;
  else zeta0 = p.base->bayes_act(Distribution::uniform(p.space.size())).act;
  Json rows = Json::array();
  std::vector<bool> equal;
  for (const auto& tau : taus) {
    const GammaTau g(p.space, statistic_of(p), tau);
    const auto sp = solve(*p.base, g, so);
    const auto rep = pythagorean_check(*p.base, vertices(g).vertices, sp.p_star, sp.zeta_star, zeta0);
    rows.push_back({{"tau", tau_json(tau)},
                    {"min_slack", r12(rep.min_slack)},
                    {"max_slack", r12(rep.max_slack)},
                    {"holds", rep.holds},
                    {"equality", rep.equality},
                    {"equalizer", sp.flags.is_equalizer}});
    equal.push_back(rep.equality);
    if (!rep.holds) o.fail(at_tau("negative slack", tau));
    if (rep.equality != sp.flags.is_equalizer) o.fail(at_tau("equality and equalizer flags differ", tau));
  }
  o.report["reference_act"] = reals(zeta0.payload);
  o.report["equality_region"] = regions(taus, equal);
  o.report["rows"] = rows;
  return o;
}

SuiteOutcome equalizer_suite(const Problem& p, const std::vector<std::vector<double>>& taus,
                             const SolveOptions& so) {
  SuiteOutcome o;
  Json rows = Json::array();
  std::vector<bool> eq;
  for (const auto& tau : taus) {
    const GammaTau g(p.space, statistic_of(p), tau);
    const auto sp = solve(*p.model, g, so);
    const auto rep = equalizer_check(*p.model, vertices(g).vertices, sp.zeta_star);
    rows.push_back({{"tau", tau_json(tau)},
                    {"spread", r12(rep.spread)},
                    {"level", r12(rep.level)},
                    {"equalizer", rep.is_equalizer},
                    {"flag", sp.flags.is_equalizer},
                    {"linear", sp.flags.is_linear}});
    eq.push_back(rep.is_equalizer);
    if (rep.is_equalizer != sp.flags.is_equalizer) o.fail(at_tau("equalizer check and flag differ", tau));
    if (sp.flags.is_linear && !rep.is_equalizer) o.fail(at_tau("linear act is not an equalizer", tau));
  }
  o.report["equalizer_region"] = regions(taus, eq);
  o.report["rows"] = rows;
  return o;
}

SuiteOutcome conjugacy_suite(const Problem& p, const std::vector<std::vector<double>>& taus,
                             const std::optional<GridSpec>& beta_grid) {
  SuiteOutcome o;
  const Statistic& t = statistic_of(p);
  if (t.dim() != 1) throw Error(ErrorCode::ParseError, "the conjugacy suite needs a one-row statistic");
  const GridSpec bg = beta_grid.value_or(GridSpec{-4.0, 4.0, 399});
  std::vector<std::vector<double>> inner;
  for (const auto& tau : taus)
    if (hull_interior(t, tau) == HullPosition::Interior) inner.push_back(tau);
  const auto rep = conjugacy_check(*p.model, t, inner, linear_grid(bg.from, bg.to, bg.steps));
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row{{"tau", tau_json(r.sigma)},
             {"h", r12(r.h)},
             {"grid_min", r12(r.grid_min)},
             {"grid_residual", r12(r.grid_residual)}};
    row["matched_residual"] = r.matched_residual ? Json(r12(*r.matched_residual)) : Json();
    rows.push_back(row);
  }
  o.report["beta_grid"] = {{"from", bg.from}, {"to", bg.to}, {"steps", bg.steps}};
  o.report["skipped_boundary_rows"] = taus.size() - inner.size();
  o.report["max_grid_residual"] = r12(rep.max_grid_residual);
  o.report["max_matched_residual"] = r12(rep.max_matched_residual);
  o.report["lower_bound_violations"] = rep.lower_bound_violations;
  o.report["rows"] = rows;
  if (rep.lower_bound_violations > 0) o.fail("chi below the conjugate lower bound");
  if (rep.max_grid_residual > 1e-3) o.fail("grid residual above 1e-3");
  if (rep.max_matched_residual > 1e-8) o.fail("matched residual above 1e-8");
  return o;
}

/// Seeded identity checks on random distributions for the problem's loss.
SuiteOutcome identities_suite(const Problem& p, std::uint64_t seed, std::size_t cases) {
  SuiteOutcome o;
  const LossModel& m = *p.model;
  const std::size_t n = p.space.size();
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Check {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double worst = 0.0;
  };
  std::vector<Check> checks{{"entropy_concavity"}, {"discrepancy_nonnegative"}, {"bayes_zero"},
                            {"expected_loss_linearity"}, {"propriety"}, {"mixture_identities"}};
  auto record = [&](Check& c, double violation, double tol) {
    ++c.cases;
    if (violation <= tol) return;
    ++c.failures;
    c.worst = std::max(c.worst, violation);
    o.fail(c.name);
  };
  for (std::size_t i = 0; i < cases; ++i) {
    const auto a = random_distribution(rng, n, 0.2);
    const auto b = random_distribution(rng, n, 0.2);
    const double lam = unit(rng);
    const double chord = (1 - lam) * m.entropy(a) + lam * m.entropy(b);
    record(checks[0], chord - m.entropy(mixture(a, b, lam)), 1e-10 * (1 + std::abs(chord)));

    const ExtReal d = discrepancy(a, m.bayes_act(b).act, m);
    record(checks[1], d.is_finite() ? -d.value() : 0.0, 1e-10);
    record(checks[2], std::abs(discrepancy(a, m.bayes_act(a).act, m).value()), 1e-10);

    const auto fa = random_distribution(rng, n);
    const auto fb = random_distribution(rng, n);
    const Act act = m.bayes_act(random_distribution(rng, n)).act;
    const double lhs = expected_loss(mixture(fa, fb, lam), act, m).value();
    const double rhs = (1 - lam) * expected_loss(fa, act, m).value() + lam * expected_loss(fb, act, m).value();
    record(checks[3], std::abs(lhs - rhs), 1e-12 * (1 + std::abs(rhs)));

    if (m.distribution_acts()) {
      const ExtReal own = expected_loss(a, m.act_for(a), m);
      const ExtReal other = expected_loss(a, m.act_for(b), m);
      record(checks[4], other.is_pos_inf() ? 0.0 : own.value() - other.value(), 1e-9);
      const std::vector<Distribution> ps{fa, fb, random_distribution(rng, n)};
      const auto w = random_simplex_point(rng, ps.size());
      const auto res = mixture_identities(m, ps, w, random_distribution(rng, n));
      record(checks[5], std::max(res.entropy_identity, res.divergence_identity), 1e-9);
    }
  }
  Json rows = Json::array();
  for (const auto& c : checks)
    rows.push_back({{"check", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"worst", r12(c.worst)}});
  o.report["seed"] = seed;
  o.report["rows"] = rows;
  return o;
}

}  // namespace

std::string csv_schema_line() { return "#schema maxent-result/1"; }

std::string csv_header(std::size_t k, std::size_t n) {
  std::string h;
  auto col = [&](const std::string& c) { h += (h.empty() ? "" : ",") + c; };
  auto indexed = [&](const std::string& base, std::size_t count, bool bare_if_one) {
    if (bare_if_one && count == 1) return col(base);
    for (std::size_t i = 1; i <= count; ++i) col(base + "_" + std::to_string(i));
  };
  indexed("tau", k, true);
  col("h");
  col("beta0");
  indexed("beta", k, true);
  indexed("p", n, false);
  indexed("zeta", n, false);
  for (const char* c : {"linear", "regular", "equalizer", "interior", "bayes_margin", "worst_margin", "status"}) col(c);
  return h;
}

std::string csv_row(const ResultRecord& r, std::size_t n, double scale) {
  std::string s;
  auto col = [&](const std::string& c) { s += (s.empty() ? "" : ",") + c; };
  const std::size_t k = r.tau.size();
  for (double t : r.tau) col(num(t));
  if (!r.point) {
    for (std::size_t i = 0; i < 2 + k + 2 * n + 6; ++i) col("nan");
    col(r.status);
    return s;
  }
  const auto& sp = *r.point;
  col(num(sp.value / scale));
  col(sp.dual ? num(sp.dual->beta0 / scale) : "nan");
  for (std::size_t j = 0; j < k; ++j) col(sp.dual ? num(sp.dual->beta[j] / scale) : "nan");
  for (std::size_t x = 0; x < n; ++x) col(num(sp.p_star[x]));
  for (std::size_t x = 0; x < n; ++x) col(x < sp.zeta_star.payload.size() ? num(sp.zeta_star.payload[x]) : "nan");
  for (bool f : {sp.flags.is_linear, sp.flags.is_regular, sp.flags.is_equalizer, sp.flags.tau_interior})
    col(f ? "1" : "0");
  col(r.report ? num(r.report->bayes_margin / scale) : "nan");
  col(r.report ? num(r.report->worst_margin / scale) : "nan");
  col(r.status);
  return s;
}

ResultRecord solve_record(const Problem& p, std::span<const double> tau, const SolveOptions& options) {
  const GammaTau g(p.space, statistic_of(p), {tau.begin(), tau.end()});
  ResultRecord r{{tau.begin(), tau.end()}, solve(*p.model, g, options), std::nullopt, "ok"};
  r.report = verify_saddle(*p.model, g, r.point->p_star, r.point->zeta_star);
  if (!r.report->passed()) r.status = "saddle_failure";
  return r;
}

int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(opt, out, err, [&](std::ostream& os) {
    const auto spec = load_spec(opt.spec_path);
    const auto problem = build_problem(spec);
    const double scale = output_scale(spec, opt.bits);
    const std::vector<double> tau = opt.tau ? *opt.tau : tau_points(spec, std::nullopt).front();
    const auto rec = solve_record(problem, tau, {opt.tol, 100000});
    os << csv_schema_line() << "\n" << csv_header(tau.size(), problem.space.size()) << "\n"
       << csv_row(rec, problem.space.size(), scale) << "\n";
    return rec.status == "ok" ? kOk : kSaddleFailure;
  });
}

int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(opt, out, err, [&](std::ostream& os) {
    const auto spec = load_spec(opt.spec_path);
    const auto problem = build_problem(spec);
    const double scale = output_scale(spec, opt.bits);
    const auto taus = tau_points(spec, opt.grid);
    const std::size_t n = problem.space.size();
    os << csv_schema_line() << "\n" << csv_header(taus.front().size(), n) << "\n";
    for (const auto& tau : taus) {
      ResultRecord rec;
      try {
        rec = solve_record(problem, tau, {opt.tol, 100000});
      } catch (const Error& e) {
        rec = ResultRecord{tau, std::nullopt, std::nullopt, std::string(to_string(e.code()))};
      }
      os << csv_row(rec, n, scale) << "\n";
    }
    return kOk;
  });
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(opt, out, err, [&](std::ostream& os) {
    const auto spec = load_spec(opt.spec_path);
    const auto problem = build_problem(spec);
    const SolveOptions so{opt.tol, 100000};
    SuiteOutcome o;
    if (opt.suite == "identities") {
      o = identities_suite(problem, opt.seed, opt.cases);
    } else {
      const auto taus = tau_points(spec, opt.grid);
      if (opt.suite == "saddle") o = saddle_suite(problem, taus, so);
      else if (opt.suite == "pythagorean") o = pythagorean_suite(problem, taus, so);
      else if (opt.suite == "equalizer") o = equalizer_suite(problem, taus, so);
      else if (opt.suite == "conjugacy") o = conjugacy_suite(problem, taus, opt.beta_grid);
      else throw Error(ErrorCode::ParseError, "unknown suite '" + opt.suite + "'");
    }
    Json report;
    report["suite"] = opt.suite;
    report["loss"] = problem.model->name();
    report["passed"] = o.passed;
    report["witness"] = o.passed ? Json() : Json(o.witness);
    for (auto& [key, value] : o.report.items()) report[key] = value;
    os << report.dump(2) << "\n";
    return o.passed ? kOk : kSuiteFailure;
  });
}

int cmd_capacity(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(opt, out, err, [&](std::ostream& os) {
    const auto spec = load_spec(opt.spec_path);
    const auto problem = build_problem(spec);
    const double scale = output_scale(spec, opt.bits);
    if (spec.model.empty()) throw Error(ErrorCode::Infeasible, "the problem file has no model list");
    std::vector<Distribution> members;
    for (const auto& w : spec.model) members.push_back(validate_distribution(w, problem.space.size()));
    const auto sm = make_stat_model(problem.base, members, spec.model_labels);
    const auto r = capacity_solve(sm, opt.tol);
    const auto eq = equalization_report(r, sm);

    Json report;
    report["loss"] = problem.base->name();
    report["unit"] = spec.loss.kind == "log" ? (opt.bits ? "bits" : "nats") : "loss";
    report["value"] = r12(r.value / scale);
    Json prior = Json::object(), losses = Json::object(), upsilon = Json::array();
    for (std::size_t w = 0; w < members.size(); ++w) {
      prior[sm.labels[w]] = r12(r.prior[w]);
      losses[sm.labels[w]] = r12(r.derived_losses[w] / scale);
    }
    for (std::size_t w : r.upsilon) upsilon.push_back(sm.labels[w]);
    report["prior"] = prior;
    report["act"] = reals(r.act.payload);
    report["derived_losses"] = losses;
    report["upsilon"] = upsilon;
    report["upsilon_mass"] = r12(r.upsilon_mass);
    report["equalizer"] = eq.equalizer;
    report["gap"] = r12(r.gap / scale);
    report["iterations"] = r.iterations;
    report["converged"] = r.converged;
    if (spec.loss.kind == "log") {
      const auto ba = blahut_arimoto(sm);
      report["blahut_arimoto"] = {{"value", r12(ba.value / scale)},
                                  {"delta", r12(std::abs(ba.value - r.value) / scale)},
                                  {"iterations", ba.iterations},
                                  {"converged", ba.converged}};
    }
    os << report.dump(2) << "\n";
    return kOk;
  });
}

}  // namespace maxent::cli

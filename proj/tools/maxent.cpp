// maxent: solve, sweep, verify and capacity over a JSON problem spec.

#include <iostream>

#include "CLI11.hpp"
#include "maxent/cli.hpp"

namespace cli = maxent::cli;

int main(int argc, char** argv) {
  CLI::App app{"Generalized maximum entropy and robust Bayes acts for finite games"};
  app.require_subcommand(1);

  cli::Options opt;
  std::string tau, grid, beta_grid;

  double capacity_tol = 1e-12;

  auto common = [&](CLI::App* sub, double& tol) {
    sub->add_option("spec", opt.spec_path, "problem spec (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "write output here instead of stdout");
    sub->add_option("--tol", tol, "solver tolerance")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "solve at one target and verify the saddle point");
  common(solve, opt.tol);
  solve->add_option("--tau", tau, "comma-separated target, overrides the problem file");
  solve->add_flag("--bits", opt.bits, "print log-loss values in bits");

  auto* sweep = app.add_subcommand("sweep", "trace the family over a grid of targets (CSV)");
  common(sweep, opt.tol);
  sweep->add_option("--grid", grid, "from:to:steps, overrides the problem file's tau_grid");
  sweep->add_flag("--bits", opt.bits, "print log-loss values in bits");

  auto* verify = app.add_subcommand("verify", "run a verification suite (JSON report)");
  common(verify, opt.tol);
  verify->add_option("--suite", opt.suite, "suite to run")
      ->required()
      ->check(CLI::IsMember({"saddle", "pythagorean", "equalizer", "conjugacy", "identities"}));
  verify->add_option("--grid", grid, "from:to:steps, overrides the problem file's tau_grid");
  verify->add_option("--beta-grid", beta_grid, "conjugacy beta grid from:to:steps (default -4:4:399)");
  verify->add_option("--seed", opt.seed, "seed for the identities suite")->capture_default_str();
  verify->add_option("--cases", opt.cases, "cases for the identities suite")->capture_default_str();

  auto* capacity = app.add_subcommand("capacity", "solve the derived game over the problem file's model list");
  common(capacity, capacity_tol);
  capacity->add_flag("--bits", opt.bits, "print log-loss values in bits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kParse;
  }

  try {
    if (!tau.empty()) opt.tau = cli::parse_tau(tau);
    if (!grid.empty()) opt.grid = cli::parse_grid(grid);
    if (!beta_grid.empty()) opt.beta_grid = cli::parse_grid(beta_grid);
  } catch (const maxent::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kParse;
  }

  if (*solve) return cli::cmd_solve(opt, std::cout, std::cerr);
  if (*sweep) return cli::cmd_sweep(opt, std::cout, std::cerr);
  if (*verify) return cli::cmd_verify(opt, std::cout, std::cerr);
  opt.tol = capacity_tol;
  return cli::cmd_capacity(opt, std::cout, std::cerr);
}

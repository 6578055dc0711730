#pragma once

// Problem files, result records and the subcommands behind tools/maxent.
// Formats are described in docs/FORMATS.md.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxent/core.hpp"
#include "maxent/losses.hpp"
#include "maxent/maxent.hpp"
#include "maxent/verify.hpp"

namespace maxent::cli {

enum ExitCode : int {
  kOk = 0,
  kParse = 1,
  kInfeasible = 2,
  kSaddleFailure = 3,
  kSuiteFailure = 4,
};

struct GridSpec {
  double from = 0.0;
  double to = 0.0;
  std::size_t steps = 0;  ///< intervals; the grid has steps + 1 points

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct LossSpec {
  std::string kind;                 ///< brier | log | zero_one | quadratic | bregman
  std::vector<double> values;       ///< quadratic: the value of each outcome
  std::string generator;            ///< bregman: entropy | square | power
  std::optional<double> exponent;   ///< bregman power
  std::optional<double> offset;     ///< bregman square

  friend bool operator==(const LossSpec&, const LossSpec&) = default;
};

struct ReferenceSpec {
  std::optional<std::string> act_kind;  ///< set for an act, empty for a distribution
  std::vector<double> values;

  friend bool operator==(const ReferenceSpec&, const ReferenceSpec&) = default;
};

struct ProblemSpec {
  std::vector<std::string> outcomes;
  std::optional<std::vector<double>> base_measure;
  LossSpec loss;
  std::vector<std::vector<double>> statistic;  ///< k rows of N values
  std::optional<std::vector<double>> tau;
  std::optional<GridSpec> tau_grid;
  std::optional<ReferenceSpec> reference;
  std::vector<std::vector<double>> model;  ///< members of a derived game
  std::vector<std::string> model_labels;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Throws Error(ParseError) on malformed or structurally invalid input.
ProblemSpec parse_spec(std::string_view json_text);
ProblemSpec load_spec(const std::string& path);
std::string serialize_spec(const ProblemSpec& spec);

/// "from:to:steps".
GridSpec parse_grid(std::string_view text);
/// Comma-separated reals.
std::vector<double> parse_tau(std::string_view text);

struct Problem {
  SampleSpace space;
  LossModelPtr base;   ///< the model named by the loss block
  LossModelPtr model;  ///< base, or the game relative to the reference act
  std::optional<Act> reference;
  std::optional<Statistic> statistic;
};

Problem build_problem(const ProblemSpec& spec);

/// Grid override, else the problem file's tau_grid, else its single tau.
std::vector<std::vector<double>> tau_points(const ProblemSpec& spec, const std::optional<GridSpec>& grid);

/// One row of solver output.
struct ResultRecord {
  std::vector<double> tau;
  std::optional<SaddlePoint> point;
  std::optional<SaddleReport> report;
  std::string status;  ///< ok, saddle_failure, or the error code of a failed row
};

std::string csv_schema_line();
std::string csv_header(std::size_t k, std::size_t n);
/// scale divides h, beta0, beta and the margins (1 / log 2 for --bits).
std::string csv_row(const ResultRecord& record, std::size_t n, double scale = 1.0);

/// Solve one target and check the saddle conditions; status saddle_failure when they fail.
ResultRecord solve_record(const Problem& problem, std::span<const double> tau, const SolveOptions& options);

struct Options {
  std::string spec_path;
  std::optional<std::vector<double>> tau;
  std::optional<GridSpec> grid;
  std::optional<GridSpec> beta_grid;
  std::string suite;
  double tol = 1e-8;
  std::string out;  ///< empty writes to the given stream
  std::uint64_t seed = 0;
  std::size_t cases = 1000;
  bool bits = false;
};

int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_capacity(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace maxent::cli

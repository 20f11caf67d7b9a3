#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tvar/generators.hpp"

namespace tvar {

enum class TargetKind { ito_plus_bracket, ito_plus_cont_bracket, decomposition_tv_growth };

std::string to_string(TargetKind kind);
TargetKind target_kind_from_string(const std::string& name);

// Monte Carlo experiment configuration. JSON keys: x, y ("same_as_x" or a
// generator config), c_values, replications, base_seed, target, steps
// (optional, overrides the generators' step counts).
struct ExperimentConfig {
  GeneratorConfig x;
  std::optional<GeneratorConfig> y;  // nullopt: Y is the same path as X
  std::vector<double> c_values;      // strictly decreasing, positive
  std::size_t replications = 1;
  std::uint64_t base_seed = 0;
  TargetKind target = TargetKind::ito_plus_bracket;
  std::optional<std::size_t> steps;

  void check() const;  // throws ConfigError
  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
};

// One report row: the sweep parameter (c for limit experiments, refinement
// level for the decomposition study) plus named statistics.
struct ReportRow {
  double param = 0.0;
  std::map<std::string, double> stats;
};

struct ExperimentReport {
  std::string config_json;  // metadata echo
  std::string param_name;   // "c" or "level"
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;
  bool guard_warning = false;  // some c below 3 * median |dX|

  std::string to_json() const;
  void write_tsv(std::ostream& out) const;
};

// Continuous-case limit study: observed = left-point integral of Y against
// X^c; per-path reference = Euler integral of Y against X plus the full-grid
// bracket of X and Y. For Y == X the closed-form target
// X_T^2/2 + (realized bracket)/2 is reported as well. Requires jump-free
// generators; throws ConfigError otherwise.
ExperimentReport run_continuous_limit(const ExperimentConfig& config);

// General-case limit study: reference = Euler integral plus the full-grid
// bracket of the continuous parts; also reports the jump-covariation
// observables [Y, X^c] and sum dY dX.
ExperimentReport run_jump_limit(const ExperimentConfig& config);

// Decomposition study at fixed c (the first entry of c_values): per dyadic
// refinement level, total variation sums of X - X^c and X^c and p = 2 sums
// for X, X^c and X - X^c, averaged over replications.
ExperimentReport run_decomposition_study(const ExperimentConfig& config);

// Dispatch on config.target.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Reduced-size oracle-equivalence and invariant suites; logs one line per
// check. Returns true iff everything passed.
bool selftest(std::ostream& log);

}  // namespace tvar

#pragma once

// Closed form against brute-force simulation over a fixed parameter matrix.

#include <string>
#include <utility>
#include <vector>

#include "su11/sweep.hpp"

namespace su11 {

struct EquationCheck {
  std::string name;  ///< closed-form operation under test
  double tolerance = 0.0;
  bool relative = false;  ///< pass on relative instead of absolute error
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  std::vector<std::pair<std::string, double>> worst_params;  ///< point of the largest tested error
  std::size_t points = 0;
  bool pass = true;
};

struct ValidationReport {
  std::vector<EquationCheck> checks;

  bool all_pass() const;
  /// {name: {max_abs_err, max_rel_err, worst_params, pass, tolerance, points}}.
  std::string to_json() const;
};

/// Names accepted by RunConfig::corrupt.
const std::vector<std::string>& validation_check_names();

/// Runs every check. config.corrupt, when set, flips the sign of that closed
/// form so the report must fail on it. Oracle cutoffs are capped at
/// config.cutoff_budget and infinite input distributions truncated at
/// config.tail_tol.
ValidationReport run_validate(const RunConfig& config);

}  // namespace su11

#pragma once

// Parameter sweeps behind the su11 command line: QCRB versus total photon
// number, and parity signal / phase sensitivity versus phi at a matched
// photon budget.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "su11/input.hpp"

namespace su11 {

enum class Command { fig2, fig3, fig4, validate, eval };
enum class OutputFormat { csv, json };
enum class InputKind { fock, coherent, thermal, diag };
enum class Fig2Panel { a, b, both };

std::string to_string(InputKind kind);
/// Throws InvalidArgument for anything but fock, coherent, thermal, diag.
InputKind parse_input_kind(const std::string& text);

struct SweepRow {
  double g = 0.0;
  double theta = 0.0;
  std::optional<double> phi;
  int n = 0;
  double n_a = 0.0;
  InputKind input_kind = InputKind::diag;
  double n_tot = 0.0;
  double qfi = 0.0;
  double qcrb = 0.0;
  double snl = 0.0;
  double hl = 0.0;
  std::optional<double> parity;
  std::optional<double> sensitivity;
  /// Sensitivity at phi == 0 replaced by its limit.
  bool sensitivity_limit = false;
  /// "a" or "b" for the two QCRB panels, empty otherwise.
  std::string panel;
};

/// Column names in output order.
const std::vector<std::string>& sweep_columns();

struct SweepTable {
  std::vector<SweepRow> rows;
  /// One line per skipped grid point.
  std::vector<std::string> warnings;
};

struct RunConfig {
  Command command = Command::fig2;
  std::vector<double> gains;
  double theta = 0.0;
  std::vector<int> fock_numbers;     ///< n of mode b
  std::vector<double> mean_a;        ///< n_a grid
  std::vector<double> budgets;       ///< N_tot grid
  double phi_min = 0.0;
  double phi_max = 0.0;
  int phi_steps = 1;
  std::vector<InputKind> inputs;
  Fig2Panel panel = Fig2Panel::both;
  int cutoff_budget = 8192;  ///< largest oracle cutoff
  double tail_tol = 1e-12;
  OutputFormat format = OutputFormat::csv;
  std::string out;  ///< empty writes to stdout
  std::string corrupt;  ///< validate only: closed form whose sign is flipped

  /// Throws InvalidArgument on empty grids or tolerances outside (0, 1e-3].
  void validate() const;
};

/// Defaults for each command. fig2 uses its panel defaults for gains and
/// mean_a only where the corresponding grid is left empty.
RunConfig default_config(Command command);

/// n_a = (N_tot - 2 sinh^2 g) / cosh(2g) - n. Throws InfeasibleBudget when that
/// is negative beyond rounding (1e-12 relative); rounding-level negatives give 0.
double solve_na_for_budget(double total_photons, int n, double gain);

/// steps evenly spaced points from lo to hi inclusive; {lo} when steps == 1.
/// Mirrored points of a range symmetric about 0 are exact negatives.
std::vector<double> linspace(double lo, double hi, int steps);

/// Panel a: one series per (g, n) with n_a varied; panel b: one series per
/// (n_a, n) with g varied. Both panels default to their own grids.
SweepTable run_fig2(const RunConfig& config);

/// Parity versus phi for every (N_tot, n, input kind) with n_a matched to the
/// budget.
SweepTable run_fig3(const RunConfig& config);

/// As run_fig3 with the error-propagation sensitivity filled in.
SweepTable run_fig4(const RunConfig& config);

/// Full width at half maximum of the peak of (-1)^n signal around phi = 0,
/// linearly interpolated between grid points. Empty if either side never
/// drops below half of the peak value.
std::optional<double> central_peak_fwhm(std::span<const double> phi, std::span<const double> signal, int n);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_json(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace su11

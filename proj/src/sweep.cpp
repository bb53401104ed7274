#include "su11/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "su11/closedform.hpp"
#include "su11/errors.hpp"

namespace su11 {

namespace {

constexpr int kFig2Series[] = {0, 1, 2, 3};

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_optional(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

ModeAState mode_a_for(InputKind kind, double mean) {
  switch (kind) {
    case InputKind::coherent:
      return CoherentInput{mean, 0.0};
    case InputKind::thermal:
      return ThermalInput{mean};
    case InputKind::fock: {
      const double m = std::round(mean);
      if (std::abs(mean - m) > 1e-9) {
        throw InfeasibleBudget("fock input needs an integer n_a, got " + format_double(mean));
      }
      return FockInput{static_cast<int>(m)};
    }
    case InputKind::diag:
      break;
  }
  throw InvalidArgument("diag input has no matched-budget family; use coherent, thermal or fock");
}

// Everything in a row that depends only on (n_a, n, g).
SweepRow budget_row(double gain, double theta, int n, double mean_a, InputKind kind) {
  SweepRow row;
  row.g = gain;
  row.theta = theta;
  row.n = n;
  row.n_a = mean_a;
  row.input_kind = kind;
  row.n_tot = total_mean_photon_number(mean_a, n, gain);
  row.qfi = qfi_diagonal_mixture(mean_a, n, gain);
  row.qcrb = qcrb(mean_a, n, gain);
  const BenchmarkLimits limits = benchmark_limits(row.n_tot);
  row.snl = limits.snl;
  row.hl = limits.hl;
  return row;
}

void append_fig2_point(SweepTable& table, const RunConfig& config, const char* panel, double gain, int n,
                       double mean_a) {
  const InputKind kind = config.inputs.empty() ? InputKind::diag : config.inputs.front();
  try {
    if (kind == InputKind::fock) mode_a_for(kind, mean_a);
    SweepRow row = budget_row(gain, config.theta, n, mean_a, kind);
    row.panel = panel;
    table.rows.push_back(std::move(row));
  } catch (const Error& e) {
    table.warnings.push_back(std::string("fig2 panel ") + panel + " g=" + format_double(gain) +
                             " n=" + std::to_string(n) + " n_a=" + format_double(mean_a) + ": " + e.what());
  }
}

SweepTable run_phase_sweep(const RunConfig& config, bool with_sensitivity) {
  config.validate();
  const char* name = with_sensitivity ? "fig4" : "fig3";
  if (config.gains.empty() || config.budgets.empty() || config.fock_numbers.empty() || config.inputs.empty()) {
    throw InvalidArgument(std::string(name) + ": gain, budget, n and input grids must be non-empty");
  }
  const std::vector<double> phis = linspace(config.phi_min, config.phi_max, config.phi_steps);
  SweepTable table;
  for (double gain : config.gains) {
    for (double budget : config.budgets) {
      for (int n : config.fock_numbers) {
        for (InputKind kind : config.inputs) {
          InputSpec spec;
          SweepRow base;
          try {
            const double mean_a = solve_na_for_budget(budget, n, gain);
            spec = InputSpec{mode_a_for(kind, mean_a), n};
            base = budget_row(gain, config.theta, n, mean_a, kind);
          } catch (const InfeasibleBudget& e) {
            table.warnings.push_back(std::string(name) + " g=" + format_double(gain) + " N_tot=" +
                                     format_double(budget) + " n=" + std::to_string(n) + " input=" +
                                     to_string(kind) + ": " + e.what());
            continue;
          }
          for (double phi : phis) {
            SweepRow row = base;
            row.phi = phi;
            row.parity = parity_signal(spec, gain, phi);
            if (with_sensitivity) {
              const PhaseSensitivity ps = phase_sensitivity(spec, gain, phi);
              row.sensitivity = ps.value;
              row.sensitivity_limit = ps.limit_value;
            }
            table.rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return table;
}

}  // namespace

std::string to_string(InputKind kind) {
  switch (kind) {
    case InputKind::fock:
      return "fock";
    case InputKind::coherent:
      return "coherent";
    case InputKind::thermal:
      return "thermal";
    case InputKind::diag:
      return "diag";
  }
  return "diag";
}

InputKind parse_input_kind(const std::string& text) {
  if (text == "fock") return InputKind::fock;
  if (text == "coherent") return InputKind::coherent;
  if (text == "thermal") return InputKind::thermal;
  if (text == "diag") return InputKind::diag;
  throw InvalidArgument("unknown input kind '" + text + "'");
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> columns = {
      "g",   "theta", "phi",    "n",           "n_a",         "input_kind",        "N_tot", "qfi",
      "qcrb", "snl",  "hl",     "parity",      "sensitivity", "sensitivity_limit", "panel"};
  return columns;
}

void RunConfig::validate() const {
  if (!(tail_tol > 0.0 && tail_tol <= 1e-3)) throw InvalidArgument("tail tolerance must lie in (0, 1e-3]");
  if (cutoff_budget < 16) throw InvalidArgument("cutoff budget must be at least 16");
  if (phi_steps < 1) throw InvalidArgument("phi steps must be >= 1");
  if (!std::isfinite(phi_min) || !std::isfinite(phi_max) || phi_min > phi_max) {
    throw InvalidArgument("phi range must be finite with phi-min <= phi-max");
  }
  if (!std::isfinite(theta)) throw InvalidArgument("theta must be finite");
  for (double g : gains) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("gains must be finite and >= 0");
  }
  for (int n : fock_numbers) {
    if (n < 0) throw InvalidArgument("n must be >= 0");
  }
  for (double x : mean_a) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("n_a must be finite and >= 0");
  }
  for (double x : budgets) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("N_tot must be finite and > 0");
  }
  if (command != Command::validate && command != Command::eval && fock_numbers.empty()) {
    throw InvalidArgument("n grid must be non-empty");
  }
}

RunConfig default_config(Command command) {
  RunConfig c;
  c.command = command;
  switch (command) {
    case Command::fig2:
      c.fock_numbers = {std::begin(kFig2Series), std::end(kFig2Series)};
      break;
    case Command::fig3:
    case Command::fig4:
      c.gains = {0.4};
      c.budgets = {5.0, 10.0};
      c.fock_numbers = {0, 1, 2};
      c.inputs = {InputKind::coherent, InputKind::thermal};
      c.phi_min = -std::acos(0.0);
      c.phi_max = std::acos(0.0);
      c.phi_steps = 401;
      break;
    case Command::validate:
    case Command::eval:
      break;
  }
  return c;
}

double solve_na_for_budget(double total_photons, int n, double gain) {
  if (!std::isfinite(total_photons) || !(gain >= 0.0) || !std::isfinite(gain) || n < 0) {
    throw InvalidArgument("solve_na_for_budget: need finite N_tot, g >= 0 and n >= 0");
  }
  const double sh = std::sinh(gain);
  const double mean_a = (total_photons - 2.0 * sh * sh) / std::cosh(2.0 * gain) - n;
  // A budget that matches the boundary up to rounding maps to n_a = 0.
  if (mean_a < 0.0 && mean_a > -1e-12 * std::max(1.0, total_photons)) return 0.0;
  if (mean_a < 0.0) {
    throw InfeasibleBudget("budget infeasible: N_tot=" + format_double(total_photons) + " needs n_a=" +
                           format_double(mean_a) + " < 0");
  }
  return mean_a;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw InvalidArgument("linspace: steps must be >= 1");
  if (steps == 1) return {lo};
  // Built around the midpoint so that a range symmetric about 0 gives exact
  // negatives at mirrored indices and an exact 0 in the middle.
  const double mid = 0.5 * lo + 0.5 * hi;
  const double half = 0.5 * hi - 0.5 * lo;
  const int last = steps - 1;
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) out[i] = mid + half * (static_cast<double>(2 * i - last) / last);
  out.front() = lo;
  out.back() = hi;
  return out;
}

SweepTable run_fig2(const RunConfig& config) {
  config.validate();
  SweepTable table;
  if (config.panel != Fig2Panel::b) {
    const std::vector<double> gains = config.gains.empty() ? std::vector<double>{1.0} : config.gains;
    const std::vector<double> means = config.mean_a.empty() ? linspace(0.0, 50.0, 101) : config.mean_a;
    for (double g : gains) {
      for (int n : config.fock_numbers) {
        for (double na : means) append_fig2_point(table, config, "a", g, n, na);
      }
    }
  }
  if (config.panel != Fig2Panel::a) {
    const std::vector<double> means = config.mean_a.empty() ? std::vector<double>{1.0} : config.mean_a;
    const std::vector<double> gains = config.gains.empty() ? linspace(0.1, 1.5, 29) : config.gains;
    for (double na : means) {
      for (int n : config.fock_numbers) {
        for (double g : gains) append_fig2_point(table, config, "b", g, n, na);
      }
    }
  }
  return table;
}

SweepTable run_fig3(const RunConfig& config) { return run_phase_sweep(config, false); }

SweepTable run_fig4(const RunConfig& config) { return run_phase_sweep(config, true); }

std::optional<double> central_peak_fwhm(std::span<const double> phi, std::span<const double> signal, int n) {
  if (phi.size() != signal.size() || phi.empty()) {
    throw InvalidArgument("central_peak_fwhm: phi and signal must be non-empty and of equal length");
  }
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  std::size_t center = 0;
  for (std::size_t i = 1; i < phi.size(); ++i) {
    if (std::abs(phi[i]) < std::abs(phi[center])) center = i;
  }
  const double half = 0.5 * sign * signal[center];
  auto crossing = [&](std::size_t i, std::size_t j) {
    const double yi = sign * signal[i];
    const double yj = sign * signal[j];
    return phi[i] + (half - yi) * (phi[j] - phi[i]) / (yj - yi);
  };
  std::optional<double> right;
  for (std::size_t i = center; i + 1 < phi.size(); ++i) {
    if (sign * signal[i + 1] < half) {
      right = crossing(i, i + 1);
      break;
    }
  }
  std::optional<double> left;
  for (std::size_t i = center; i > 0; --i) {
    if (sign * signal[i - 1] < half) {
      left = crossing(i, i - 1);
      break;
    }
  }
  if (!left || !right) return std::nullopt;
  return *right - *left;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  const auto& columns = sweep_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const SweepRow& r : rows) {
    os << format_double(r.g) << ',' << format_double(r.theta) << ',' << format_optional(r.phi) << ',' << r.n << ','
       << format_double(r.n_a) << ',' << to_string(r.input_kind) << ',' << format_double(r.n_tot) << ','
       << format_double(r.qfi) << ',' << format_double(r.qcrb) << ',' << format_double(r.snl) << ','
       << format_double(r.hl) << ',' << format_optional(r.parity) << ',' << format_optional(r.sensitivity) << ','
       << (r.sensitivity_limit ? "true" : "false") << ',' << r.panel << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<SweepRow>& rows) {
  using nlohmann::ordered_json;
  auto optional_value = [](const std::optional<double>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); };
  ordered_json out = ordered_json::array();
  for (const SweepRow& r : rows) {
    ordered_json row;
    row["g"] = r.g;
    row["theta"] = r.theta;
    row["phi"] = optional_value(r.phi);
    row["n"] = r.n;
    row["n_a"] = r.n_a;
    row["input_kind"] = to_string(r.input_kind);
    row["N_tot"] = r.n_tot;
    row["qfi"] = r.qfi;
    row["qcrb"] = r.qcrb;
    row["snl"] = r.snl;
    row["hl"] = r.hl;
    row["parity"] = optional_value(r.parity);
    row["sensitivity"] = optional_value(r.sensitivity);
    row["sensitivity_limit"] = r.sensitivity_limit;
    row["panel"] = r.panel;
    out.push_back(std::move(row));
  }
  os << out.dump(2) << '\n';
}

}  // namespace su11

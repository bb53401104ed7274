// su11: parameter sweeps, validation and single-point evaluation.
//
//   su11 fig2|fig3|fig4 [grid flags] [--format csv|json] [--out PATH]
//   su11 validate [--corrupt NAME]
//   su11 eval OPERATION [parameter flags]
//
// Grids take "x", "x,y,z" or "lo:hi:count". Exit status: 0 success,
// 1 validation failure, 2 invalid configuration or infeasible budget.

#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "su11/closedform.hpp"
#include "su11/errors.hpp"
#include "su11/special.hpp"
#include "su11/sweep.hpp"
#include "su11/validate.hpp"

namespace {

using su11::InvalidArgument;
using json = nlohmann::ordered_json;

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

std::vector<double> parse_grid(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidArgument("bad number '" + s + "' in grid '" + text + "'");
    return v;
  };
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  if (sep == ':') {
    if (parts.size() != 3) throw InvalidArgument("range grid must be lo:hi:count, got '" + text + "'");
    const double count = number(parts[2]);
    if (count < 1 || count != std::floor(count)) throw InvalidArgument("range count must be a positive integer");
    return su11::linspace(number(parts[0]), number(parts[1]), static_cast<int>(count));
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(number(p));
  if (out.empty()) throw InvalidArgument("empty grid");
  return out;
}

std::vector<int> parse_int_grid(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_grid(text)) {
    if (v != std::floor(v)) throw InvalidArgument("grid '" + text + "' must hold integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::complex<double> parse_complex(const std::string& text) {
  const auto v = parse_grid(text);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw InvalidArgument("complex value must be 're' or 're,im', got '" + text + "'");
}

// Raw flag values; converted once the subcommand is known.
struct Flags {
  std::string g, n, na, ntot, input, weights, alpha, beta, format = "csv", out, corrupt, panel = "both";
  std::string op;
  double theta = 0.0;
  std::optional<double> phi_min, phi_max, phi, x, signal, slope;
  std::optional<int> phi_steps, m, k;
  int cutoff_budget = 8192;
  double tail_tol = 1e-12;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--g", f.g, "parametric gain grid");
  sub->add_option("--theta", f.theta, "OPA phase");
  sub->add_option("--n", f.n, "Fock number grid of mode b");
  sub->add_option("--na", f.na, "mean photon number grid of mode a");
  sub->add_option("--ntot", f.ntot, "total photon budget grid");
  sub->add_option("--phi-min", f.phi_min, "smallest phase");
  sub->add_option("--phi-max", f.phi_max, "largest phase");
  sub->add_option("--phi-steps", f.phi_steps, "number of phase points");
  sub->add_option("--input", f.input, "mode a state: fock, coherent, thermal or diag (comma list for fig3/fig4)");
  sub->add_option("--cutoff-budget", f.cutoff_budget, "largest Fock cutoff the oracle may use");
  sub->add_option("--tail-tol", f.tail_tol, "truncation of infinite photon-number distributions");
  sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", f.out, "output path (default stdout)");
}

su11::RunConfig to_config(su11::Command command, const Flags& f) {
  su11::RunConfig c = su11::default_config(command);
  if (!f.g.empty()) c.gains = parse_grid(f.g);
  c.theta = f.theta;
  if (!f.n.empty()) c.fock_numbers = parse_int_grid(f.n);
  if (!f.na.empty()) c.mean_a = parse_grid(f.na);
  if (!f.ntot.empty()) c.budgets = parse_grid(f.ntot);
  if (f.phi_min) c.phi_min = *f.phi_min;
  if (f.phi_max) c.phi_max = *f.phi_max;
  if (f.phi_steps) c.phi_steps = *f.phi_steps;
  if (!f.input.empty()) {
    c.inputs.clear();
    std::stringstream ss(f.input);
    for (std::string item; std::getline(ss, item, ',');) c.inputs.push_back(su11::parse_input_kind(item));
  }
  if (f.panel == "a") c.panel = su11::Fig2Panel::a;
  else if (f.panel == "b") c.panel = su11::Fig2Panel::b;
  c.cutoff_budget = f.cutoff_budget;
  c.tail_tol = f.tail_tol;
  c.format = f.format == "json" ? su11::OutputFormat::json : su11::OutputFormat::csv;
  c.out = f.out;
  c.corrupt = f.corrupt;
  c.validate();
  return c;
}

template <class Write>
void emit(const std::string& path, Write&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot open '" + path + "' for writing");
  write(os);
}

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw InvalidArgument(std::string("missing ") + flag);
  return *v;
}

double first(const std::string& grid, const char* flag) {
  if (grid.empty()) throw InvalidArgument(std::string("missing ") + flag);
  return parse_grid(grid).front();
}

int first_int(const std::string& grid, const char* flag) {
  if (grid.empty()) throw InvalidArgument(std::string("missing ") + flag);
  return parse_int_grid(grid).front();
}

su11::InputSpec eval_input(const Flags& f) {
  const su11::InputKind kind = f.input.empty() ? su11::InputKind::coherent : su11::parse_input_kind(f.input);
  su11::InputSpec spec;
  spec.mode_b_n = first_int(f.n, "--n");
  switch (kind) {
    case su11::InputKind::fock:
      spec.mode_a = su11::FockInput{need(f.m, "--m")};
      break;
    case su11::InputKind::coherent:
      spec.mode_a = su11::CoherentInput{first(f.na, "--na"), 0.0};
      break;
    case su11::InputKind::thermal:
      spec.mode_a = su11::ThermalInput{first(f.na, "--na")};
      break;
    case su11::InputKind::diag:
      spec.mode_a = su11::DiagonalInput{parse_grid(f.weights)};
      break;
  }
  return spec;
}

json evaluate(const Flags& f) {
  const std::string& op = f.op;
  auto g = [&] { return first(f.g, "--g"); };
  auto n = [&] { return first_int(f.n, "--n"); };
  auto na = [&] { return first(f.na, "--na"); };
  auto phi = [&] { return need(f.phi, "--phi"); };
  json value;
  if (op == "mcd_coefficients") {
    const auto c = su11::mcd_coefficients(g(), f.theta, phi());
    value = {{"M", complex_json(c.M)}, {"C", c.C}, {"D", c.D}, {"s", c.s}};
  } else if (op == "squeeze_amplitude") {
    value = complex_json(su11::squeezed_fock_amplitude(need(f.m, "--m"), n(), need(f.k, "--k"), g(), f.theta, phi()));
  } else if (op == "qfi_pure_fock") {
    value = su11::qfi_pure_fock(need(f.m, "--m"), n(), g());
  } else if (op == "qfi_diagonal_mixture") {
    value = su11::qfi_diagonal_mixture(na(), n(), g());
  } else if (op == "total_mean_photon_number") {
    value = su11::total_mean_photon_number(na(), n(), g());
  } else if (op == "qcrb") {
    value = su11::qcrb(na(), n(), g());
  } else if (op == "benchmark_limits") {
    const auto b = su11::benchmark_limits(first(f.ntot, "--ntot"));
    value = {{"snl", b.snl}, {"hl", b.hl}};
  } else if (op == "parity_fock_fock") {
    value = su11::parity_fock_fock(need(f.m, "--m"), n(), g(), phi());
  } else if (op == "parity_coherent_fock") {
    value = su11::parity_coherent_fock(na(), n(), g(), phi());
  } else if (op == "parity_thermal_fock") {
    value = su11::parity_thermal_fock(na(), n(), g(), phi());
  } else if (op == "parity_diagonal_mixture") {
    value = su11::parity_diagonal_mixture(parse_grid(f.weights), n(), g(), phi());
  } else if (op == "parity_two_mode_coherent") {
    value = su11::parity_two_mode_coherent(parse_complex(f.alpha), parse_complex(f.beta), g(), f.theta, phi());
  } else if (op == "parity_small_phase_expansion") {
    value = su11::parity_small_phase_expansion(na(), n(), g(), phi());
  } else if (op == "parity_signal") {
    value = su11::parity_signal(eval_input(f), g(), phi());
  } else if (op == "sensitivity_error_propagation") {
    value = su11::sensitivity_error_propagation(need(f.signal, "--signal"), need(f.slope, "--slope"));
  } else if (op == "phase_sensitivity") {
    const auto ps = su11::phase_sensitivity(eval_input(f), g(), phi());
    value = {{"value", ps.value ? json(*ps.value) : json(nullptr)},
             {"limit_value", ps.limit_value},
             {"evaluated_at", ps.evaluated_at}};
  } else if (op == "laguerre_poly") {
    value = su11::laguerre_poly(n(), need(f.x, "--x"));
  } else if (op == "solve_na_for_budget") {
    value = su11::solve_na_for_budget(first(f.ntot, "--ntot"), n(), g());
  } else {
    throw InvalidArgument("unknown operation '" + op + "'");
  }
  return {{"op", op}, {"value", value}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SU(1,1) interferometer with Fock-state input: sweeps, validation and evaluation"};
  app.require_subcommand(1);
  Flags f;
  std::map<std::string, su11::Command> commands = {{"fig2", su11::Command::fig2},
                                                   {"fig3", su11::Command::fig3},
                                                   {"fig4", su11::Command::fig4},
                                                   {"validate", su11::Command::validate},
                                                   {"eval", su11::Command::eval}};
  auto* fig2 = app.add_subcommand("fig2", "QCRB, SNL and HL against the total photon number");
  add_common(fig2, f);
  fig2->add_option("--panel", f.panel, "a (n_a varied), b (g varied) or both")
      ->check(CLI::IsMember({"a", "b", "both"}));
  add_common(app.add_subcommand("fig3", "parity signal against phi at matched photon budget"), f);
  add_common(app.add_subcommand("fig4", "phase sensitivity against phi at matched photon budget"), f);
  auto* validate = app.add_subcommand("validate", "closed forms against the Fock-space simulation");
  add_common(validate, f);
  validate->add_option("--corrupt", f.corrupt, "flip the sign of one closed form (mutation check)");
  auto* eval = app.add_subcommand("eval", "evaluate one closed-form operation");
  add_common(eval, f);
  eval->add_option("op", f.op, "operation name")->required();
  eval->add_option("--phi", f.phi, "phase");
  eval->add_option("--m", f.m, "Fock number of mode a");
  eval->add_option("--k", f.k, "ladder rung of the squeezed amplitude");
  eval->add_option("--x", f.x, "argument of laguerre_poly");
  eval->add_option("--alpha", f.alpha, "coherent amplitude of mode a as re,im");
  eval->add_option("--beta", f.beta, "coherent amplitude of mode b as re,im");
  eval->add_option("--weights", f.weights, "photon-number weights p_0,p_1,...");
  eval->add_option("--signal", f.signal, "parity signal");
  eval->add_option("--slope", f.slope, "parity slope");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    const su11::Command command = commands.at(name);
    const su11::RunConfig config = to_config(command, f);
    switch (command) {
      case su11::Command::fig2:
      case su11::Command::fig3:
      case su11::Command::fig4: {
        const su11::SweepTable table = command == su11::Command::fig2   ? su11::run_fig2(config)
                                       : command == su11::Command::fig3 ? su11::run_fig3(config)
                                                                        : su11::run_fig4(config);
        for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
        if (table.rows.empty()) {
          std::cerr << "error: every grid point was infeasible\n";
          return kExitConfig;
        }
        emit(config.out, [&](std::ostream& os) {
          if (config.format == su11::OutputFormat::json) {
            su11::write_json(os, table.rows);
          } else {
            su11::write_csv(os, table.rows);
          }
        });
        return 0;
      }
      case su11::Command::validate: {
        const su11::ValidationReport report = su11::run_validate(config);
        emit(config.out, [&](std::ostream& os) { os << report.to_json() << '\n'; });
        return report.all_pass() ? 0 : kExitValidation;
      }
      case su11::Command::eval: {
        const json result = evaluate(f);
        emit(config.out, [&](std::ostream& os) { os << result.dump(2) << '\n'; });
        return 0;
      }
    }
  } catch (const su11::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}

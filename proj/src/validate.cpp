#include "su11/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include <json.hpp>

#include "su11/closedform.hpp"
#include "su11/errors.hpp"
#include "su11/fockoracle.hpp"

namespace su11 {

namespace {

using cd = std::complex<double>;
using Params = std::vector<std::pair<std::string, double>>;

const std::vector<std::string> kNames = {
    "squeeze_amplitude",     "qfi_pure_fock",          "qfi_diagonal_mixture",     "total_mean_photon_number",
    "parity_two_mode_coherent", "parity_fock_fock",    "parity_diagonal_mixture", "parity_small_phase_expansion",
    "parity_coherent_fock",  "parity_thermal_fock"};

class Check {
 public:
  Check(std::string name, double tolerance, bool relative, bool corrupt)
      : corrupt_(corrupt) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
    result_.relative = relative;
  }

  void add(cd closed, cd oracle, Params params) {
    if (corrupt_) closed = -closed;
    const double abs_err = std::abs(closed - oracle);
    const double scale = std::abs(oracle);
    const double rel_err = scale > 0.0 ? abs_err / scale : (abs_err > 0.0 ? INFINITY : 0.0);
    const double key = result_.relative ? rel_err : abs_err;
    const double worst = result_.relative ? result_.max_rel_err : result_.max_abs_err;
    if (result_.points == 0 || key > worst || std::isnan(key)) result_.worst_params = std::move(params);
    result_.max_abs_err = std::max(result_.max_abs_err, abs_err);
    result_.max_rel_err = std::max(result_.max_rel_err, rel_err);
    if (!(key <= result_.tolerance)) result_.pass = false;
    ++result_.points;
  }

  EquationCheck finish() && { return std::move(result_); }

 private:
  EquationCheck result_;
  bool corrupt_;
};

oracle::OracleOptions options_from(const RunConfig& config) {
  oracle::OracleOptions o;
  o.max_cutoff = config.cutoff_budget;
  o.input_tail = config.tail_tol;
  return o;
}

std::vector<double> normalized(std::vector<double> w) {
  double total = 0.0;
  for (double p : w) total += p;
  for (double& p : w) p /= total;
  return w;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const EquationCheck& c) { return c.pass; });
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& c : checks) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.worst_params) params[k] = v;
    auto finite_or_null = [](double x) { return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr); };
    out[c.name] = {{"max_abs_err", finite_or_null(c.max_abs_err)},
                   {"max_rel_err", finite_or_null(c.max_rel_err)},
                   {"worst_params", params},
                   {"pass", c.pass},
                   {"tolerance", c.tolerance},
                   {"error_kind", c.relative ? "relative" : "absolute"},
                   {"points", c.points}};
  }
  return out.dump(2);
}

const std::vector<std::string>& validation_check_names() { return kNames; }

ValidationReport run_validate(const RunConfig& config) {
  config.validate();
  if (!config.corrupt.empty() && std::find(kNames.begin(), kNames.end(), config.corrupt) == kNames.end()) {
    throw InvalidArgument("unknown check '" + config.corrupt + "' for --corrupt");
  }
  const oracle::OracleOptions opts = options_from(config);
  auto make = [&](const std::string& name, double tol, bool relative) {
    return Check(name, tol, relative, config.corrupt == name);
  };
  ValidationReport report;

  {
    Check check = make("squeeze_amplitude", 1e-10, false);
    for (double g : {0.3, 0.8}) {
      for (double theta : {0.0, 0.7}) {
        for (int m = 0; m <= 3; ++m) {
          for (int n = 0; n <= 3; ++n) {
            const double phi = 0.4;
            oracle::MixtureEnsemble in;
            in.members.push_back({1.0, oracle::TwoModeState::fock(m, n, std::max(m, n))});
            auto out = oracle::squeeze_ensemble(in, g, theta, oracle::Direction::forward, opts);
            const auto state = oracle::apply_phase_shift(out.members.front().state, phi, oracle::Mode::a);
            for (int rung = -std::min(m, n); rung <= 6; ++rung) {
              check.add(squeezed_fock_amplitude(m, n, rung, g, theta, phi), state.amplitude(m + rung, n + rung),
                        {{"m", m}, {"n", n}, {"rung", rung}, {"g", g}, {"theta", theta}, {"phi", phi}});
            }
          }
        }
      }
    }
    report.checks.push_back(std::move(check).finish());
  }

  {
    Check check = make("qfi_pure_fock", 1e-8, true);
    for (double g : {0.3, 0.7, 1.1}) {
      for (int m = 0; m <= 4; ++m) {
        for (int n = 0; n <= 4; ++n) {
          check.add(qfi_pure_fock(m, n, g), oracle::oracle_qfi_pure(m, n, g, 0.0, opts),
                    {{"m", m}, {"n", n}, {"g", g}});
        }
      }
    }
    report.checks.push_back(std::move(check).finish());
  }

  {
    Check check = make("qfi_diagonal_mixture", 1e-6, true);
    for (double g : {0.5, 1.0}) {
      for (double mean : {0.5, 2.0}) {
        for (int n = 0; n <= 2; ++n) {
          const auto poisson = normalized(poisson_weights(mean, 1e-14));
          const auto geometric = normalized(thermal_weights(mean, 1e-14));
          const double closed = qfi_diagonal_mixture(mean, n, g);
          check.add(closed, oracle::oracle_qfi_mixture(poisson, n, g, 0.0, opts),
                    {{"weights_poisson", 1}, {"n_a", mean}, {"n", n}, {"g", g}});
          check.add(closed, oracle::oracle_qfi_mixture(geometric, n, g, 0.0, opts),
                    {{"weights_poisson", 0}, {"n_a", mean}, {"n", n}, {"g", g}});
        }
      }
    }
    report.checks.push_back(std::move(check).finish());
  }

  {
    Check check = make("total_mean_photon_number", 1e-9, true);
    for (double g : {0.3, 1.0}) {
      for (double mean : {0.5, 2.0}) {
        for (int n : {0, 2}) {
          for (bool coherent : {true, false}) {
            InputSpec spec{coherent ? ModeAState{CoherentInput{mean, 0.3}} : ModeAState{ThermalInput{mean}}, n};
            const int needed = static_cast<int>(diagonal_weights(spec.mode_a, opts.input_tail).size());
            const auto in = oracle::build_input(spec, std::max(needed, n), opts.input_tail);
            const auto st = oracle::photon_statistics(oracle::squeeze_ensemble(in, g, 0.0, oracle::Direction::forward, opts));
            check.add(total_mean_photon_number(mean, n, g), st.mean_a + st.mean_b,
                      {{"coherent", coherent ? 1 : 0}, {"n_a", mean}, {"n", n}, {"g", g}});
          }
        }
      }
    }
    report.checks.push_back(std::move(check).finish());
  }

  {
    Check check = make("parity_two_mode_coherent", 1e-8, false);
    const cd alphas[] = {{1.0, 0.0}, {0.5, 0.3}};
    const cd betas[] = {{0.0, 0.0}, {0.0, 0.5}, {0.3, -0.2}};
    for (double g : {0.4, 0.8}) {
      for (cd alpha : alphas) {
        for (cd beta : betas) {
          for (double phi : {0.6, 2.0}) {
            const double theta = 0.2;
            const int cutoff = static_cast<int>(std::max(poisson_weights(std::norm(alpha), opts.input_tail).size(),
                                                         poisson_weights(std::norm(beta), opts.input_tail).size()));
            oracle::MixtureEnsemble in;
            in.members.push_back({1.0, oracle::two_mode_coherent_state(alpha, beta, cutoff, opts.input_tail)});
            const double ref = oracle::parity_expectation(oracle::interferometer_output(in, {g, theta, phi}, opts),
                                                          oracle::Mode::b);
            check.add(parity_two_mode_coherent(alpha, beta, g, theta, phi), ref,
                      {{"alpha_re", alpha.real()}, {"alpha_im", alpha.imag()}, {"beta_re", beta.real()},
                       {"beta_im", beta.imag()}, {"g", g}, {"theta", theta}, {"phi", phi}});
          }
        }
      }
    }
    report.checks.push_back(std::move(check).finish());
  }

  {
    Check check = make("parity_fock_fock", 1e-8, false);
    for (double g : {0.2, 0.5, 1.0}) {
      for (double phi : {0.3, 1.2, 2.5, kPi}) {
        for (int m = 0; m <= 4; ++m) {
          for (int n = 0; n <= 4; ++n) {
            const double ref = oracle::oracle_parity({FockInput{m}, n}, {g, 0.7, phi}, opts);
            check.add(parity_fock_fock(m, n, g, phi), ref, {{"m", m}, {"n", n}, {"g", g}, {"theta", 0.7}, {"phi", phi}});
          }
        }
      }
    }
    report.checks.push_back(std::move(check).finish());
  }

  {
    Check check = make("parity_diagonal_mixture", 1e-8, false);
    const std::vector<std::vector<double>> sets = {{0.5, 0.3, 0.2}, {0.1, 0.0, 0.6, 0.3}};
    for (std::size_t set = 0; set < sets.size(); ++set) {
      for (double g : {0.5, 1.0}) {
        for (int n : {0, 1}) {
          for (double phi : {0.5, 2.0}) {
            const double ref = oracle::oracle_parity({DiagonalInput{sets[set]}, n}, {g, 0.0, phi}, opts);
            check.add(parity_diagonal_mixture(sets[set], n, g, phi), ref,
                      {{"weight_set", static_cast<double>(set)}, {"n", n}, {"g", g}, {"phi", phi}});
          }
        }
      }
    }
    report.checks.push_back(std::move(check).finish());
  }

  {
    Check check = make("parity_small_phase_expansion", 1e-8, false);
    for (double g : {0.3, 0.5}) {
      for (int m = 0; m <= 2; ++m) {
        for (int n = 0; n <= 2; ++n) {
          for (double phi : {1e-3, 1e-4}) {
            const double ref = oracle::oracle_parity({FockInput{m}, n}, {g, 0.0, phi}, opts);
            check.add(parity_small_phase_expansion(m, n, g, phi), ref, {{"m", m}, {"n", n}, {"g", g}, {"phi", phi}});
          }
        }
      }
    }
    report.checks.push_back(std::move(check).finish());
  }

  for (bool coherent : {true, false}) {
    Check check = make(coherent ? "parity_coherent_fock" : "parity_thermal_fock", 1e-8, false);
    for (double g : {0.5, 1.0}) {
      for (double mean : {0.5, 1.5, 3.0}) {
        for (int n = 0; n <= 2; ++n) {
          for (double phi : {0.4, 2.5}) {
            const InputSpec spec{coherent ? ModeAState{CoherentInput{mean, 0.0}} : ModeAState{ThermalInput{mean}}, n};
            const double ref = oracle::oracle_parity(spec, {g, 0.0, phi}, opts);
            const double closed =
                coherent ? parity_coherent_fock(mean, n, g, phi) : parity_thermal_fock(mean, n, g, phi);
            check.add(closed, ref, {{"n_a", mean}, {"n", n}, {"g", g}, {"phi", phi}});
          }
        }
      }
    }
    report.checks.push_back(std::move(check).finish());
  }

  return report;
}

}  // namespace su11

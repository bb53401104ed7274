#include "su11/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "su11/errors.hpp"
#include "su11/special.hpp"

namespace su11 {

namespace {

using cd = std::complex<double>;

void require_gain(double gain, const char* where) {
  if (!(gain >= 0.0) || !std::isfinite(gain)) {
    throw InvalidArgument(std::string(where) + ": gain must be finite and >= 0");
  }
}

void require_count(int n, const char* where) {
  if (n < 0) throw InvalidArgument(std::string(where) + ": photon number must be >= 0");
}

void require_mean(double mean, const char* where) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw InvalidArgument(std::string(where) + ": mean photon number must be finite and >= 0");
  }
}

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// k log x with the convention 0 log 0 = 0.
double log_pow(double x, int k) { return k == 0 ? 0.0 : k * std::log(x); }

double checked(double v, const char* where) {
  if (!std::isfinite(v)) throw NonFinite(std::string(where) + ": non-finite result");
  return v;
}

}  // namespace

void InterferometerConfig::validate() const {
  require_gain(gain, "InterferometerConfig");
  if (!std::isfinite(opa_phase) || !std::isfinite(phase)) {
    throw InvalidArgument("InterferometerConfig: phases must be finite");
  }
}

double phase_factor_s(double gain, double phase) {
  const double half = std::sin(phase / 2.0);
  const double sh = std::sinh(2.0 * gain);
  return 2.0 * half * half * sh * sh;
}

McdCoefficients mcd_coefficients(double gain, double opa_phase, double phase) {
  require_gain(gain, "mcd_coefficients");
  const double s = phase_factor_s(gain, phase);
  const double half = std::sin(phase / 2.0);
  const cd bracket(-2.0 * half * half * std::cosh(2.0 * gain), std::sin(phase));
  McdCoefficients out;
  out.s = s;
  out.M = std::polar(1.0, -opa_phase) * bracket * std::sinh(2.0 * gain) / (1.0 + s);
  out.C = s / (1.0 + s);
  out.D = (2.0 + s) / (1.0 + s);
  return out;
}

std::complex<double> squeeze_expansion_term(int m, int n, int k, int l, double gain, double opa_phase,
                                            double phase) {
  require_count(m, "squeeze_expansion_term");
  require_count(n, "squeeze_expansion_term");
  require_gain(gain, "squeeze_expansion_term");
  if (k < 0 || l < 0 || l > std::min(m, n)) return {0.0, 0.0};
  const double t = std::tanh(gain);
  const double half_sinh = std::sinh(2.0 * gain) / 2.0;
  if ((k > 0 && t == 0.0) || (l > 0 && half_sinh == 0.0)) return {0.0, 0.0};

  const double log_mag = log_pow(t, k) + 0.5 * (log_factorial(m) + log_factorial(n)) - log_factorial(k) -
                         (m + n + 1) * std::log(std::cosh(gain)) + log_pow(half_sinh, l) +
                         0.5 * (log_factorial(m + k - l) + log_factorial(n + k - l)) - log_factorial(l) -
                         log_factorial(m - l) - log_factorial(n - l);
  const double arg = k * opa_phase + (m + k - l) * phase - l * opa_phase + l * std::numbers::pi;
  const cd term = std::polar(std::exp(log_mag), arg);
  if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
    throw NonFinite("squeeze_expansion_term: non-finite amplitude");
  }
  return term;
}

std::complex<double> squeezed_fock_amplitude(int m, int n, int rung, double gain, double opa_phase,
                                             double phase) {
  require_count(m, "squeezed_fock_amplitude");
  require_count(n, "squeezed_fock_amplitude");
  const int lmax = std::min(m, n);
  if (rung < -lmax) throw InvalidArgument("squeezed_fock_amplitude: rung below -min(m, n)");
  cd sum{0.0, 0.0};
  for (int l = std::max(0, -rung); l <= lmax; ++l) {
    sum += squeeze_expansion_term(m, n, rung + l, l, gain, opa_phase, phase);
  }
  return sum;
}

double qfi_pure_fock(int m, int n, double gain) {
  require_count(m, "qfi_pure_fock");
  require_count(n, "qfi_pure_fock");
  require_gain(gain, "qfi_pure_fock");
  const double sh = std::sinh(2.0 * gain);
  return (2.0 * m * n + m + n + 1.0) * sh * sh;
}

double qfi_diagonal_mixture(double mean_a, int n, double gain) {
  require_mean(mean_a, "qfi_diagonal_mixture");
  require_count(n, "qfi_diagonal_mixture");
  require_gain(gain, "qfi_diagonal_mixture");
  const double sh = std::sinh(2.0 * gain);
  return (2.0 * mean_a * n + mean_a + n + 1.0) * sh * sh;
}

double total_mean_photon_number(double mean_a, int n, double gain) {
  require_mean(mean_a, "total_mean_photon_number");
  require_count(n, "total_mean_photon_number");
  require_gain(gain, "total_mean_photon_number");
  const double sh = std::sinh(gain);
  return (mean_a + n) * std::cosh(2.0 * gain) + 2.0 * sh * sh;
}

double qcrb(double mean_a, int n, double gain) {
  const double f = qfi_diagonal_mixture(mean_a, n, gain);
  if (f <= 0.0) throw NoPhaseInformation("qcrb: quantum Fisher information is zero (g = 0)");
  return 1.0 / std::sqrt(f);
}

BenchmarkLimits benchmark_limits(double total_photons) {
  if (!(total_photons > 0.0) || !std::isfinite(total_photons)) {
    throw InvalidArgument("benchmark_limits: total photon number must be > 0");
  }
  return {1.0 / std::sqrt(total_photons), 1.0 / total_photons};
}

double parity_fock_fock(int m, int n, double gain, double phase) {
  require_count(m, "parity_fock_fock");
  require_count(n, "parity_fock_fock");
  require_gain(gain, "parity_fock_fock");
  // sum_k C(m,k) C(n,k) z^k = (1-z)^p P_p^{(0,q)}((1+z)/(1-z)) with z = -s(2+s),
  // 1 - z = (1+s)^2, p = min(m,n), q = |m-n|.
  const double s = phase_factor_s(gain, phase);
  const int p = std::min(m, n);
  const int q = std::abs(m - n);
  const double x = 2.0 / ((1.0 + s) * (1.0 + s)) - 1.0;
  const double value = sign_pow(n) * std::pow(1.0 + s, -(q + 1.0)) * jacobi_poly(p, 0.0, q, x);
  return checked(value, "parity_fock_fock");
}

double parity_fock_fock_series(int m, int n, double gain, double phase) {
  require_count(m, "parity_fock_fock_series");
  require_count(n, "parity_fock_fock_series");
  require_gain(gain, "parity_fock_fock_series");
  const double s = phase_factor_s(gain, phase);
  const double sin_phi = std::sin(phase);
  const double half = std::sin(phase / 2.0);
  const double ch = std::cosh(2.0 * gain);
  const double sh = std::sinh(2.0 * gain);
  const double kernel = (sin_phi * sin_phi + 4.0 * half * half * half * half * ch * ch) * sh * sh;

  const double log_prefactor = log_factorial(m) + log_factorial(n) - (m + n + 1.0) * std::log1p(s);
  double sum = 0.0;
  for (int k = 0; k <= std::min(m, n); ++k) {
    if (k > 0 && kernel == 0.0) break;
    const double log_mag = log_prefactor + log_pow(kernel, k) - 2.0 * log_factorial(k) - log_factorial(m - k) -
                           log_factorial(n - k);
    sum += sign_pow(n + k) * std::exp(log_mag);
  }
  return checked(sum, "parity_fock_fock_series");
}

double parity_coherent_fock(double alpha_sq, int n, double gain, double phase) {
  require_mean(alpha_sq, "parity_coherent_fock");
  require_count(n, "parity_coherent_fock");
  const McdCoefficients c = mcd_coefficients(gain, 0.0, phase);
  // D - 1 = 1/(1+s) > 0 for every phi, so the Laguerre argument is always finite.
  const double arg = alpha_sq * std::norm(c.M) / (c.D - 1.0);
  const double value =
      std::pow(1.0 - c.D, n) * std::exp(-alpha_sq * c.C) / (1.0 + c.s) * laguerre_poly(n, arg);
  return checked(value, "parity_coherent_fock");
}

double parity_thermal_fock(double mean_thermal, int n, double gain, double phase) {
  require_mean(mean_thermal, "parity_thermal_fock");
  require_count(n, "parity_thermal_fock");
  const McdCoefficients c = mcd_coefficients(gain, 0.0, phase);
  const double base = 1.0 + mean_thermal * c.C;
  const double value = std::pow(base - c.D, n) * std::pow(base, -(n + 1.0)) / (1.0 + c.s);
  return checked(value, "parity_thermal_fock");
}

double parity_diagonal_mixture(std::span<const double> weights, int n, double gain, double phase) {
  check_normalized({weights.begin(), weights.end()}, 1e-9);
  double sum = 0.0;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    if (weights[m] == 0.0) continue;
    sum += weights[m] * parity_fock_fock(static_cast<int>(m), n, gain, phase);
  }
  return sum;
}

double parity_two_mode_coherent(std::complex<double> alpha, std::complex<double> beta, double gain,
                                double opa_phase, double phase) {
  const McdCoefficients c = mcd_coefficients(gain, opa_phase, phase);
  const double exponent = 2.0 * (alpha * beta * c.M).real() - std::norm(alpha) * c.C - std::norm(beta) * c.D;
  return checked(std::exp(exponent) / (1.0 + c.s), "parity_two_mode_coherent");
}

double parity_small_phase_expansion(double mean_a, int n, double gain, double phase) {
  const double f = qfi_diagonal_mixture(mean_a, n, gain);
  return sign_pow(n) * (1.0 - 0.5 * f * phase * phase);
}

double parity_signal(const InputSpec& input, double gain, double phase) {
  const int n = input.mode_b_n;
  if (const auto* f = std::get_if<FockInput>(&input.mode_a)) return parity_fock_fock(f->m, n, gain, phase);
  if (const auto* c = std::get_if<CoherentInput>(&input.mode_a)) return parity_coherent_fock(c->mean, n, gain, phase);
  if (const auto* t = std::get_if<ThermalInput>(&input.mode_a)) return parity_thermal_fock(t->mean, n, gain, phase);
  const auto& d = std::get<DiagonalInput>(input.mode_a);
  return parity_diagonal_mixture(d.weights, n, gain, phase);
}

double sensitivity_error_propagation(double signal, double slope) {
  if (!std::isfinite(signal) || std::abs(signal) > 1.0 + 1e-12) {
    throw InvalidArgument("sensitivity_error_propagation: |signal| must be <= 1");
  }
  if (!(std::abs(slope) >= 1e-300)) throw ZeroSlope("sensitivity_error_propagation: zero slope");
  const double a = std::min(std::abs(signal), 1.0);
  // (1 - a)(1 + a) keeps the small difference accurate near |signal| = 1.
  return std::sqrt((1.0 - a) * (1.0 + a)) / std::abs(slope);
}

double finite_difference_slope(const std::function<double(double)>& signal, double phase) {
  const double h = std::max(1e-6, 1e-6 * std::abs(phase));
  return (signal(phase + h) - signal(phase - h)) / (2.0 * h);
}

PhaseSensitivity phase_sensitivity(const std::function<double(double)>& signal, double phase) {
  PhaseSensitivity out;
  out.limit_value = (phase == 0.0);
  out.evaluated_at = out.limit_value ? kLimitPhase : phase;
  try {
    out.value = sensitivity_error_propagation(signal(out.evaluated_at),
                                              finite_difference_slope(signal, out.evaluated_at));
  } catch (const ZeroSlope&) {
    out.value.reset();
  }
  return out;
}

PhaseSensitivity phase_sensitivity(const InputSpec& input, double gain, double phase) {
  return phase_sensitivity([&](double p) { return parity_signal(input, gain, p); }, phase);
}

}  // namespace su11

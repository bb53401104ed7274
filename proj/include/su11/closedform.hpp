#pragma once

// Closed-form phase-estimation quantities for an SU(1,1) interferometer fed
// by a photon-number-diagonal state in mode a and a Fock state |n> in mode b.
//
// Conventions: the first OPA is S2(xi) = exp(xi a^dag b^dag - xi^* a b) with
// xi = g e^{i theta}; the second OPA is S2(g, theta + pi) = S2(xi)^dag, so the
// interferometer is the identity at phi = 0. Parity is measured on mode b.

#include <complex>
#include <functional>
#include <optional>
#include <span>

#include "su11/input.hpp"

namespace su11 {

/// Which mode carries the phase shift. `lower` is mode a (e^{i phi a^dag a}),
/// `upper` is mode b (e^{i phi b^dag b}).
enum class PhaseMode { upper, lower };

struct InterferometerConfig {
  double gain = 0.0;       ///< parametric gain g >= 0
  double opa_phase = 0.0;  ///< theta
  double phase = 0.0;      ///< phi
  PhaseMode phase_mode = PhaseMode::lower;

  /// Throws InvalidArgument on negative or non-finite parameters.
  void validate() const;
};

/// Coefficients of the normal-ordered parity measurement operator.
/// C D = |M|^2 holds identically.
struct McdCoefficients {
  std::complex<double> M;
  double C = 0.0;
  double D = 2.0;
  double s = 0.0;  ///< 2 sin^2(phi/2) sinh^2(2g)
};

/// s = 2 sin^2(phi/2) sinh^2(2g), the common subexpression of every parity formula.
double phase_factor_s(double gain, double phase);

McdCoefficients mcd_coefficients(double gain, double opa_phase, double phase);

/// One (k, l) summand of the expansion of e^{i phi a^dag a} S2(xi) |m,n>. It is
/// the contribution of the k-fold pair creation after l-fold pair annihilation
/// to the ket |m+k-l>_a |n+k-l>_b.
std::complex<double> squeeze_expansion_term(int m, int n, int k, int l, double gain, double opa_phase,
                                            double phase);

/// Amplitude of |m+rung>_a |n+rung>_b in e^{i phi a^dag a} S2(xi) |m,n>, i.e. the
/// sum of expansion terms with k - l = rung. Requires rung >= -min(m, n).
std::complex<double> squeezed_fock_amplitude(int m, int n, int rung, double gain, double opa_phase,
                                             double phase);

/// QFI of the pure state e^{i phi a^dag a} S2(xi)|m,n>: (2mn + m + n + 1) sinh^2(2g).
double qfi_pure_fock(int m, int n, double gain);

/// QFI of the phase-averaged input: (2 n_a n + n_a + n + 1) sinh^2(2g).
double qfi_diagonal_mixture(double mean_a, int n, double gain);

/// Mean photon number inside the interferometer: (n_a + n) cosh(2g) + 2 sinh^2(g).
double total_mean_photon_number(double mean_a, int n, double gain);

/// Quantum Cramer-Rao bound 1/sqrt(QFI). Throws NoPhaseInformation when QFI == 0.
double qcrb(double mean_a, int n, double gain);

struct BenchmarkLimits {
  double snl = 0.0;  ///< 1/sqrt(N_tot)
  double hl = 0.0;   ///< 1/N_tot
};

BenchmarkLimits benchmark_limits(double total_photons);

/// Parity of mode b for input |m>_a|n>_b. Evaluated through a Jacobi-polynomial
/// recurrence; stable for large m, n.
double parity_fock_fock(int m, int n, double gain, double phase);

/// Same quantity from the literal alternating finite sum, with factorials in
/// log space and explicit sign bookkeeping. Reference path for small m, n.
double parity_fock_fock_series(int m, int n, double gain, double phase);

/// Parity for coherent |alpha>_a |n>_b; depends on alpha only through |alpha|^2.
double parity_coherent_fock(double alpha_sq, int n, double gain, double phase);

/// Parity for a thermal state of mean n_th in mode a and |n>_b.
double parity_thermal_fock(double mean_thermal, int n, double gain, double phase);

/// sum_m p_m parity_fock_fock(m, n). Throws InvalidArgument when |sum p - 1| > 1e-9.
double parity_diagonal_mixture(std::span<const double> weights, int n, double gain, double phase);

/// Parity for the two-mode coherent input |alpha>_a |beta>_b.
double parity_two_mode_coherent(std::complex<double> alpha, std::complex<double> beta, double gain,
                                double opa_phase, double phase);

/// Second-order expansion around phi = 0:
/// (-1)^n [1 - (2 n_a n + n_a + n + 1)/2 sinh^2(2g) phi^2].
double parity_small_phase_expansion(double mean_a, int n, double gain, double phase);

/// Closed-form parity signal for any supported input. Diagonal weights are used
/// as given; coherent and thermal use their dedicated formulas.
double parity_signal(const InputSpec& input, double gain, double phase);

/// Error propagation sqrt(1 - signal^2) / |slope|. Throws ZeroSlope when
/// |slope| < 1e-300 and InvalidArgument when |signal| > 1.
double sensitivity_error_propagation(double signal, double slope);

/// Central difference with step max(1e-6, 1e-6 |phi|).
double finite_difference_slope(const std::function<double(double)>& signal, double phase);

struct PhaseSensitivity {
  std::optional<double> value;  ///< empty when the slope vanishes
  bool limit_value = false;     ///< true when phi == 0 was replaced by its limit
  double evaluated_at = 0.0;
};

/// Phase at which the phi -> 0 limit of the sensitivity is reported.
inline constexpr double kLimitPhase = 1e-4;

/// Sensitivity from error propagation on an arbitrary signal. At phi == 0 the
/// 0/0 form is replaced by the value at kLimitPhase and flagged.
PhaseSensitivity phase_sensitivity(const std::function<double(double)>& signal, double phase);

PhaseSensitivity phase_sensitivity(const InputSpec& input, double gain, double phase);

}  // namespace su11

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace su11 {

/// Mode a in a Fock state |m>.
struct FockInput {
  int m = 0;
};

/// Mode a in a coherent state |alpha> with |alpha|^2 = mean, arg(alpha) = phase.
struct CoherentInput {
  double mean = 0.0;
  double phase = 0.0;
};

/// Mode a in a thermal state with mean photon number mean.
struct ThermalInput {
  double mean = 0.0;
};

/// Mode a in an explicit photon-number-diagonal state, weights[m] = p_m.
struct DiagonalInput {
  std::vector<double> weights;
};

using ModeAState = std::variant<FockInput, CoherentInput, ThermalInput, DiagonalInput>;

/// Mode a state paired with the Fock number n of mode b.
struct InputSpec {
  ModeAState mode_a;
  int mode_b_n = 0;
};

/// Mean photon number of the mode a state.
double mean_photon_number(const ModeAState& state);

/// "fock", "coherent", "thermal" or "diag".
std::string input_kind_name(const ModeAState& state);

/// Poisson weights p_m = e^-mean mean^m / m!, truncated once the remaining
/// tail probability is below tail_tol.
std::vector<double> poisson_weights(double mean, double tail_tol);

/// Geometric (thermal) weights p_m = mean^m / (1+mean)^(m+1), truncated once
/// the remaining tail probability (mean/(1+mean))^(M+1) is below tail_tol.
std::vector<double> thermal_weights(double mean, double tail_tol);

/// Photon-number distribution of the mode a state. Fock and Diagonal are
/// returned exactly; Coherent and Thermal are truncated at tail_tol.
std::vector<double> diagonal_weights(const ModeAState& state, double tail_tol);

/// Throws InvalidArgument unless the weights are non-negative and sum to 1
/// within tol.
void check_normalized(const std::vector<double>& weights, double tol);

}  // namespace su11

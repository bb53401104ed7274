#pragma once

// Brute-force simulation of the SU(1,1) interferometer on a truncated two-mode
// Fock space. Nothing here uses the closed forms; it is the reference the
// closed forms are checked against.

#include <complex>
#include <span>
#include <vector>

#include "su11/closedform.hpp"
#include "su11/input.hpp"

namespace su11::oracle {

using cd = std::complex<double>;

enum class Mode { a, b };
enum class Direction { forward, inverse };

/// Two-mode pure state on the basis |j>_a |k>_b, 0 <= j, k <= cutoff.
///
/// Amplitudes are stored per photon-number-difference sector d = j - k, one
/// dense line per occupied sector, because the two-mode squeezer never couples
/// different sectors. Position i on sector d is (j, k) = (max(d,0)+i, max(-d,0)+i).
class TwoModeState {
 public:
  explicit TwoModeState(int cutoff);

  static TwoModeState fock(int m, int n, int cutoff);

  int cutoff() const { return cutoff_; }
  double leaked_norm() const { return leaked_; }
  void add_leak(double amount) { leaked_ += amount; }

  cd amplitude(int j, int k) const;
  void set_amplitude(int j, int k, cd value);

  double norm_squared() const;

  /// Sectors with storage allocated, in increasing d.
  std::vector<int> occupied_sectors() const;
  bool has_sector(int d) const;
  std::span<const cd> sector(int d) const;
  /// Allocates the sector on first use.
  std::vector<cd>& sector_storage(int d);
  static int sector_length(int d, int cutoff);

  /// Same amplitudes embedded in a larger cutoff. new_cutoff >= cutoff().
  TwoModeState with_cutoff(int new_cutoff) const;

 private:
  int cutoff_;
  std::vector<std::vector<cd>> sectors_;  // index d + cutoff_
  double leaked_ = 0.0;
};

/// Ensemble of orthogonal pure branches sum_i w_i |psi_i><psi_i|.
struct MixtureEnsemble {
  struct Member {
    double weight = 1.0;
    TwoModeState state;
  };
  std::vector<Member> members;

  double total_weight() const;
};

struct OracleOptions {
  /// Maximum norm any single evolution may push past the cutoff.
  double leak_budget = 1e-20;
  /// Error a mixture branch may contribute to a weighted expectation; branches
  /// of weight w get leak budget max(leak_budget, (member_error / 2w)^2).
  double member_error = 1e-12;
  /// Largest cutoff the automatic doubling may reach.
  int max_cutoff = 8192;
  /// Each squeezer is re-run at this multiple of the cutoff that first met the
  /// leak budget; 2 gives the cutoff-doubling robustness check.
  double cutoff_factor = 1.0;
  /// Truncation of infinite photon-number distributions in build_input.
  double input_tail = 1e-12;
};

/// ceil((max_index + 1) e^{2g}) + 20.
int default_cutoff(int max_index, double gain);

/// Fock: one member; Coherent: one member with Poisson amplitudes; Thermal and
/// Diagonal: one member per populated m. Throws InvalidArgument if the cutoff
/// cannot hold the state to within tail_tol.
MixtureEnsemble build_input(const InputSpec& spec, int cutoff, double tail_tol = 1e-12);

/// |alpha>_a |beta>_b truncated at cutoff; throws if either tail exceeds tail_tol.
TwoModeState two_mode_coherent_state(cd alpha, cd beta, int cutoff, double tail_tol = 1e-12);

/// Applies S2(g e^{i theta}) (forward) or its inverse S2(-g e^{i theta}).
/// Evolution is exact inside the cutoff; the norm that reaches past it is
/// removed and added to leaked_norm. Throws LeakBudgetExceeded when the
/// accumulated leak exceeds leak_budget.
TwoModeState apply_two_mode_squeezer(TwoModeState state, double gain, double opa_phase, Direction direction,
                                     double leak_budget = OracleOptions{}.leak_budget);

/// Multiplies amplitude(j, k) by e^{i phi j} (mode a) or e^{i phi k} (mode b).
TwoModeState apply_phase_shift(TwoModeState state, double phase, Mode mode);

/// S2(g, theta) -> phase shift on config.phase_mode -> S2(g, theta + pi), per
/// member. The first squeezer starts at default_cutoff, the second at the
/// cutoff the first ended with; each grows by 1.5x whenever the leak budget is
/// exceeded.
MixtureEnsemble interferometer_output(const MixtureEnsemble& input, const InterferometerConfig& config,
                                      const OracleOptions& options = {});

/// Applies a single squeezer to every member with the same cutoff growth rule.
MixtureEnsemble squeeze_ensemble(const MixtureEnsemble& input, double gain, double opa_phase, Direction direction,
                                 const OracleOptions& options = {});

double parity_expectation(const TwoModeState& state, Mode mode);
double parity_expectation(const MixtureEnsemble& ensemble, Mode mode);

struct PhotonStatistics {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
};

PhotonStatistics photon_statistics(const MixtureEnsemble& ensemble);

/// Parity on mode b after the full interferometer for the given input. Members
/// are evolved one at a time, so large thermal mixtures stay cheap in memory.
double oracle_parity(const InputSpec& spec, const InterferometerConfig& config, const OracleOptions& options = {});

/// <out(m')| Pi_b |out(m)> for input |m><m'| (x) |n><n|, the off-diagonal
/// contribution of a mode a coherence to the parity signal.
cd parity_cross_term(int m, int m_prime, int n, const InterferometerConfig& config,
                     const OracleOptions& options = {});

/// 4 Var(n_a) on S2(g, theta)|m, n>. Equals the pure-state QFI because the
/// phase generator is n_a.
double oracle_qfi_pure(int m, int n, double gain, double opa_phase = 0.0, const OracleOptions& options = {});

/// sum_m p_m oracle_qfi_pure(m, n, g).
double oracle_qfi_mixture(std::span<const double> weights, int n, double gain, double opa_phase = 0.0,
                          const OracleOptions& options = {});

/// Photon-number representation c_{m,m'} of a single-mode density operator.
using DensityTable = std::vector<std::vector<cd>>;

/// Phase averaging over a common reference phase: keeps p_m = c_{m,m}. Throws
/// InvalidArgument unless the table is square, Hermitian and of unit trace
/// (within 1e-9).
std::vector<double> phase_average_diagonal(const DensityTable& coefficients);

/// The table c_{m,m'} = <m|alpha><alpha|m'> truncated to dim entries.
DensityTable coherent_density_table(cd alpha, int dim);

}  // namespace su11::oracle

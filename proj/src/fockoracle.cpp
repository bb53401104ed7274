#include "su11/fockoracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "su11/errors.hpp"
#include "su11/special.hpp"

namespace su11::oracle {

namespace {

constexpr double kBesselFloor = 1e-18;

int line_start_a(int d) { return std::max(d, 0); }
int line_start_b(int d) { return std::max(-d, 0); }

// Extra rungs simulated past the cutoff; whatever lands there is booked as leak.
int guard_rungs(int cutoff) { return 16 + cutoff / 8; }

// exp(xi a^dag b^dag - xi^* a b) on one sector line starting at (j0, k0).
//
// The generator G restricted to the line is tridiagonal and H = iG is
// Hermitian. With i xi = |xi| e^{i beta}, H = P T P^dag where P = diag(e^{i beta i})
// and T is real symmetric with off-diagonal |xi| w_i. exp(-iT) is expanded in
// Chebyshev polynomials of T/R with Bessel coefficients,
// exp(-iT) = sum_k (2 - delta_k0) (-i)^k J_k(R) T_k(T/R), and since T is real the
// recurrence runs on the real and imaginary parts separately. The truncated
// generator keeps the evolution exactly unitary on the line.
void propagate_sector(std::vector<cd>& v, int j0, int k0, cd xi) {
  const std::size_t len = v.size();
  if (len < 2 || xi == cd{0.0, 0.0}) return;

  std::vector<double> w(len + 1, 0.0);  // w[i] couples i-1 and i; w[0] = w[len] = 0
  for (std::size_t i = 1; i < len; ++i) w[i] = std::sqrt((j0 + static_cast<double>(i)) * (k0 + static_cast<double>(i)));
  double row_max = 0.0;
  for (std::size_t i = 0; i < len; ++i) row_max = std::max(row_max, w[i] + w[i + 1]);
  const double radius = std::abs(xi) * row_max;  // Gershgorin bound on the spectrum of T
  const double scale = std::abs(xi) / radius;
  for (double& x : w) x *= scale;
  const double beta = std::arg(cd{0.0, 1.0} * xi);

  // u = P^dag v, split into real and imaginary parts.
  std::vector<double> re(len), im(len);
  for (std::size_t i = 0; i < len; ++i) {
    const cd u = v[i] * std::polar(1.0, -beta * static_cast<double>(i));
    re[i] = u.real();
    im[i] = u.imag();
  }

  const int kmax = static_cast<int>(std::ceil(radius + 15.0 * std::cbrt(radius) + 40.0));
  const std::vector<double> bessel = bessel_j_sequence(kmax, radius);
  int terms = kmax;
  while (terms > 1 && terms > radius && std::abs(bessel[terms]) < kBesselFloor) --terms;

  // Chebyshev vectors for both parts, with a zero pad on each side so the
  // stencil needs no bounds checks.
  const std::size_t n = len + 2;
  std::vector<double> pr(n, 0.0), pi(n, 0.0), cr(n, 0.0), ci(n, 0.0), nr(n, 0.0), ni(n, 0.0);
  std::copy(re.begin(), re.end(), pr.begin() + 1);
  std::copy(im.begin(), im.end(), pi.begin() + 1);
  const double* wl = w.data();      // wl[i] couples position i with i-1
  const double* wr = w.data() + 1;  // wr[i] couples position i with i+1

  auto apply = [&](const std::vector<double>& in, std::vector<double>& out, const std::vector<double>& sub,
                   double two) {
    const double* x = in.data() + 1;
    double* y = out.data() + 1;
    const double* z = sub.data() + 1;
    for (std::size_t i = 0; i < len; ++i) y[i] = two * (wl[i] * x[i - 1] + wr[i] * x[i + 1]) - z[i];
  };

  // The coefficient (-i)^k c is real for even k and imaginary for odd k.
  std::vector<double> acc_r(len), acc_i(len);
  const double b0 = bessel[0];
  for (std::size_t i = 0; i < len; ++i) {
    acc_r[i] = b0 * re[i];
    acc_i[i] = b0 * im[i];
  }
  auto accumulate = [&](int k, const std::vector<double>& tr, const std::vector<double>& ti) {
    const double c = 2.0 * bessel[k];
    const double* xr = tr.data() + 1;
    const double* xi_ = ti.data() + 1;
    switch (k % 4) {
      case 0:
        for (std::size_t i = 0; i < len; ++i) acc_r[i] += c * xr[i], acc_i[i] += c * xi_[i];
        break;
      case 1:  // -i c
        for (std::size_t i = 0; i < len; ++i) acc_r[i] += c * xi_[i], acc_i[i] -= c * xr[i];
        break;
      case 2:
        for (std::size_t i = 0; i < len; ++i) acc_r[i] -= c * xr[i], acc_i[i] -= c * xi_[i];
        break;
      default:  // +i c
        for (std::size_t i = 0; i < len; ++i) acc_r[i] -= c * xi_[i], acc_i[i] += c * xr[i];
        break;
    }
  };

  const std::vector<double> zeros(n, 0.0);
  apply(pr, cr, zeros, 1.0);
  apply(pi, ci, zeros, 1.0);
  accumulate(1, cr, ci);
  for (int k = 2; k <= terms; ++k) {
    apply(cr, nr, pr, 2.0);
    apply(ci, ni, pi, 2.0);
    accumulate(k, nr, ni);
    std::swap(pr, cr);
    std::swap(cr, nr);
    std::swap(pi, ci);
    std::swap(ci, ni);
  }
  for (std::size_t i = 0; i < len; ++i) {
    v[i] = cd{acc_r[i], acc_i[i]} * std::polar(1.0, beta * static_cast<double>(i));
  }
}

int max_occupied_index(const TwoModeState& state) {
  int best = 0;
  for (int d : state.occupied_sectors()) {
    const auto line = state.sector(d);
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] != cd{0.0, 0.0}) {
        best = std::max(best, std::max(line_start_a(d), line_start_b(d)) + static_cast<int>(i));
      }
    }
  }
  return best;
}

// One squeezer with its own cutoff growth: retries from the same input with a
// 1.5x larger cutoff whenever the leak budget is exceeded, then optionally
// repeats at cutoff_factor times the cutoff that first met the budget.
TwoModeState squeeze_with_growth(const TwoModeState& input, double gain, double opa_phase, Direction direction,
                                 double leak_budget, int start_cutoff, const OracleOptions& options) {
  int cutoff = std::max(start_cutoff, input.cutoff());
  for (;;) {
    try {
      TwoModeState out = apply_two_mode_squeezer(input.with_cutoff(cutoff), gain, opa_phase, direction, leak_budget);
      if (options.cutoff_factor == 1.0) return out;
      const int scaled = static_cast<int>(std::ceil(cutoff * options.cutoff_factor));
      return apply_two_mode_squeezer(input.with_cutoff(std::max(scaled, input.cutoff())), gain, opa_phase, direction,
                                     leak_budget);
    } catch (const LeakBudgetExceeded&) {
      if (cutoff >= options.max_cutoff) throw;
      cutoff = std::min(cutoff + std::max(cutoff / 2, 16), options.max_cutoff);
    }
  }
}

// Leak allowed for a branch of weight w. A leak eps moves a bounded expectation
// by at most ~2 sqrt(eps), and the branch enters the mixture scaled by w, so a
// light branch may leak more for the same error in the mixture.
double member_leak_budget(double weight, const OracleOptions& options) {
  if (!(weight > 0.0) || weight >= 1.0) return options.leak_budget;
  const double allowed = options.member_error / (2.0 * weight);
  return std::clamp(allowed * allowed, options.leak_budget, 1e-6);
}

TwoModeState interferometer_member(const TwoModeState& input, const InterferometerConfig& config,
                                   const OracleOptions& options, double leak_budget) {
  config.validate();
  const int first = default_cutoff(max_occupied_index(input), config.gain);
  TwoModeState state = squeeze_with_growth(input, config.gain, config.opa_phase, Direction::forward, leak_budget,
                                           first, options);
  state = apply_phase_shift(std::move(state), config.phase,
                            config.phase_mode == PhaseMode::lower ? Mode::a : Mode::b);
  const int second = state.cutoff();
  return squeeze_with_growth(state, config.gain, config.opa_phase + std::numbers::pi, Direction::forward,
                             leak_budget, second, options);
}

TwoModeState interferometer_member(const TwoModeState& input, const InterferometerConfig& config,
                                   const OracleOptions& options) {
  return interferometer_member(input, config, options, options.leak_budget);
}

void require_fits(int index, int cutoff, const char* what) {
  if (index > cutoff) {
    throw InvalidArgument(std::string("cutoff ") + std::to_string(cutoff) + " too small for " + what);
  }
}

std::vector<double> renormalized(std::vector<double> w) {
  double total = 0.0;
  for (double p : w) total += p;
  for (double& p : w) p /= total;
  return w;
}

cd coherent_amplitude(cd alpha, int m) {
  const double r = std::abs(alpha);
  if (r == 0.0) return m == 0 ? cd{1.0, 0.0} : cd{0.0, 0.0};
  const double log_mag = m * std::log(r) - 0.5 * r * r - 0.5 * log_factorial(m);
  return std::polar(std::exp(log_mag), m * std::arg(alpha));
}

}  // namespace

// ---- TwoModeState ----------------------------------------------------------

TwoModeState::TwoModeState(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 0) throw InvalidArgument("TwoModeState: cutoff must be >= 0");
  sectors_.resize(2 * static_cast<std::size_t>(cutoff) + 1);
}

TwoModeState TwoModeState::fock(int m, int n, int cutoff) {
  if (m < 0 || n < 0) throw InvalidArgument("TwoModeState::fock: photon numbers must be >= 0");
  require_fits(std::max(m, n), cutoff, "Fock state");
  TwoModeState s(cutoff);
  s.set_amplitude(m, n, 1.0);
  return s;
}

int TwoModeState::sector_length(int d, int cutoff) { return cutoff + 1 - std::abs(d); }

cd TwoModeState::amplitude(int j, int k) const {
  if (j < 0 || k < 0 || j > cutoff_ || k > cutoff_) return {0.0, 0.0};
  const auto& line = sectors_[j - k + cutoff_];
  if (line.empty()) return {0.0, 0.0};
  return line[std::min(j, k)];
}

void TwoModeState::set_amplitude(int j, int k, cd value) {
  if (j < 0 || k < 0 || j > cutoff_ || k > cutoff_) {
    throw InvalidArgument("TwoModeState::set_amplitude: index outside cutoff");
  }
  sector_storage(j - k)[std::min(j, k)] = value;
}

double TwoModeState::norm_squared() const {
  double total = 0.0;
  for (const auto& line : sectors_) {
    for (const cd& a : line) total += std::norm(a);
  }
  return total;
}

std::vector<int> TwoModeState::occupied_sectors() const {
  std::vector<int> out;
  for (std::size_t idx = 0; idx < sectors_.size(); ++idx) {
    if (!sectors_[idx].empty()) out.push_back(static_cast<int>(idx) - cutoff_);
  }
  return out;
}

bool TwoModeState::has_sector(int d) const {
  return std::abs(d) <= cutoff_ && !sectors_[d + cutoff_].empty();
}

std::span<const cd> TwoModeState::sector(int d) const {
  if (std::abs(d) > cutoff_) return {};
  return sectors_[d + cutoff_];
}

std::vector<cd>& TwoModeState::sector_storage(int d) {
  if (std::abs(d) > cutoff_) throw InvalidArgument("TwoModeState: sector outside cutoff");
  auto& line = sectors_[d + cutoff_];
  if (line.empty()) line.assign(sector_length(d, cutoff_), cd{0.0, 0.0});
  return line;
}

TwoModeState TwoModeState::with_cutoff(int new_cutoff) const {
  if (new_cutoff < cutoff_) throw InvalidArgument("TwoModeState::with_cutoff: cannot shrink");
  TwoModeState out(new_cutoff);
  out.leaked_ = leaked_;
  for (int d : occupied_sectors()) {
    const auto src = sector(d);
    auto& dst = out.sector_storage(d);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

double MixtureEnsemble::total_weight() const {
  double total = 0.0;
  for (const auto& member : members) total += member.weight;
  return total;
}

// ---- construction ------------------------------------------------------------

int default_cutoff(int max_index, double gain) {
  return static_cast<int>(std::ceil((max_index + 1.0) * std::exp(2.0 * gain))) + 20;
}

MixtureEnsemble build_input(const InputSpec& spec, int cutoff, double tail_tol) {
  const int n = spec.mode_b_n;
  if (n < 0) throw InvalidArgument("build_input: mode b photon number must be >= 0");
  require_fits(n, cutoff, "mode b Fock state");
  MixtureEnsemble out;

  if (const auto* f = std::get_if<FockInput>(&spec.mode_a)) {
    out.members.push_back({1.0, TwoModeState::fock(f->m, n, cutoff)});
    return out;
  }
  if (const auto* c = std::get_if<CoherentInput>(&spec.mode_a)) {
    const int needed = static_cast<int>(poisson_weights(c->mean, tail_tol).size()) - 1;
    require_fits(needed, cutoff, "coherent state tail");
    const cd alpha = std::polar(std::sqrt(c->mean), c->phase);
    TwoModeState s(cutoff);
    for (int m = 0; m <= cutoff; ++m) {
      const cd a = coherent_amplitude(alpha, m);
      if (a != cd{0.0, 0.0}) s.set_amplitude(m, n, a);
    }
    out.members.push_back({1.0, std::move(s)});
    return out;
  }

  std::vector<double> weights;
  if (const auto* t = std::get_if<ThermalInput>(&spec.mode_a)) {
    weights = renormalized(thermal_weights(t->mean, tail_tol));
  } else {
    weights = std::get<DiagonalInput>(spec.mode_a).weights;
    check_normalized(weights, 1e-12);
  }
  require_fits(static_cast<int>(weights.size()) - 1, cutoff, "mode a photon-number distribution");
  for (std::size_t m = 0; m < weights.size(); ++m) {
    if (weights[m] > 0.0) out.members.push_back({weights[m], TwoModeState::fock(static_cast<int>(m), n, cutoff)});
  }
  return out;
}

TwoModeState two_mode_coherent_state(cd alpha, cd beta, int cutoff, double tail_tol) {
  require_fits(static_cast<int>(poisson_weights(std::norm(alpha), tail_tol).size()) - 1, cutoff,
               "coherent state in mode a");
  require_fits(static_cast<int>(poisson_weights(std::norm(beta), tail_tol).size()) - 1, cutoff,
               "coherent state in mode b");
  std::vector<cd> a(cutoff + 1);
  std::vector<cd> b(cutoff + 1);
  for (int i = 0; i <= cutoff; ++i) {
    a[i] = coherent_amplitude(alpha, i);
    b[i] = coherent_amplitude(beta, i);
  }
  TwoModeState s(cutoff);
  for (int j = 0; j <= cutoff; ++j) {
    for (int k = 0; k <= cutoff; ++k) {
      const cd v = a[j] * b[k];
      if (v != cd{0.0, 0.0}) s.set_amplitude(j, k, v);
    }
  }
  return s;
}

// ---- evolution ---------------------------------------------------------------

TwoModeState apply_two_mode_squeezer(TwoModeState state, double gain, double opa_phase, Direction direction,
                                     double leak_budget) {
  if (!(gain >= 0.0) || !std::isfinite(gain)) throw InvalidArgument("apply_two_mode_squeezer: gain must be >= 0");
  if (gain == 0.0) return state;
  const cd xi = std::polar(direction == Direction::forward ? gain : -gain, opa_phase);
  const int cutoff = state.cutoff();
  const int extended = cutoff + guard_rungs(cutoff);

  double leaked = 0.0;
  for (int d : state.occupied_sectors()) {
    auto& line = state.sector_storage(d);
    const std::size_t kept = line.size();
    std::vector<cd> work(TwoModeState::sector_length(d, extended), cd{0.0, 0.0});
    std::copy(line.begin(), line.end(), work.begin());
    propagate_sector(work, line_start_a(d), line_start_b(d), xi);
    for (std::size_t i = kept; i < work.size(); ++i) leaked += std::norm(work[i]);
    std::copy(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(kept), line.begin());
  }
  state.add_leak(leaked);
  if (!std::isfinite(state.leaked_norm()) || state.leaked_norm() > leak_budget) {
    throw LeakBudgetExceeded("two-mode squeezer leaked " + std::to_string(state.leaked_norm()) +
                             " past cutoff " + std::to_string(cutoff));
  }
  return state;
}

TwoModeState apply_phase_shift(TwoModeState state, double phase, Mode mode) {
  if (phase == 0.0) return state;
  for (int d : state.occupied_sectors()) {
    auto& line = state.sector_storage(d);
    const int start = mode == Mode::a ? line_start_a(d) : line_start_b(d);
    for (std::size_t i = 0; i < line.size(); ++i) {
      line[i] *= std::polar(1.0, phase * static_cast<double>(start + static_cast<int>(i)));
    }
  }
  return state;
}

MixtureEnsemble interferometer_output(const MixtureEnsemble& input, const InterferometerConfig& config,
                                      const OracleOptions& options) {
  MixtureEnsemble out;
  out.members.reserve(input.members.size());
  for (const auto& member : input.members) {
    out.members.push_back({member.weight, interferometer_member(member.state, config, options,
                                                                member_leak_budget(member.weight, options))});
  }
  return out;
}

MixtureEnsemble squeeze_ensemble(const MixtureEnsemble& input, double gain, double opa_phase, Direction direction,
                                 const OracleOptions& options) {
  MixtureEnsemble out;
  out.members.reserve(input.members.size());
  for (const auto& member : input.members) {
    const int start = default_cutoff(max_occupied_index(member.state), gain);
    out.members.push_back({member.weight, squeeze_with_growth(member.state, gain, opa_phase, direction,
                                                              member_leak_budget(member.weight, options), start,
                                                              options)});
  }
  return out;
}

// ---- observables -------------------------------------------------------------

double parity_expectation(const TwoModeState& state, Mode mode) {
  double total = 0.0;
  for (int d : state.occupied_sectors()) {
    const auto line = state.sector(d);
    const int start = mode == Mode::a ? line_start_a(d) : line_start_b(d);
    for (std::size_t i = 0; i < line.size(); ++i) {
      const double sign = ((start + static_cast<int>(i)) % 2 == 0) ? 1.0 : -1.0;
      total += sign * std::norm(line[i]);
    }
  }
  return total;
}

double parity_expectation(const MixtureEnsemble& ensemble, Mode mode) {
  double total = 0.0;
  for (const auto& member : ensemble.members) total += member.weight * parity_expectation(member.state, mode);
  return total;
}

PhotonStatistics photon_statistics(const MixtureEnsemble& ensemble) {
  PhotonStatistics st;
  double norm = 0.0;
  for (const auto& member : ensemble.members) {
    for (int d : member.state.occupied_sectors()) {
      const auto line = member.state.sector(d);
      for (std::size_t i = 0; i < line.size(); ++i) {
        const double p = member.weight * std::norm(line[i]);
        norm += p;
        st.mean_a += p * (line_start_a(d) + static_cast<double>(i));
        st.mean_b += p * (line_start_b(d) + static_cast<double>(i));
      }
    }
  }
  if (norm <= 0.0) throw InvalidArgument("photon_statistics: empty ensemble");
  st.mean_a /= norm;
  st.mean_b /= norm;
  for (const auto& member : ensemble.members) {
    for (int d : member.state.occupied_sectors()) {
      const auto line = member.state.sector(d);
      for (std::size_t i = 0; i < line.size(); ++i) {
        const double p = member.weight * std::norm(line[i]);
        const double da = line_start_a(d) + static_cast<double>(i) - st.mean_a;
        const double db = line_start_b(d) + static_cast<double>(i) - st.mean_b;
        st.var_a += p * da * da;
        st.var_b += p * db * db;
      }
    }
  }
  st.var_a /= norm;
  st.var_b /= norm;
  return st;
}

double oracle_parity(const InputSpec& spec, const InterferometerConfig& config, const OracleOptions& options) {
  const int n = spec.mode_b_n;
  if (std::holds_alternative<FockInput>(spec.mode_a) || std::holds_alternative<CoherentInput>(spec.mode_a)) {
    const int needed = static_cast<int>(diagonal_weights(spec.mode_a, options.input_tail).size()) - 1;
    const auto input = build_input(spec, std::max(needed, n), options.input_tail);
    return parity_expectation(interferometer_output(input, config, options), Mode::b);
  }
  std::vector<double> weights = diagonal_weights(spec.mode_a, options.input_tail);
  if (std::holds_alternative<ThermalInput>(spec.mode_a)) weights = renormalized(std::move(weights));
  check_normalized(weights, 1e-12);
  double total = 0.0;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    if (weights[m] == 0.0) continue;
    const int mi = static_cast<int>(m);
    const auto out = interferometer_member(TwoModeState::fock(mi, n, std::max(mi, n)), config, options,
                                           member_leak_budget(weights[m], options));
    total += weights[m] * parity_expectation(out, Mode::b);
  }
  return total;
}

cd parity_cross_term(int m, int m_prime, int n, const InterferometerConfig& config, const OracleOptions& options) {
  const int cutoff = std::max({m, m_prime, n});
  const auto ket = interferometer_member(TwoModeState::fock(m, n, cutoff), config, options);
  const auto bra = interferometer_member(TwoModeState::fock(m_prime, n, cutoff), config, options);
  cd total{0.0, 0.0};
  const int limit = std::min(ket.cutoff(), bra.cutoff());
  for (int j = 0; j <= limit; ++j) {
    for (int k = 0; k <= limit; ++k) {
      const cd a = ket.amplitude(j, k);
      if (a == cd{0.0, 0.0}) continue;
      total += std::conj(bra.amplitude(j, k)) * (k % 2 == 0 ? 1.0 : -1.0) * a;
    }
  }
  return total;
}

double oracle_qfi_pure(int m, int n, double gain, double opa_phase, const OracleOptions& options) {
  MixtureEnsemble input;
  input.members.push_back({1.0, TwoModeState::fock(m, n, std::max(m, n))});
  const auto squeezed = squeeze_ensemble(input, gain, opa_phase, Direction::forward, options);
  return 4.0 * photon_statistics(squeezed).var_a;
}

double oracle_qfi_mixture(std::span<const double> weights, int n, double gain, double opa_phase,
                          const OracleOptions& options) {
  check_normalized({weights.begin(), weights.end()}, 1e-9);
  double total = 0.0;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    if (weights[m] == 0.0) continue;
    total += weights[m] * oracle_qfi_pure(static_cast<int>(m), n, gain, opa_phase, options);
  }
  return total;
}

// ---- phase averaging ---------------------------------------------------------

std::vector<double> phase_average_diagonal(const DensityTable& coefficients) {
  const std::size_t dim = coefficients.size();
  if (dim == 0) throw InvalidArgument("phase_average_diagonal: empty table");
  for (const auto& row : coefficients) {
    if (row.size() != dim) throw InvalidArgument("phase_average_diagonal: table is not square");
  }
  constexpr double kTol = 1e-9;
  cd trace{0.0, 0.0};
  for (std::size_t m = 0; m < dim; ++m) {
    trace += coefficients[m][m];
    for (std::size_t mp = 0; mp < dim; ++mp) {
      if (std::abs(coefficients[m][mp] - std::conj(coefficients[mp][m])) > kTol) {
        throw InvalidArgument("phase_average_diagonal: table is not Hermitian");
      }
    }
  }
  if (std::abs(trace - cd{1.0, 0.0}) > kTol) {
    throw InvalidArgument("phase_average_diagonal: trace differs from 1");
  }
  std::vector<double> out(dim);
  for (std::size_t m = 0; m < dim; ++m) {
    const double p = coefficients[m][m].real();
    if (p < -kTol) throw InvalidArgument("phase_average_diagonal: negative population");
    out[m] = std::max(p, 0.0);
  }
  return out;
}

DensityTable coherent_density_table(cd alpha, int dim) {
  if (dim <= 0) throw InvalidArgument("coherent_density_table: dim must be > 0");
  std::vector<cd> amp(dim);
  for (int m = 0; m < dim; ++m) amp[m] = coherent_amplitude(alpha, m);
  DensityTable table(dim, std::vector<cd>(dim));
  for (int m = 0; m < dim; ++m) {
    for (int mp = 0; mp < dim; ++mp) table[m][mp] = amp[m] * std::conj(amp[mp]);
  }
  return table;
}

}  // namespace su11::oracle

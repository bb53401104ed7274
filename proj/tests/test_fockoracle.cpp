#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "su11/closedform.hpp"
#include "su11/errors.hpp"
#include "su11/fockoracle.hpp"

using doctest::Approx;
using namespace su11::oracle;
using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_difference(const TwoModeState& a, const TwoModeState& b) {
  const int c = std::max(a.cutoff(), b.cutoff());
  double worst = 0.0;
  for (int j = 0; j <= c; ++j) {
    for (int k = 0; k <= c; ++k) worst = std::max(worst, std::abs(a.amplitude(j, k) - b.amplitude(j, k)));
  }
  return worst;
}

TwoModeState squeezed(int m, int n, double g, double theta) {
  MixtureEnsemble in;
  in.members.push_back({1.0, TwoModeState::fock(m, n, std::max(m, n))});
  return squeeze_ensemble(in, g, theta, Direction::forward).members.front().state;
}

}  // namespace

TEST_CASE("state layout") {
  auto s = TwoModeState::fock(3, 1, 5);
  CHECK(s.amplitude(3, 1) == cd{1.0, 0.0});
  CHECK(s.amplitude(1, 3) == cd{0.0, 0.0});
  CHECK(s.occupied_sectors() == std::vector<int>{2});
  s.set_amplitude(0, 4, {0.0, 0.5});
  CHECK(s.has_sector(-4));
  CHECK(s.norm_squared() == Approx(1.25));
  const auto big = s.with_cutoff(9);
  CHECK(big.amplitude(0, 4) == cd{0.0, 0.5});
  CHECK(TwoModeState::sector_length(2, 5) == 4);
  CHECK_THROWS_AS(TwoModeState::fock(6, 0, 5), su11::InvalidArgument);
  CHECK_THROWS_AS(s.with_cutoff(3), su11::InvalidArgument);
  CHECK_THROWS_AS(s.set_amplitude(6, 0, 1.0), su11::InvalidArgument);
}

TEST_CASE("two-mode squeezed vacuum") {
  for (double g : {0.3, 1.0}) {
    const double theta = 0.6;
    const auto s = squeezed(0, 0, g, theta);
    for (int k = 0; k <= 6; ++k) {
      const cd expected = std::polar(std::pow(std::tanh(g), k) / std::cosh(g), k * theta);
      CHECK(std::abs(s.amplitude(k, k) - expected) < 1e-13);
    }
    MixtureEnsemble e;
    e.members.push_back({1.0, s});
    CHECK(photon_statistics(e).mean_a == Approx(std::pow(std::sinh(g), 2)).epsilon(1e-12));
  }
}

TEST_CASE("squeezer preserves the norm and the photon-number difference") {
  const auto s = squeezed(3, 1, 1.1, 0.4);
  CHECK(s.norm_squared() + s.leaked_norm() == Approx(1.0).epsilon(1e-13));
  CHECK(s.leaked_norm() <= OracleOptions{}.leak_budget);
  CHECK(s.occupied_sectors() == std::vector<int>{2});
}

TEST_CASE("forward then inverse squeezer returns the input") {
  const auto input = TwoModeState::fock(2, 1, 2);
  const auto out = squeezed(2, 1, 1.0, 0.3);
  const auto back = apply_two_mode_squeezer(out, 1.0, 0.3, Direction::inverse);
  CHECK(max_difference(back, input.with_cutoff(back.cutoff())) < 1e-12);
}

TEST_CASE("squeezer amplitudes: frozen values from a dense matrix exponential") {
  const cd expected[] = {{-0.5317009853159926, 0.1077811256134011},
                         {-0.05599695193483909, -0.023675131548056727},
                         {0.13681526356471968, 0.21307714832639107},
                         {-0.011236868010797568, 0.38466645202476246},
                         {-0.23578724064538803, 0.3239299476905263}};
  const auto s = apply_phase_shift(squeezed(2, 1, 0.7, 0.4), 0.2, Mode::a);
  for (int r = -1; r <= 3; ++r) CHECK(std::abs(s.amplitude(2 + r, 1 + r) - expected[r + 1]) < 1e-12);
}

TEST_CASE("phase shift") {
  auto s = TwoModeState::fock(2, 3, 3);
  CHECK(std::abs(apply_phase_shift(s, 0.5, Mode::a).amplitude(2, 3) - std::polar(1.0, 1.0)) < 1e-15);
  CHECK(std::abs(apply_phase_shift(s, 0.5, Mode::b).amplitude(2, 3) - std::polar(1.0, 1.5)) < 1e-15);
}

TEST_CASE("interferometer is the identity at phi = 0") {
  MixtureEnsemble in;
  in.members.push_back({1.0, TwoModeState::fock(3, 2, 3)});
  const auto out = interferometer_output(in, {1.0, 0.7, 0.0});
  CHECK(max_difference(out.members.front().state, TwoModeState::fock(3, 2, out.members.front().state.cutoff())) <
        1e-10);
}

TEST_CASE("parity: frozen values from a dense matrix exponential") {
  CHECK(std::abs(oracle_parity({su11::FockInput{1}, 1}, {0.5, 0.0, 0.3}) - -0.7293581614464603) < 1e-12);
  CHECK(std::abs(oracle_parity({su11::FockInput{2}, 1}, {0.3, 0.7, 1.0}) - -0.0935276638360706) < 1e-12);
  CHECK(std::abs(oracle_parity({su11::FockInput{3}, 2}, {0.3, 0.2, 0.5}) - 0.31471126772544095) < 1e-12);
}

TEST_CASE("parity is independent of theta and of the phase placement") {
  for (double phi : {0.4, 2.2}) {
    const double ref = oracle_parity({su11::FockInput{2}, 1}, {0.8, 0.0, phi});
    CHECK(std::abs(oracle_parity({su11::FockInput{2}, 1}, {0.8, 1.3, phi}) - ref) < 1e-9);
    su11::InterferometerConfig upper{0.8, 0.5, phi, su11::PhaseMode::upper};
    CHECK(std::abs(oracle_parity({su11::FockInput{2}, 1}, upper) - ref) < 1e-9);
  }
}

TEST_CASE("mode a coherences do not reach the parity") {
  for (double phi : {0.5, 2.0}) {
    CHECK(std::abs(parity_cross_term(1, 2, 1, {0.7, 0.3, phi})) < 1e-14);
    CHECK(std::abs(parity_cross_term(0, 3, 0, {0.7, 0.3, phi})) < 1e-14);
    CHECK(std::abs(parity_cross_term(2, 2, 1, {0.7, 0.3, phi}).real() -
                   oracle_parity({su11::FockInput{2}, 1}, {0.7, 0.3, phi})) < 1e-13);
  }
}

TEST_CASE("mixtures against the closed forms") {
  CHECK(std::abs(oracle_parity({su11::ThermalInput{1.5}, 1}, {0.6, 0.0, 0.8}) -
                 su11::parity_thermal_fock(1.5, 1, 0.6, 0.8)) < 1e-9);
  CHECK(std::abs(oracle_parity({su11::CoherentInput{1.5, 0.9}, 2}, {0.6, 0.0, 0.8}) -
                 su11::parity_coherent_fock(1.5, 2, 0.6, 0.8)) < 1e-9);
  CHECK(std::abs(oracle_parity({su11::DiagonalInput{{0.3, 0.0, 0.7}}, 0}, {0.6, 0.0, 2.8}) -
                 su11::parity_diagonal_mixture(std::vector<double>{0.3, 0.0, 0.7}, 0, 0.6, 2.8)) < 1e-9);
}

TEST_CASE("two-mode coherent input: frozen closed-form value") {
  MixtureEnsemble in;
  in.members.push_back({1.0, two_mode_coherent_state({1.0, 0.0}, {0.0, 0.5}, 30)});
  const double p = parity_expectation(interferometer_output(in, {0.4, 0.2, 0.6}), Mode::b);
  CHECK(std::abs(p - 0.30481175763281776) < 1e-10);
  CHECK_THROWS_AS(two_mode_coherent_state({3.0, 0.0}, {0.0, 0.0}, 5), su11::InvalidArgument);
}

TEST_CASE("build_input") {
  const auto fock = build_input({su11::FockInput{2}, 1}, 4);
  REQUIRE(fock.members.size() == 1);
  CHECK(fock.members.front().state.amplitude(2, 1) == cd{1.0, 0.0});
  const auto thermal = build_input({su11::ThermalInput{0.5}, 0}, 60);
  CHECK(thermal.members.size() == su11::thermal_weights(0.5, 1e-12).size());
  CHECK(thermal.total_weight() == Approx(1.0).epsilon(1e-15));
  const auto coherent = build_input({su11::CoherentInput{2.0, 0.3}, 1}, 40);
  REQUIRE(coherent.members.size() == 1);
  CHECK(coherent.members.front().state.norm_squared() == Approx(1.0).epsilon(1e-11));
  CHECK_THROWS_AS(build_input({su11::CoherentInput{20.0, 0.0}, 0}, 10), su11::InvalidArgument);
}

TEST_CASE("QFI from the photon-number variance") {
  CHECK(oracle_qfi_pure(1, 1, 0.5) == Approx(6.905489227709072).epsilon(1e-12));
  CHECK(oracle_qfi_pure(2, 1, 0.7) == Approx(29.01091366744453).epsilon(1e-12));
  for (double theta : {0.0, kPi / 3, kPi}) {
    CHECK(oracle_qfi_pure(3, 2, 1.1, theta) == Approx(su11::qfi_pure_fock(3, 2, 1.1)).epsilon(1e-9));
  }
  const std::vector<double> w = {0.25, 0.5, 0.25};
  CHECK(oracle_qfi_mixture(w, 1, 0.6) == Approx(su11::qfi_diagonal_mixture(1.0, 1, 0.6)).epsilon(1e-9));
}

TEST_CASE("a cutoff cap that is too small is reported") {
  OracleOptions tight;
  tight.max_cutoff = 20;
  CHECK_THROWS_AS(oracle_parity({su11::FockInput{4}, 4}, {1.2, 0.0, 3.0}, tight), su11::LeakBudgetExceeded);
}

TEST_CASE("phase averaging keeps the diagonal") {
  const cd alpha = std::polar(1.3, 0.8);
  const auto p = phase_average_diagonal(coherent_density_table(alpha, 40));
  const auto poisson = su11::poisson_weights(std::norm(alpha), 1e-16);
  for (std::size_t m = 0; m < 10; ++m) CHECK(p[m] == Approx(poisson[m]).epsilon(1e-12));
}

TEST_CASE("phase averaging: random density matrices") {
  std::mt19937 rng(7);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 6;
    // rho = A A^dag / tr(A A^dag) is Hermitian, positive and of unit trace.
    std::vector<std::vector<cd>> a(dim, std::vector<cd>(dim));
    for (auto& row : a) {
      for (auto& x : row) x = {normal(rng), normal(rng)};
    }
    DensityTable rho(dim, std::vector<cd>(dim));
    double trace = 0.0;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) rho[i][j] += a[i][k] * std::conj(a[j][k]);
      }
      trace += rho[i][i].real();
    }
    for (auto& row : rho) {
      for (auto& x : row) x /= trace;
    }
    const auto p = phase_average_diagonal(rho);
    double total = 0.0;
    for (int i = 0; i < dim; ++i) {
      CHECK(p[i] == Approx(rho[i][i].real()).epsilon(1e-15));
      CHECK(p[i] >= 0.0);
      total += p[i];
    }
    CHECK(total == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("phase averaging rejects invalid tables") {
  CHECK_THROWS_AS(phase_average_diagonal({}), su11::InvalidArgument);
  CHECK_THROWS_AS(phase_average_diagonal({{1.0, 0.0}}), su11::InvalidArgument);
  CHECK_THROWS_AS(phase_average_diagonal({{0.5, {0.1, 0.1}}, {{0.1, 0.1}, 0.5}}), su11::InvalidArgument);
  CHECK_THROWS_AS(phase_average_diagonal({{0.5, 0.0}, {0.0, 0.6}}), su11::InvalidArgument);
  CHECK_THROWS_AS(phase_average_diagonal({{1.2, 0.0}, {0.0, -0.2}}), su11::InvalidArgument);
}

TEST_CASE("sensitivity from the simulated signal matches the closed form") {
  const su11::InputSpec in{su11::CoherentInput{1.0, 0.0}, 1};
  const double g = 0.5;
  auto simulated = [&](double phi) { return oracle_parity(in, {g, 0.0, phi}); };
  auto closed = [&](double phi) { return su11::parity_signal(in, g, phi); };
  const double phi = 0.1;
  const double h = 1e-5 * phi;
  auto sensitivity = [&](auto&& f) {
    return su11::sensitivity_error_propagation(f(phi), (f(phi + h) - f(phi - h)) / (2 * h));
  };
  CHECK(sensitivity(simulated) == Approx(sensitivity(closed)).epsilon(1e-6));
}

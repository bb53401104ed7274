#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "su11/closedform.hpp"
#include "su11/errors.hpp"
#include "su11/input.hpp"

using doctest::Approx;
using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

double sign_pow(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

TEST_CASE("mcd coefficients at phi = 0 and g = 0") {
  for (double g : {0.0, 0.3, 1.4}) {
    for (double theta : {0.0, 1.1}) {
      const auto c = su11::mcd_coefficients(g, theta, 0.0);
      CHECK(c.M == cd{0.0, 0.0});
      CHECK(c.C == 0.0);
      CHECK(c.D == 2.0);
    }
  }
  const auto c = su11::mcd_coefficients(0.0, 0.4, 1.3);
  CHECK(std::abs(c.M) == 0.0);
  CHECK(c.C == 0.0);
  CHECK(c.D == 2.0);
}

TEST_CASE("C D = |M|^2 on a 10 x 10 x 50 grid") {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double g = 0.05 + 0.15 * i;
    for (int j = 0; j < 10; ++j) {
      const double theta = 2.0 * kPi * j / 10.0;
      for (int k = 0; k < 50; ++k) {
        const double phi = -kPi + 2.0 * kPi * (k + 0.5) / 50.0;
        const auto c = su11::mcd_coefficients(g, theta, phi);
        const double m2 = std::norm(c.M);
        worst = std::max(worst, std::abs(c.C * c.D - m2) / std::max(m2, 1e-300));
        CHECK(c.C >= 0.0);
        CHECK(c.C < 1.0);
        CHECK(c.D > 1.0);
        CHECK(c.D <= 2.0);
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("kernel identity behind the stable parity evaluation") {
  for (double g : {0.1, 0.6, 1.3}) {
    for (double phi : {0.2, 1.0, 2.9, -0.7}) {
      const double sh = std::sinh(2 * g);
      const double ch = std::cosh(2 * g);
      const double half = std::sin(phi / 2);
      const double lhs = (std::sin(phi) * std::sin(phi) + 4 * std::pow(half, 4) * ch * ch) * sh * sh;
      const double s = su11::phase_factor_s(g, phi);
      CHECK(lhs == Approx(s * (2 + s)).epsilon(1e-13));
    }
  }
}

TEST_CASE("squeezed amplitude: vacuum cases") {
  for (double g : {0.2, 0.9}) {
    CHECK(std::abs(su11::squeezed_fock_amplitude(0, 0, 0, g, 0.3, 0.5) - 1.0 / std::cosh(g)) < 1e-15);
    const cd one = su11::squeezed_fock_amplitude(0, 0, 1, g, 0.0, 0.0);
    CHECK(std::abs(one - std::tanh(g) / std::cosh(g)) < 1e-15);
  }
}

TEST_CASE("squeezed amplitude: frozen values from a dense matrix exponential") {
  // e^{i 0.2 a^dag a} S2(0.7 e^{0.4 i}) |2,1>, rungs -1 .. 3
  const cd expected[] = {{-0.5317009853159926, 0.1077811256134011},
                         {-0.05599695193483909, -0.023675131548056727},
                         {0.13681526356471968, 0.21307714832639107},
                         {-0.011236868010797568, 0.38466645202476246},
                         {-0.23578724064538803, 0.3239299476905263}};
  for (int r = -1; r <= 3; ++r) {
    CHECK(std::abs(su11::squeezed_fock_amplitude(2, 1, r, 0.7, 0.4, 0.2) - expected[r + 1]) < 1e-12);
  }
  CHECK_THROWS_AS(su11::squeezed_fock_amplitude(2, 1, -2, 0.7, 0.4, 0.2), su11::InvalidArgument);
}

TEST_CASE("single expansion term is the l = 0 amplitude for a vacuum mode") {
  const cd term = su11::squeeze_expansion_term(0, 3, 2, 0, 0.5, 0.2, 0.1);
  CHECK(std::abs(term - su11::squeezed_fock_amplitude(0, 3, 2, 0.5, 0.2, 0.1)) < 1e-15);
  CHECK(su11::squeeze_expansion_term(1, 1, 0, 2, 0.5, 0.0, 0.0) == cd{0.0, 0.0});
}

TEST_CASE("squeezed amplitudes are normalized") {
  for (int m = 0; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      for (double g : {0.3, 0.8, 1.2}) {
        double partial = 0.0;
        bool monotone = true;
        const int lo = -std::min(m, n);
        for (int r = lo; r <= 600; ++r) {
          const double p = std::norm(su11::squeezed_fock_amplitude(m, n, r, g, 0.4, 1.1));
          if (partial + p < partial) monotone = false;
          partial += p;
        }
        CHECK(monotone);
        CHECK(std::abs(partial - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("QFI, photon number and bounds") {
  CHECK(su11::qfi_pure_fock(1, 1, 0.5) == Approx(6.905489227709072).epsilon(1e-14));
  CHECK(su11::qfi_pure_fock(2, 1, 0.7) == Approx(29.01091366744453).epsilon(1e-14));
  CHECK(su11::qfi_diagonal_mixture(3.0, 2, 0.7) == Approx(su11::qfi_pure_fock(3, 2, 0.7)).epsilon(1e-15));
  CHECK(su11::total_mean_photon_number(0.0, 0, 0.8) == Approx(2 * std::pow(std::sinh(0.8), 2)).epsilon(1e-15));
  CHECK(su11::qcrb(0.0, 0, 0.6) == Approx(1.0 / std::sinh(1.2)).epsilon(1e-15));
  CHECK_THROWS_AS(su11::qcrb(1.0, 1, 0.0), su11::NoPhaseInformation);
  const auto b = su11::benchmark_limits(4.0);
  CHECK(b.snl == 0.5);
  CHECK(b.hl == 0.25);
  CHECK_THROWS_AS(su11::benchmark_limits(0.0), su11::InvalidArgument);
  CHECK_THROWS_AS(su11::qfi_pure_fock(-1, 0, 0.5), su11::InvalidArgument);
}

TEST_CASE("Fock x Fock parity: frozen values from a dense matrix exponential") {
  CHECK(std::abs(su11::parity_fock_fock(1, 1, 0.5, 0.3) - -0.7293581614464603) < 1e-13);
  CHECK(std::abs(su11::parity_fock_fock(2, 1, 0.3, 1.0) - -0.0935276638360706) < 1e-13);
  CHECK(std::abs(su11::parity_fock_fock(0, 2, 0.4, 2.0) - 0.10540510308312676) < 1e-13);
  CHECK(std::abs(su11::parity_fock_fock(3, 2, 0.3, 0.5) - 0.31471126772544095) < 1e-13);
}

TEST_CASE("Fock x Fock parity: recurrence agrees with the literal series") {
  for (int m = 0; m <= 12; ++m) {
    for (int n = 0; n <= 12; ++n) {
      for (double g : {0.2, 0.7}) {
        for (double phi : {0.1, 1.0, 3.0}) {
          CHECK(std::abs(su11::parity_fock_fock(m, n, g, phi) - su11::parity_fock_fock_series(m, n, g, phi)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("Fock x Fock parity stays finite and bounded for large photon numbers") {
  for (double phi : {0.01, 0.5, 3.1}) {
    const double p = su11::parity_fock_fock(60, 57, 1.2, phi);
    CHECK(std::isfinite(p));
    CHECK(std::abs(p) <= 1.0);
  }
  CHECK(su11::parity_fock_fock(60, 57, 1.2, 0.0) == -1.0);
}

TEST_CASE("parity identities for every input kind") {
  const std::vector<su11::InputSpec> inputs = {{su11::FockInput{3}, 2},
                                               {su11::CoherentInput{1.7, 0.4}, 1},
                                               {su11::ThermalInput{2.2}, 3},
                                               {su11::DiagonalInput{{0.2, 0.5, 0.3}}, 0}};
  for (const auto& in : inputs) {
    const double at_zero = sign_pow(in.mode_b_n);
    CHECK(std::abs(su11::parity_signal(in, 0.8, 0.0) - at_zero) < 1e-12);
    CHECK(std::abs(su11::parity_signal(in, 0.0, 1.3) - at_zero) < 1e-12);
    for (double phi : {0.2, 1.1, 2.7}) {
      const double p = su11::parity_signal(in, 0.8, phi);
      CHECK(std::abs(p) <= 1.0);
      CHECK(std::abs(p - su11::parity_signal(in, 0.8, -phi)) < 1e-13);
      CHECK(std::abs(p - su11::parity_signal(in, 0.8, phi + 2 * kPi)) < 1e-12);
    }
  }
}

TEST_CASE("coherent and thermal parity equal their diagonal mixtures") {
  for (double mean : {0.5, 1.5, 3.0}) {
    for (int n = 0; n <= 2; ++n) {
      for (double phi : {0.3, 1.7}) {
        const auto poisson = su11::poisson_weights(mean, 1e-14);
        const auto geometric = su11::thermal_weights(mean, 1e-14);
        CHECK(std::abs(su11::parity_coherent_fock(mean, n, 0.6, phi) -
                       su11::parity_diagonal_mixture(poisson, n, 0.6, phi)) < 1e-8);
        CHECK(std::abs(su11::parity_thermal_fock(mean, n, 0.6, phi) -
                       su11::parity_diagonal_mixture(geometric, n, 0.6, phi)) < 1e-8);
      }
    }
  }
}

TEST_CASE("diagonal mixture requires normalized weights") {
  const std::vector<double> bad = {0.5, 0.4};
  CHECK_THROWS_AS(su11::parity_diagonal_mixture(bad, 0, 0.5, 0.3), su11::InvalidArgument);
  const std::vector<double> fock = {0.0, 0.0, 1.0};
  CHECK(su11::parity_diagonal_mixture(fock, 1, 0.5, 0.3) == Approx(su11::parity_fock_fock(2, 1, 0.5, 0.3)));
}

TEST_CASE("two-mode coherent parity") {
  const double s = su11::phase_factor_s(0.6, 0.9);
  CHECK(su11::parity_two_mode_coherent({0, 0}, {0, 0}, 0.6, 0.2, 0.9) == Approx(1.0 / (1.0 + s)).epsilon(1e-15));
  CHECK(su11::parity_two_mode_coherent({0, 0}, {0, 0}, 0.6, 0.2, 0.9) ==
        Approx(su11::parity_fock_fock(0, 0, 0.6, 0.9)).epsilon(1e-14));
  const cd beta{0.3, -0.5};
  CHECK(su11::parity_two_mode_coherent({1.0, 0.2}, beta, 0.6, 0.2, 0.0) ==
        Approx(std::exp(-2 * std::norm(beta))).epsilon(1e-15));
  CHECK(std::abs(su11::parity_two_mode_coherent({1.0, 0.0}, {0.0, 0.5}, 0.4, 0.2, 0.6) - 0.30481175763281776) <
        1e-13);
}

TEST_CASE("small phase expansion") {
  for (int n = 0; n <= 3; ++n) CHECK(su11::parity_small_phase_expansion(1.3, n, 0.7, 0.0) == sign_pow(n));
  const std::vector<double> one = {0.0, 1.0};
  const double exact = su11::parity_diagonal_mixture(one, 1, 0.5, 1e-3);
  CHECK(std::abs(exact - su11::parity_small_phase_expansion(1.0, 1, 0.5, 1e-3)) < 1e-10);
  // The phi^2 coefficient is -(-1)^n QFI / 2.
  for (int n = 0; n <= 2; ++n) {
    const double h = 1e-3;
    const double curvature = (su11::parity_small_phase_expansion(2.0, n, 0.6, h) - sign_pow(n)) * 2 / (h * h);
    CHECK(curvature == Approx(-sign_pow(n) * su11::qfi_diagonal_mixture(2.0, n, 0.6)).epsilon(1e-9));
  }
}

TEST_CASE("error propagation") {
  CHECK(su11::sensitivity_error_propagation(0.0, 1.0) == 1.0);
  CHECK(su11::sensitivity_error_propagation(1.0, 0.3) == 0.0);
  CHECK(su11::sensitivity_error_propagation(-1.0, -0.3) == 0.0);
  CHECK(su11::sensitivity_error_propagation(0.6, -2.0) == Approx(0.4).epsilon(1e-15));
  CHECK_THROWS_AS(su11::sensitivity_error_propagation(0.5, 0.0), su11::ZeroSlope);
  CHECK_THROWS_AS(su11::sensitivity_error_propagation(1.5, 1.0), su11::InvalidArgument);
}

TEST_CASE("phase sensitivity reports the phi -> 0 limit and nulls on zero slope") {
  const su11::InputSpec in{su11::CoherentInput{1.0, 0.0}, 1};
  const auto at_zero = su11::phase_sensitivity(in, 0.5, 0.0);
  CHECK(at_zero.limit_value);
  CHECK(at_zero.evaluated_at == su11::kLimitPhase);
  REQUIRE(at_zero.value);
  CHECK(*at_zero.value == Approx(su11::qcrb(1.0, 1, 0.5)).epsilon(1e-4));

  const auto flat = su11::phase_sensitivity([](double) { return 0.25; }, 0.3);
  CHECK_FALSE(flat.value.has_value());
  CHECK_FALSE(flat.limit_value);
}

TEST_CASE("phase sensitivity saturates the QCRB at small phase") {
  const std::vector<su11::InputSpec> inputs = {{su11::FockInput{2}, 1},
                                               {su11::CoherentInput{1.5, 0.0}, 2},
                                               {su11::ThermalInput{0.8}, 0}};
  for (const auto& in : inputs) {
    for (double g : {0.3, 0.9}) {
      const double bound = su11::qcrb(su11::mean_photon_number(in.mode_a), in.mode_b_n, g);
      const auto coarse = su11::phase_sensitivity(in, g, 1e-3);
      const auto fine = su11::phase_sensitivity(in, g, 1e-4);
      REQUIRE(coarse.value);
      REQUIRE(fine.value);
      CHECK(std::abs(*coarse.value / bound - 1) < 1e-2);
      CHECK(std::abs(*fine.value / bound - 1) < 1e-4);
    }
  }
}

TEST_CASE("interferometer configuration validation") {
  CHECK_THROWS_AS((su11::InterferometerConfig{-0.1, 0.0, 0.0}.validate()), su11::InvalidArgument);
  CHECK_THROWS_AS((su11::InterferometerConfig{0.1, NAN, 0.0}.validate()), su11::InvalidArgument);
  CHECK_NOTHROW((su11::InterferometerConfig{0.1, 0.2, 0.3}.validate()));
}

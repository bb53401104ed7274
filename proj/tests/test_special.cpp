#include <doctest.h>

#include <cmath>

#include "su11/special.hpp"

using doctest::Approx;

TEST_CASE("log factorial and binomial") {
  CHECK(su11::log_factorial(0) == 0.0);
  CHECK(su11::log_factorial(5) == Approx(std::log(120.0)).epsilon(1e-15));
  CHECK(std::exp(su11::log_binomial(10, 3)) == Approx(120.0).epsilon(1e-13));
  CHECK(su11::log_factorial(170) == Approx(std::lgamma(171.0)).epsilon(1e-15));
}

TEST_CASE("laguerre base cases and low orders") {
  for (double x : {-1.0, 0.0, 0.7, 3.0}) {
    CHECK(su11::laguerre_poly(0, x) == 1.0);
    CHECK(su11::laguerre_poly(1, x) == Approx(1.0 - x).epsilon(1e-15));
  }
  CHECK(su11::laguerre_poly(2, 3.0) == Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("laguerre matches the explicit series") {
  auto series = [](int n, double x) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
      sum += std::exp(su11::log_binomial(n, k) - su11::log_factorial(k)) * std::pow(-x, k);
    }
    return sum;
  };
  CHECK(std::abs(su11::laguerre_poly(5, 2.7) - series(5, 2.7)) < 1e-12);
  CHECK(su11::laguerre_poly(5, 2.7) == Approx(1.02094525).epsilon(1e-12));
  CHECK(su11::laguerre_poly(30, 12.5) == Approx(67.5139310105207).epsilon(1e-12));
}

TEST_CASE("jacobi recurrence") {
  CHECK(su11::jacobi_poly(0, 0.0, 3.0, 0.3) == 1.0);
  // P_1^{(a,b)}(x) = (a+1) + (a+b+2)(x-1)/2
  CHECK(su11::jacobi_poly(1, 0.0, 3.0, 0.3) == Approx(1.0 + 2.5 * (0.3 - 1.0)).epsilon(1e-15));
  CHECK(su11::jacobi_poly(7, 0.0, 3.0, 0.3) == Approx(-0.2853701437499999).epsilon(1e-13));
  CHECK(su11::jacobi_poly(20, 0.0, 5.0, -0.8) == Approx(53.86807967556406).epsilon(1e-12));
  // With alpha = beta = 0 this is Legendre: P_2(x) = (3x^2 - 1)/2.
  CHECK(su11::jacobi_poly(2, 0.0, 0.0, 0.4) == Approx(0.5 * (3 * 0.16 - 1)).epsilon(1e-15));
}

TEST_CASE("bessel sequence against high-precision values") {
  const auto small = su11::bessel_j_sequence(40, 10.0);
  CHECK(small[5] == Approx(-0.23406152818679364).epsilon(1e-13));
  CHECK(small[30] == Approx(1.551096078257467e-12).epsilon(1e-10));
  const auto one = su11::bessel_j_sequence(3, 1.0);
  CHECK(one[0] == Approx(0.76519768655796655).epsilon(1e-14));
  CHECK(one[1] == Approx(0.44005058574493352).epsilon(1e-14));
  const auto mid = su11::bessel_j_sequence(120, 150.0);
  CHECK(std::abs(mid[100] - -0.015359526118405391) < 1e-14);

  // Large arguments, where std::cyl_bessel_j breaks down.
  const auto big = su11::bessel_j_sequence(1800, 1800.0);
  CHECK(std::abs(big[0] - -0.011422280819374692) < 1e-14);
  CHECK(std::abs(big[900] - 0.019918236764295924) < 1e-14);
  CHECK(std::abs(big[1790] - 0.055513135583063149) < 1e-14);
}

TEST_CASE("bessel sequence sum rule") {
  for (double x : {0.5, 37.0, 2500.0}) {
    const int kmax = static_cast<int>(x) + 100;
    const auto j = su11::bessel_j_sequence(kmax, x);
    double sum = j[0] * j[0];
    for (int k = 1; k <= kmax; ++k) sum += 2.0 * j[k] * j[k];
    CHECK(sum == Approx(1.0).epsilon(1e-13));
  }
}

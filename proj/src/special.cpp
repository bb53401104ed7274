#include "su11/special.hpp"

#include <algorithm>
#include <cmath>

#include "su11/errors.hpp"

namespace su11 {

double log_factorial(int n) {
  if (n < 0) throw InvalidArgument("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) throw InvalidArgument("log_binomial: k outside [0, n]");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double laguerre_poly(int n, double x) {
  if (n < 0) throw InvalidArgument("laguerre_poly: negative degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_poly(int n, double alpha, double beta, double x) {
  if (n < 0) throw InvalidArgument("jacobi_poly: negative degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
  const double ab = alpha + beta;
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + ab;
    const double a1 = 2.0 * k * (k + ab) * (c - 2.0);
    const double a2 = (c - 1.0) * (c * (c - 2.0) * x + alpha * alpha - beta * beta);
    const double a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
    const double next = (a2 * cur - a3 * prev) / a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> bessel_j_sequence(int kmax, double x) {
  if (kmax < 0) throw InvalidArgument("bessel_j_sequence: negative order");
  if (x < 0.0 || !std::isfinite(x)) throw InvalidArgument("bessel_j_sequence: x must be finite and >= 0");
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  // Start well past both kmax and the turning point k ~ x.
  const int start = std::max(kmax, static_cast<int>(std::ceil(x))) + 40 +
                    static_cast<int>(std::ceil(12.0 * std::cbrt(x)));
  const int start_even = start + (start % 2);
  std::vector<double> j(static_cast<std::size_t>(start_even) + 2, 0.0);
  j[start_even] = 1e-300;
  double norm = 0.0;
  constexpr double kRescale = 1e250;
  for (int k = start_even; k >= 1; --k) {
    j[k - 1] = (2.0 * k / x) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > kRescale) {
      for (int i = k - 1; i <= start_even; ++i) j[i] /= kRescale;
      norm /= kRescale;
    }
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j[k - 1];
  }
  norm += j[0];
  for (int k = 0; k <= kmax; ++k) out[k] = j[k] / norm;
  return out;
}

}  // namespace su11

#pragma once

#include <vector>

namespace su11 {

/// log(n!) via lgamma. Exact for small n up to rounding.
double log_factorial(int n);

/// log of the binomial coefficient C(n, k), 0 <= k <= n.
double log_binomial(int n, int k);

/// Laguerre polynomial L_n(x) from the three-term recurrence
/// (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
double laguerre_poly(int n, double x);

/// Jacobi polynomial P_n^{(alpha,beta)}(x) from the standard three-term
/// recurrence. Stable for x in [-1, 1].
double jacobi_poly(int n, double alpha, double beta, double x);

/// Bessel functions J_0(x) .. J_kmax(x) of integer order for x >= 0, by
/// Miller's backward recurrence normalised with J_0 + 2 sum J_2k = 1.
std::vector<double> bessel_j_sequence(int kmax, double x);

}  // namespace su11

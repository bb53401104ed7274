#include "su11/input.hpp"

#include <cmath>
#include <numeric>

#include "su11/errors.hpp"
#include "su11/special.hpp"

namespace su11 {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr int kMaxWeights = 1 << 20;

}  // namespace

double mean_photon_number(const ModeAState& state) {
  return std::visit(Overloaded{
                        [](const FockInput& f) { return static_cast<double>(f.m); },
                        [](const CoherentInput& c) { return c.mean; },
                        [](const ThermalInput& t) { return t.mean; },
                        [](const DiagonalInput& d) {
                          double mean = 0.0;
                          for (std::size_t m = 0; m < d.weights.size(); ++m) mean += m * d.weights[m];
                          return mean;
                        },
                    },
                    state);
}

std::string input_kind_name(const ModeAState& state) {
  return std::visit(Overloaded{
                        [](const FockInput&) { return std::string("fock"); },
                        [](const CoherentInput&) { return std::string("coherent"); },
                        [](const ThermalInput&) { return std::string("thermal"); },
                        [](const DiagonalInput&) { return std::string("diag"); },
                    },
                    state);
}

std::vector<double> poisson_weights(double mean, double tail_tol) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw InvalidArgument("poisson_weights: mean must be finite and >= 0");
  if (!(tail_tol > 0.0)) throw InvalidArgument("poisson_weights: tail_tol must be > 0");
  if (mean == 0.0) return {1.0};
  std::vector<double> w;
  for (int m = 0; m < kMaxWeights; ++m) {
    const double p = std::exp(-mean + m * std::log(mean) - log_factorial(m));
    w.push_back(p);
    // Past the mode, p_{m+j} <= p_m r^j with r = mean/(m+1).
    const double ratio = mean / (m + 1.0);
    if (ratio < 1.0 && p * ratio / (1.0 - ratio) < tail_tol) break;
  }
  return w;
}

std::vector<double> thermal_weights(double mean, double tail_tol) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw InvalidArgument("thermal_weights: mean must be finite and >= 0");
  if (!(tail_tol > 0.0)) throw InvalidArgument("thermal_weights: tail_tol must be > 0");
  if (mean == 0.0) return {1.0};
  const double q = mean / (1.0 + mean);
  std::vector<double> w;
  double tail = 1.0;  // probability of m >= current index
  for (int m = 0; m < kMaxWeights; ++m) {
    w.push_back(tail / (1.0 + mean));
    tail *= q;
    if (tail < tail_tol) break;
  }
  return w;
}

std::vector<double> diagonal_weights(const ModeAState& state, double tail_tol) {
  return std::visit(Overloaded{
                        [](const FockInput& f) {
                          if (f.m < 0) throw InvalidArgument("Fock input needs m >= 0");
                          std::vector<double> w(static_cast<std::size_t>(f.m) + 1, 0.0);
                          w[f.m] = 1.0;
                          return w;
                        },
                        [&](const CoherentInput& c) { return poisson_weights(c.mean, tail_tol); },
                        [&](const ThermalInput& t) { return thermal_weights(t.mean, tail_tol); },
                        [](const DiagonalInput& d) { return d.weights; },
                    },
                    state);
}

void check_normalized(const std::vector<double>& weights, double tol) {
  if (weights.empty()) throw InvalidArgument("weights are empty");
  for (double p : weights) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("weights must be finite and non-negative");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > tol) {
    throw InvalidArgument("weights are not normalized: sum = " + std::to_string(total));
  }
}

}  // namespace su11

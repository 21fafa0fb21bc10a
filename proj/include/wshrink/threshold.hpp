#ifndef WSHRINK_THRESHOLD_HPP
#define WSHRINK_THRESHOLD_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "wshrink/samples.hpp"

namespace wshrink {

enum class ThresholdMode { soft, hard };

ThresholdMode parse_threshold_mode(std::string_view name);
std::string_view to_string(ThresholdMode mode);

inline double soft_threshold(double x, double lambda) {
  if (x > lambda) return x - lambda;
  if (x < -lambda) return x + lambda;
  return 0.0;
}

inline double hard_threshold(double x, double lambda) {
  return (x > lambda || x < -lambda) ? x : 0.0;
}

inline double threshold_value(double x, double lambda, ThresholdMode mode) {
  return mode == ThresholdMode::soft ? soft_threshold(x, lambda) : hard_threshold(x, lambda);
}

/// Thresholds the detail coefficients; the approximation block passes through.
CoefficientPyramid apply_threshold(const CoefficientPyramid& pyramid, double lambda,
                                   ThresholdMode mode);

/// lambda_{n,delta} = c_phi * b * (1 + 2 sqrt((1+delta) ln 2)) * sqrt(log2(n) / n).
/// delta = 0 is accepted as the limit of the formula.
double compute_threshold(std::size_t n, double delta, double b, double c_phi);

struct Levels {
  int J = 0;   ///< log2 n
  int J0 = 0;  ///< coarse level of the transform
  int J1 = 0;  ///< ceil((J - log2 J) / (1 + 2 alpha))
};

/// J1 = ceil((J - log2 J) / (1 + 2 alpha)) for J >= 1.
int boundary_level(int J, double alpha);

/// Coarsest admissible level for an interval system with N vanishing moments:
/// 1 + ceil(log2(2N - 1)).
int interval_coarse_level(int N);

/// Levels for the estimator: J0 = 0 when alpha <= 1 (Haar), otherwise
/// interval_coarse_level(ceil(alpha)). Throws GeometryError when J0 > J1.
Levels compute_levels(std::size_t n, double alpha);

struct MinSamples {
  double raw = 0.0;               ///< the formula value (2^9 for alpha <= 1)
  std::uint64_t power_of_two = 0; ///< smallest power of two >= raw; 0 if it overflows
};

/// Minimum sample count n_0 for which the deviation bound is stated:
/// 2^9 for alpha <= 1, (4a+2)^(2a+2) * log2(4a+2)^2 otherwise.
MinSamples min_samples(double alpha);

}  // namespace wshrink

#endif  // WSHRINK_THRESHOLD_HPP

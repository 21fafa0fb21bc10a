#include "wshrink/threshold.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wshrink {

ThresholdMode parse_threshold_mode(std::string_view name) {
  if (name == "soft") return ThresholdMode::soft;
  if (name == "hard") return ThresholdMode::hard;
  throw std::invalid_argument("unknown threshold mode '" + std::string(name) + "'");
}

std::string_view to_string(ThresholdMode mode) {
  return mode == ThresholdMode::soft ? "soft" : "hard";
}

CoefficientPyramid apply_threshold(const CoefficientPyramid& pyramid, double lambda,
                                   ThresholdMode mode) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("threshold must be a finite value >= 0");
  }
  pyramid.validate();
  CoefficientPyramid out = pyramid;
  for (auto& level : out.details) {
    for (double& d : level) d = threshold_value(d, lambda, mode);
  }
  return out;
}

double compute_threshold(std::size_t n, double delta, double b, double c_phi) {
  if (n < 2 || !is_power_of_two(n)) {
    throw GeometryError("sample count " + std::to_string(n) + " is not a power of two >= 2");
  }
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  if (!(b > 0.0)) throw std::invalid_argument("noise range b must be > 0");
  if (!(c_phi >= 1.0)) throw std::invalid_argument("wavelet constant c_phi must be >= 1");

  const double log2n = static_cast<double>(exact_log2(n));
  const double factor = 1.0 + 2.0 * std::sqrt((1.0 + delta) * std::numbers::ln2);
  return c_phi * b * factor * std::sqrt(log2n / static_cast<double>(n));
}

int boundary_level(int J, double alpha) {
  if (J < 1) throw GeometryError("J must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  const double value = (J - std::log2(static_cast<double>(J))) / (1.0 + 2.0 * alpha);
  // Guard against 2.0000000001-style rounding of exact ratios.
  const double rounded = std::round(value);
  if (std::abs(value - rounded) < 1e-12) return static_cast<int>(rounded);
  return static_cast<int>(std::ceil(value));
}

int interval_coarse_level(int N) {
  if (N < 1) throw std::invalid_argument("vanishing moments must be >= 1");
  int log_ceil = 0;
  while ((1 << log_ceil) < 2 * N - 1) ++log_ceil;
  return 1 + log_ceil;
}

Levels compute_levels(std::size_t n, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  Levels levels;
  levels.J = exact_log2(n);
  if (levels.J < 1) throw GeometryError("need at least two samples");
  levels.J1 = boundary_level(levels.J, alpha);
  levels.J0 = alpha <= 1.0 ? 0 : interval_coarse_level(static_cast<int>(std::ceil(alpha)));
  if (levels.J0 > levels.J1) {
    throw GeometryError("n = " + std::to_string(n) + " is too small for alpha = " +
                        std::to_string(alpha) + ": J0 = " + std::to_string(levels.J0) +
                        " exceeds J1 = " + std::to_string(levels.J1));
  }
  return levels;
}

MinSamples min_samples(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  MinSamples out;
  if (alpha <= 1.0) {
    out.raw = 512.0;
    out.power_of_two = 512;
    return out;
  }
  const double base = 4.0 * alpha + 2.0;
  const double lg = std::log2(base);
  out.raw = std::pow(base, 2.0 * alpha + 2.0) * lg * lg;
  const double exponent = std::ceil(std::log2(out.raw));
  out.power_of_two = exponent < 64.0 ? (std::uint64_t{1} << static_cast<int>(exponent)) : 0;
  return out;
}

}  // namespace wshrink

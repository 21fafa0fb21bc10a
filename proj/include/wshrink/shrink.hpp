#ifndef WSHRINK_SHRINK_HPP
#define WSHRINK_SHRINK_HPP

#include <memory>
#include <string>
#include <variant>

#include "wshrink/interval.hpp"
#include "wshrink/samples.hpp"
#include "wshrink/threshold.hpp"

namespace wshrink {

struct HaarBasis {};

struct IntervalBasis {
  std::shared_ptr<const IntervalSystem> system;
};

using WaveletBasis = std::variant<HaarBasis, IntervalBasis>;

std::string describe(const WaveletBasis& basis);

/// Forward transform in the integral convention, down to `coarse_level`
/// (for an interval basis this must be the system's coarse level).
CoefficientPyramid forward_transform(const SignalSamples& samples, const WaveletBasis& basis,
                                     int coarse_level);
SignalSamples inverse_transform(const CoefficientPyramid& pyramid, const WaveletBasis& basis);

/// Everything the estimator needs for n = 2^J samples.
struct ShrinkageConfig {
  double alpha = 1.0;
  double M = 1.0;
  double b = 1.0;
  double delta = 1.0;
  double c_phi = 1.0;
  WaveletBasis basis = HaarBasis{};
  int J = 0;
  int J0 = 0;
  int J1 = 0;
  double lambda = 0.0;
  ThresholdMode mode = ThresholdMode::soft;
  /// Set when n is below n_0 or J1 had to be raised to J0.
  bool below_theorem_range = false;
};

struct ShrinkageRequest {
  double alpha = 1.0;
  double M = 1.0;
  double b = 1.0;
  double delta = 1.0;
  ThresholdMode mode = ThresholdMode::soft;
  /// Interval bases: raise J1 to J0 when n is too small for alpha instead of
  /// failing. The estimator itself never reads J1.
  bool allow_below_n0 = false;
};

/// Chooses J0, J1 and lambda for n samples. Haar uses J0 = 0 and c_phi = 1;
/// an interval basis uses its own coarse level and c_phi_estimate().
ShrinkageConfig make_config(std::size_t n, const ShrinkageRequest& request, WaveletBasis basis);

/// Throws if the stored fields are inconsistent (levels, lambda formula,
/// basis geometry).
void validate_config(const ShrinkageConfig& config);

/// Transform, threshold the detail coefficients, invert. Pure.
SignalSamples shrink(const SignalSamples& y, const ShrinkageConfig& config);

/// Same pipeline with an explicit threshold (no consistency check on lambda).
SignalSamples shrink_with_threshold(const SignalSamples& y, const WaveletBasis& basis, int coarse_level,
                                    double lambda, ThresholdMode mode);

}  // namespace wshrink

#endif  // WSHRINK_SHRINK_HPP

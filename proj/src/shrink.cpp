#include "wshrink/shrink.hpp"

#include <cmath>
#include <stdexcept>

#include "wshrink/haar.hpp"

namespace wshrink {

std::string describe(const WaveletBasis& basis) {
  if (const auto* iv = std::get_if<IntervalBasis>(&basis)) {
    return "interval(N=" + std::to_string(iv->system->moments()) + ")";
  }
  return "haar";
}

namespace {

const IntervalSystem& require_system(const IntervalBasis& basis) {
  if (!basis.system) throw std::invalid_argument("interval basis without a system");
  return *basis.system;
}

}  // namespace

CoefficientPyramid forward_transform(const SignalSamples& samples, const WaveletBasis& basis,
                                     int coarse_level) {
  if (const auto* iv = std::get_if<IntervalBasis>(&basis)) {
    const auto& system = require_system(*iv);
    if (coarse_level != system.coarse_level()) {
      throw GeometryError("interval system is built for coarse level " +
                          std::to_string(system.coarse_level()));
    }
    return interval_dwt(samples, system).to_unscaled();
  }
  return haar_dwt(samples, coarse_level);
}

SignalSamples inverse_transform(const CoefficientPyramid& pyramid, const WaveletBasis& basis) {
  if (const auto* iv = std::get_if<IntervalBasis>(&basis)) return interval_idwt(pyramid, require_system(*iv));
  return haar_idwt(pyramid);
}

ShrinkageConfig make_config(std::size_t n, const ShrinkageRequest& request, WaveletBasis basis) {
  if (!(request.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(request.M > 0.0)) throw std::invalid_argument("M must be > 0");

  ShrinkageConfig config;
  config.alpha = request.alpha;
  config.M = request.M;
  config.b = request.b;
  config.delta = request.delta;
  config.mode = request.mode;
  config.J = exact_log2(n);
  if (config.J < 1) throw GeometryError("need at least two samples");
  config.J1 = boundary_level(config.J, request.alpha);

  if (const auto* iv = std::get_if<IntervalBasis>(&basis)) {
    const auto& system = require_system(*iv);
    if (system.size() != n) throw GeometryError("interval system size does not match the signal");
    if (system.moments() < request.alpha) {
      throw std::invalid_argument("interval basis needs N >= alpha (N = " + std::to_string(system.moments()) +
                                  ")");
    }
    config.J0 = system.coarse_level();
    config.c_phi = system.c_phi_estimate();
  } else {
    if (request.alpha > 1.0) {
      throw std::invalid_argument("the Haar basis covers alpha <= 1; use an interval basis with N >= alpha");
    }
    config.J0 = 0;
    config.c_phi = 1.0;
  }

  if (config.J0 > config.J1) {
    if (!request.allow_below_n0) {
      throw GeometryError("n = " + std::to_string(n) + " is too small for alpha = " +
                          std::to_string(request.alpha) + " (J0 = " + std::to_string(config.J0) +
                          " > J1 = " + std::to_string(config.J1) + ")");
    }
    config.J1 = config.J0;
    config.below_theorem_range = true;
  }
  if (static_cast<double>(n) < min_samples(request.alpha).raw) config.below_theorem_range = true;

  config.basis = std::move(basis);
  config.lambda = compute_threshold(n, request.delta, request.b, config.c_phi);
  return config;
}

void validate_config(const ShrinkageConfig& config) {
  if (!(config.J0 >= 0 && config.J0 <= config.J1 && config.J1 <= config.J)) {
    throw GeometryError("levels must satisfy 0 <= J0 <= J1 <= J");
  }
  if (const auto* iv = std::get_if<IntervalBasis>(&config.basis)) {
    const auto& system = require_system(*iv);
    if (system.moments() < config.alpha) throw std::invalid_argument("interval basis needs N >= alpha");
    if (system.coarse_level() != config.J0 || system.fine_level() != config.J) {
      throw GeometryError("interval system geometry does not match the configuration");
    }
    if (config.J0 < interval_coarse_level(system.moments())) {
      throw GeometryError("J0 below 1 + ceil(log2(2N-1))");
    }
  }
  const double expected = compute_threshold(std::size_t{1} << config.J, config.delta, config.b, config.c_phi);
  if (std::abs(expected - config.lambda) > 1e-12 * expected) {
    throw std::invalid_argument("lambda does not match the threshold formula for the stored parameters");
  }
}

SignalSamples shrink_with_threshold(const SignalSamples& y, const WaveletBasis& basis, int coarse_level,
                                    double lambda, ThresholdMode mode) {
  const auto coefficients = forward_transform(y, basis, coarse_level);
  return inverse_transform(apply_threshold(coefficients, lambda, mode), basis);
}

SignalSamples shrink(const SignalSamples& y, const ShrinkageConfig& config) {
  validate_config(config);
  if (y.levels() != config.J) {
    throw GeometryError("signal has 2^" + std::to_string(y.levels()) + " samples, configuration expects 2^" +
                        std::to_string(config.J));
  }
  return shrink_with_threshold(y, config.basis, config.J0, config.lambda, config.mode);
}

}  // namespace wshrink

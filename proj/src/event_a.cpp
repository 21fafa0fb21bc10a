#include "wshrink/event_a.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wshrink {

bool event_A_supported(std::size_t n) {
  if (n < 2 || !is_power_of_two(n)) return false;
  const int J = exact_log2(n);
  return J == 4 || J == 8 || J == 16;
}

double block_bound(int J, int ell, double b) {
  return b * J * std::exp2(0.5 * ell) * std::sqrt(0.5 * std::numbers::ln2);
}

namespace {

void record(EventAReport& report, double sum, double bound, int ell, std::size_t k) {
  double ratio = 0.0;
  if (bound > 0.0) {
    ratio = std::abs(sum) / bound;
  } else if (sum != 0.0) {
    ratio = std::numeric_limits<double>::infinity();
  }
  if (ratio > report.margin) {
    report.margin = ratio;
    report.worst_ell = ell;
    report.worst_block = k;
  }
}

double weighted_sum(const WeightVector& w, std::span<const double> e) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.weights.size(); ++i) s += w.weights[i] * e[w.offset + i];
  return s;
}

}  // namespace

EventAReport in_event_A(const SignalSamples& noise, const WaveletBasis& basis, double b) {
  if (!(b >= 0.0)) throw std::invalid_argument("noise range b must be >= 0");
  if (!event_A_supported(noise.size())) {
    throw GeometryError("set A needs n = 2^J with J in {4, 8, 16}; got n = " + std::to_string(noise.size()));
  }
  const int J = noise.levels();
  const int L = exact_log2(static_cast<std::size_t>(J));
  const auto e = noise.values();
  EventAReport report;
  report.margin = 0.0;

  if (const auto* iv = std::get_if<IntervalBasis>(&basis)) {
    const IntervalSystem& system = *iv->system;
    if (system.size() != noise.size()) throw GeometryError("interval system size does not match the noise");
    const double c_phi = system.c_phi_estimate();
    for (int j = system.coarse_level(); j < J; ++j) {
      const int ell = J - L - j;
      if (ell < -1) continue;
      const double bound = c_phi * block_bound(J, ell, b);
      for (std::size_t k = 0; k < (std::size_t{1} << j); ++k) {
        const RowWeights w = extract_weights(system, j, k);
        record(report, weighted_sum(w.alphas, e), bound, ell, k);
        record(report, weighted_sum(w.betas, e), bound, ell, k);
      }
    }
  } else {
    for (int ell = -1; ell <= J - L; ++ell) {
      // Block length J 2^{l-1} and stride J 2^l, both integers since J >= 4.
      const std::size_t length = static_cast<std::size_t>(std::ldexp(J, ell - 1));
      const std::size_t stride = static_cast<std::size_t>(std::ldexp(J, ell));
      const std::size_t blocks = std::size_t{1} << (J - L - ell);
      const double bound = block_bound(J, ell, b);
      for (std::size_t k = 0; k < blocks; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < length; ++i) s += e[k * stride + i];
        record(report, s, bound, ell, k);
      }
    }
  }
  report.member = report.margin <= 1.0;
  return report;
}

double hoeffding_bound(std::size_t m, double t, double lo, double hi) {
  if (m < 1) throw std::invalid_argument("hoeffding_bound needs m >= 1");
  if (!(hi > lo)) throw std::invalid_argument("hoeffding_bound needs hi > lo");
  if (!(t > 0.0)) throw std::invalid_argument("hoeffding_bound needs t > 0");
  const double range = hi - lo;
  return 1.0 - std::exp(-2.0 * t * t / (static_cast<double>(m) * range * range));
}

CoefficientBoundReport noise_coeff_bound_check(const SignalSamples& noise, const WaveletBasis& basis, double b) {
  int coarse = 0;
  double c_phi = 1.0;
  if (const auto* iv = std::get_if<IntervalBasis>(&basis)) {
    coarse = iv->system->coarse_level();
    c_phi = iv->system->c_phi_estimate();
  }
  const auto coefficients = forward_transform(noise, basis, coarse);
  const double n = static_cast<double>(noise.size());
  const double bound = b * c_phi * std::sqrt(static_cast<double>(noise.levels()) / n);

  CoefficientBoundReport report;
  auto visit = [&](double x) {
    double ratio = 0.0;
    if (bound > 0.0) {
      ratio = std::abs(x) / bound;
    } else if (x != 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    report.worst_ratio = std::max(report.worst_ratio, ratio);
  };
  for (double c : coefficients.approx) visit(c);
  for (const auto& level : coefficients.details) {
    for (double d : level) visit(d);
  }
  report.holds = report.worst_ratio <= 1.0;
  return report;
}

}  // namespace wshrink

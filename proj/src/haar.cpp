#include "wshrink/haar.hpp"

#include <cmath>
#include <numbers>

namespace wshrink {

CoefficientPyramid haar_dwt(const SignalSamples& samples, int coarse_level) {
  const int fine = samples.levels();
  if (coarse_level < 0 || coarse_level > fine) {
    throw GeometryError("coarse level " + std::to_string(coarse_level) + " outside [0, " +
                        std::to_string(fine) + "]");
  }
  constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  // c_{J,k} = g_{k+1} / sqrt(n)
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(samples.size()));
  std::vector<double> approx(samples.values().begin(), samples.values().end());
  for (double& c : approx) c *= inv_sqrt_n;

  CoefficientPyramid out;
  out.coarse_level = coarse_level;
  out.details.resize(static_cast<std::size_t>(fine - coarse_level));
  for (int j = fine - 1; j >= coarse_level; --j) {
    const std::size_t half = std::size_t{1} << j;
    std::vector<double> coarser(half);
    auto& detail = out.details[static_cast<std::size_t>(j - coarse_level)];
    detail.resize(half);
    for (std::size_t k = 0; k < half; ++k) {
      const double a = approx[2 * k];
      const double b = approx[2 * k + 1];
      coarser[k] = (a + b) * inv_sqrt2;
      detail[k] = (a - b) * inv_sqrt2;
    }
    approx = std::move(coarser);
  }
  out.approx = std::move(approx);
  return out;
}

SignalSamples haar_idwt(const CoefficientPyramid& pyramid) {
  pyramid.validate();
  const CoefficientPyramid p = pyramid.to_unscaled();
  constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  std::vector<double> approx = p.approx;
  for (int j = p.coarse_level; j < p.fine_level(); ++j) {
    const auto detail = p.detail(j);
    std::vector<double> finer(2 * approx.size());
    for (std::size_t k = 0; k < approx.size(); ++k) {
      finer[2 * k] = (approx[k] + detail[k]) * inv_sqrt2;
      finer[2 * k + 1] = (approx[k] - detail[k]) * inv_sqrt2;
    }
    approx = std::move(finer);
  }
  const double sqrt_n = std::sqrt(static_cast<double>(approx.size()));
  for (double& v : approx) v *= sqrt_n;
  return SignalSamples(std::move(approx));
}

double haar_coeff_closed_form(const SignalSamples& samples, int j, std::size_t k,
                              CoefficientKind kind) {
  const int fine = samples.levels();
  if (j < 0 || j >= fine) throw GeometryError("level " + std::to_string(j) + " out of range");
  if (k >= (std::size_t{1} << j)) throw GeometryError("shift " + std::to_string(k) + " out of range");

  const std::size_t block = std::size_t{1} << (fine - j);
  const std::size_t start = k * block;
  const double scale = std::ldexp(1.0, -fine) * std::pow(2.0, 0.5 * j);
  double sum = 0.0;
  if (kind == CoefficientKind::approx) {
    for (std::size_t i = 0; i < block; ++i) sum += samples[start + i];
  } else {
    const std::size_t half = block / 2;
    for (std::size_t i = 0; i < half; ++i) sum += samples[start + i] - samples[start + half + i];
  }
  return scale * sum;
}

}  // namespace wshrink

#include "wshrink/samples.hpp"

#include <bit>
#include <cmath>

namespace wshrink {

bool is_power_of_two(std::size_t n) { return std::has_single_bit(n); }

int exact_log2(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw GeometryError("length " + std::to_string(n) + " is not a power of two");
  }
  return std::countr_zero(n);
}

SignalSamples::SignalSamples(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2 || !is_power_of_two(values_.size())) {
    throw GeometryError("signal length " + std::to_string(values_.size()) +
                        " is not a power of two >= 2");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("signal contains a non-finite value");
  }
  levels_ = exact_log2(values_.size());
}

std::span<const double> CoefficientPyramid::detail(int j) const {
  if (j < coarse_level || j >= fine_level()) {
    throw GeometryError("detail level " + std::to_string(j) + " out of range");
  }
  return details[static_cast<std::size_t>(j - coarse_level)];
}

std::span<double> CoefficientPyramid::detail(int j) {
  if (j < coarse_level || j >= fine_level()) {
    throw GeometryError("detail level " + std::to_string(j) + " out of range");
  }
  return details[static_cast<std::size_t>(j - coarse_level)];
}

void CoefficientPyramid::validate() const {
  if (coarse_level < 0 || coarse_level > 30) throw GeometryError("coarse level out of range");
  if (approx.size() != (std::size_t{1} << coarse_level)) {
    throw GeometryError("approximation block has " + std::to_string(approx.size()) +
                        " entries, expected 2^" + std::to_string(coarse_level));
  }
  for (std::size_t i = 0; i < details.size(); ++i) {
    const auto level = static_cast<std::size_t>(coarse_level) + i;
    if (details[i].size() != (std::size_t{1} << level)) {
      throw GeometryError("detail block of level " + std::to_string(level) + " has " +
                          std::to_string(details[i].size()) + " entries");
    }
  }
}

namespace {

CoefficientPyramid rescaled(const CoefficientPyramid& p, double factor, bool scaled) {
  CoefficientPyramid out = p;
  for (double& c : out.approx) c *= factor;
  for (auto& level : out.details) {
    for (double& d : level) d *= factor;
  }
  out.scaled = scaled;
  return out;
}

}  // namespace

CoefficientPyramid CoefficientPyramid::to_scaled() const {
  if (scaled) return *this;
  return rescaled(*this, std::sqrt(static_cast<double>(sample_count())), true);
}

CoefficientPyramid CoefficientPyramid::to_unscaled() const {
  if (!scaled) return *this;
  return rescaled(*this, 1.0 / std::sqrt(static_cast<double>(sample_count())), false);
}

std::vector<double> CoefficientPyramid::flatten() const {
  std::vector<double> flat;
  flat.reserve(sample_count());
  flat.insert(flat.end(), approx.begin(), approx.end());
  for (const auto& level : details) flat.insert(flat.end(), level.begin(), level.end());
  return flat;
}

CoefficientPyramid CoefficientPyramid::unflatten(std::span<const double> flat, int coarse_level,
                                                 bool scaled) {
  const int fine = exact_log2(flat.size());
  if (coarse_level < 0 || coarse_level > fine) throw GeometryError("coarse level out of range");
  CoefficientPyramid p;
  p.coarse_level = coarse_level;
  p.scaled = scaled;
  std::size_t pos = std::size_t{1} << coarse_level;
  p.approx.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(pos));
  for (int j = coarse_level; j < fine; ++j) {
    const std::size_t len = std::size_t{1} << j;
    p.details.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                           flat.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return p;
}

double CoefficientPyramid::sum_of_squares() const {
  double s = 0.0;
  for (double c : approx) s += c * c;
  for (const auto& level : details) {
    for (double d : level) s += d * d;
  }
  return s;
}

CoefficientPyramid zero_pyramid(int coarse_level, int fine_level) {
  if (coarse_level < 0 || coarse_level > fine_level) throw GeometryError("invalid level range");
  CoefficientPyramid p;
  p.coarse_level = coarse_level;
  p.approx.assign(std::size_t{1} << coarse_level, 0.0);
  for (int j = coarse_level; j < fine_level; ++j) p.details.emplace_back(std::size_t{1} << j, 0.0);
  return p;
}

}  // namespace wshrink

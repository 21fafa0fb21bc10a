#ifndef WSHRINK_SAMPLES_HPP
#define WSHRINK_SAMPLES_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wshrink {

/// Raised when a signal length, level or index does not fit the dyadic
/// geometry an operation needs.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_power_of_two(std::size_t n);

/// log2 of a power of two. Throws GeometryError otherwise.
int exact_log2(std::size_t n);

/// Samples y_1..y_n of a signal on the grid i/n, n = 2^J with J >= 1.
class SignalSamples {
 public:
  explicit SignalSamples(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  int levels() const { return levels_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::vector<double> release() && { return std::move(values_); }

  friend bool operator==(const SignalSamples&, const SignalSamples&) = default;

 private:
  std::vector<double> values_;
  int levels_ = 0;
};

/// Approximation coefficients at the coarse level plus one detail block per
/// level coarse_level .. J-1.
///
/// Coefficients are stored in the integral convention c = <g_bar, phi_{j,k}>
/// unless `scaled` is set, in which case every entry carries the extra sqrt(n)
/// factor of the orthogonal discrete transform.
struct CoefficientPyramid {
  int coarse_level = 0;
  std::vector<double> approx;
  std::vector<std::vector<double>> details;
  bool scaled = false;

  int fine_level() const { return coarse_level + static_cast<int>(details.size()); }
  std::size_t sample_count() const { return std::size_t{1} << fine_level(); }

  /// Detail block of level j (coarse_level <= j < fine_level()).
  std::span<const double> detail(int j) const;
  std::span<double> detail(int j);

  /// Throws GeometryError if level sizes are not 2^coarse_level and 2^j.
  void validate() const;

  CoefficientPyramid to_scaled() const;
  CoefficientPyramid to_unscaled() const;

  /// Coefficients in transform order: approx, then details by increasing level.
  std::vector<double> flatten() const;
  static CoefficientPyramid unflatten(std::span<const double> flat, int coarse_level, bool scaled);

  double sum_of_squares() const;

  friend bool operator==(const CoefficientPyramid&, const CoefficientPyramid&) = default;
};

CoefficientPyramid zero_pyramid(int coarse_level, int fine_level);

}  // namespace wshrink

#endif  // WSHRINK_SAMPLES_HPP

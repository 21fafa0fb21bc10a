#ifndef WSHRINK_STATS_HPP
#define WSHRINK_STATS_HPP

#include <cstddef>
#include <cstdint>
#include <span>

namespace wshrink {

/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for `successes` out of `trials`.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ99);

/// Linear-interpolation quantile (type 7) of unsorted data, q in [0, 1].
double quantile(std::span<const double> data, double q);

double median(std::span<const double> data);

/// P(X >= k) for X ~ Binomial(m, p).
double binomial_upper_tail(std::uint64_t m, std::uint64_t k, double p);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< root mean square residual
};

/// Ordinary least squares y = slope x + intercept. Needs two distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace wshrink

#endif  // WSHRINK_STATS_HPP

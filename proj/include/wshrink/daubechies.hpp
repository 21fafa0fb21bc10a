#ifndef WSHRINK_DAUBECHIES_HPP
#define WSHRINK_DAUBECHIES_HPP

#include <vector>

namespace wshrink {

inline constexpr int kMaxVanishingMoments = 5;

/// Orthonormal Daubechies filter pair with N vanishing moments, extremal phase.
/// lowpass sums to sqrt(2); highpass[k] = (-1)^k lowpass[2N-1-k].
struct DaubechiesFilter {
  int N = 1;
  std::vector<double> lowpass;
  std::vector<double> highpass;
};

/// Filters for N in [1, 5], obtained by spectral factorization of the
/// Daubechies polynomial. Results are cached per N.
const DaubechiesFilter& daubechies_filter(int N);

/// phi and psi of Daubechies-N on the dyadic grid m / 2^resolution covering
/// their common support [0, 2N-1].
struct CascadeTable {
  int N = 1;
  int resolution = 0;
  std::vector<double> phi;
  std::vector<double> psi;

  double step() const;
  double support_length() const { return 2.0 * N - 1.0; }
  /// x-coordinate of grid point m.
  double abscissa(std::size_t m) const;
};

/// Tabulates the scaling function and wavelet by the cascade (refinement)
/// algorithm: integer samples from the refinement eigenproblem, then dyadic
/// refinement. For N = 1 the Haar indicator of (0, 1] is returned.
CascadeTable cascade_evaluate(int N, int resolution);

/// max over grid points of |phi(x) - sqrt(2) sum_k h_k phi(2x - k)|.
double refinement_residual(const CascadeTable& table);

/// Trapezoid rule over the table grid for integrand values `f`.
double trapezoid(const std::vector<double>& f, double step);

}  // namespace wshrink

#endif  // WSHRINK_DAUBECHIES_HPP

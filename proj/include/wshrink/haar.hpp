#ifndef WSHRINK_HAAR_HPP
#define WSHRINK_HAAR_HPP

#include "wshrink/samples.hpp"

namespace wshrink {

enum class CoefficientKind { approx, detail };

/// Haar wavelet coefficients of the piecewise-constant extension g_bar of the
/// samples, down to `coarse_level`. O(n). Returns the integral convention.
CoefficientPyramid haar_dwt(const SignalSamples& samples, int coarse_level);

/// Exact inverse of haar_dwt; accepts either scaling convention.
SignalSamples haar_idwt(const CoefficientPyramid& pyramid);

/// Direct block summation for a single Haar coefficient:
///   approx: 2^{-J+j/2} * sum of the 2^{J-j} samples of block k
///   detail: 2^{-J+j/2} * (first half of block k - second half)
/// Requires 0 <= j < J and 0 <= k < 2^j.
double haar_coeff_closed_form(const SignalSamples& samples, int j, std::size_t k,
                              CoefficientKind kind);

}  // namespace wshrink

#endif  // WSHRINK_HAAR_HPP

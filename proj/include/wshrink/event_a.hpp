#ifndef WSHRINK_EVENT_A_HPP
#define WSHRINK_EVENT_A_HPP

#include <cstddef>

#include "wshrink/samples.hpp"
#include "wshrink/shrink.hpp"

namespace wshrink {

/// True when 2^J / J blocks tile the samples, i.e. J in {4, 8, 16}.
bool event_A_supported(std::size_t n);

/// b J 2^{l/2} sqrt(ln 2 / 2), the block-sum bound at block scale l.
double block_bound(int J, int ell, double b);

struct EventAReport {
  bool member = true;
  int worst_ell = 0;          ///< block scale of the largest ratio
  std::size_t worst_block = 0;
  double margin = 0.0;        ///< max |block sum| / bound; member iff margin <= 1
};

/// Membership of a noise vector in the good event A for noise range b.
///
/// Haar: for l in [-1, J - log2 J] and k in [0, 2^{J - log2 J - l} - 1], the
/// J 2^{l-1} consecutive samples starting at index k 2^l J must sum to at most
/// block_bound(J, l, b) in absolute value.
///
/// Interval: for the levels j = J - log2 J - l that lie in [J0, J-1], the
/// alpha- and beta-weighted sums of every (j, k) row must stay below
/// c_phi * block_bound(J, l, b).
///
/// Throws GeometryError unless event_A_supported(n).
EventAReport in_event_A(const SignalSamples& noise, const WaveletBasis& basis, double b);

/// 1 - exp(-2 t^2 / (m (hi - lo)^2)).
double hoeffding_bound(std::size_t m, double t, double lo, double hi);

struct CoefficientBoundReport {
  bool holds = true;
  double worst_ratio = 0.0;  ///< max |coefficient| / (b c_phi sqrt(log2 n / n))
};

/// Checks |d_{j,k}| <= b c_phi sqrt(log2 n / n) for every detail coefficient
/// and |c_{J0,k}| against the same bound, c_phi = 1 for Haar.
CoefficientBoundReport noise_coeff_bound_check(const SignalSamples& noise, const WaveletBasis& basis, double b);

}  // namespace wshrink

#endif  // WSHRINK_EVENT_A_HPP

#ifndef WSHRINK_HOLDER_HPP
#define WSHRINK_HOLDER_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "wshrink/samples.hpp"

namespace wshrink {

enum class SignalKind { constant, linear, cusp, sinusoid, weierstrass };

SignalKind parse_signal_kind(std::string_view name);
std::string_view to_string(SignalKind kind);

/// A test signal on [0, 1] together with the Hoelder parameters it is
/// certified for.
///
///   constant     f = M
///   linear       f = M t
///   cusp         f = M |t - 1/2|^alpha                   (alpha <= 1)
///   sinusoid     f = A sin(2 pi t), A chosen from (alpha, M)
///   weierstrass  f = A sum_{m<=K} 2^{-m alpha} cos(2^m pi t)   (alpha <= 1)
class HolderSignal {
 public:
  SignalKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double M() const { return M_; }
  double amplitude() const { return amplitude_; }

  double operator()(double t) const;

  /// f(i/n) for i = 1..n.
  SignalSamples sample(std::size_t n) const;

 private:
  friend HolderSignal make_signal(SignalKind kind, double alpha, double M);

  SignalKind kind_ = SignalKind::constant;
  double alpha_ = 1.0;
  double M_ = 1.0;
  double amplitude_ = 1.0;
};

inline constexpr int kWeierstrassTerms = 20;

/// Throws std::invalid_argument for alpha <= 0, M <= 0, or a kind that is
/// not in the class for this alpha.
HolderSignal make_signal(SignalKind kind, double alpha, double M);

struct HolderCheck {
  bool holds = true;
  std::size_t i = 0;   ///< worst pair (0-based sample indices)
  std::size_t j = 0;
  double ratio = 0.0;  ///< largest |increment| / (M |t_i - t_j|^exponent)
};

/// Discrete certificate on the grid t_i = i/n.
///
/// alpha <= 1: every pair satisfies |y_i - y_j| <= M |t_i - t_j|^alpha.
/// alpha > 1 (p = floor(alpha), r = alpha - p): first differences satisfy
/// |dy/dt| <= M and every pair of p-th difference quotients satisfies
/// |D_i - D_j| <= M |t_i - t_j|^r. O(n^2).
HolderCheck check_holder(const SignalSamples& samples, double alpha, double M);

}  // namespace wshrink

#endif  // WSHRINK_HOLDER_HPP

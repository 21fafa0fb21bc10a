#include "wshrink/holder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace wshrink {
namespace {

constexpr double kPi = std::numbers::pi;

double weierstrass_sum(double t, double alpha) {
  double s = 0.0;
  for (int m = 0; m <= kWeierstrassTerms; ++m) {
    s += std::exp2(-m * alpha) * std::cos(std::exp2(m) * kPi * t);
  }
  return s;
}

// Upper bound on sup_{0<d<=1} sum_m 2^{-m alpha} min(2, pi 2^m d) / d^alpha,
// which bounds the Hoelder-alpha constant of the truncated series. Each cell
// [d_lo, d_hi] of a geometric grid is bounded using d_hi in the numerator and
// d_lo in the denominator.
double weierstrass_constant(double alpha) {
  constexpr double ratio = 1.001;
  double worst = 0.0;
  double hi = 1.0;
  while (hi > 1e-12) {
    const double lo = hi / ratio;
    double s = 0.0;
    for (int m = 0; m <= kWeierstrassTerms; ++m) {
      s += std::exp2(-m * alpha) * std::min(2.0, kPi * std::exp2(m) * hi);
    }
    worst = std::max(worst, s / std::pow(lo, alpha));
    hi = lo;
  }
  return worst;
}

// Hoelder constant of sin(2 pi t): its p-th derivative is (2 pi)^p times a
// sine/cosine, whose r-increments are at most min(2, 2 pi d) <= 2 pi^r d^r.
double sinusoid_constant(double alpha) {
  if (alpha <= 1.0) return 2.0 * std::pow(kPi, alpha);
  const double p = std::floor(alpha);
  const double r = alpha - p;
  return std::max(2.0 * kPi, std::pow(2.0 * kPi, p) * 2.0 * std::pow(kPi, r));
}

}  // namespace

SignalKind parse_signal_kind(std::string_view name) {
  if (name == "constant") return SignalKind::constant;
  if (name == "linear") return SignalKind::linear;
  if (name == "cusp") return SignalKind::cusp;
  if (name == "sinusoid" || name == "sin") return SignalKind::sinusoid;
  if (name == "weierstrass") return SignalKind::weierstrass;
  throw std::invalid_argument("unknown signal kind '" + std::string(name) + "'");
}

std::string_view to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::constant: return "constant";
    case SignalKind::linear: return "linear";
    case SignalKind::cusp: return "cusp";
    case SignalKind::sinusoid: return "sinusoid";
    case SignalKind::weierstrass: return "weierstrass";
  }
  return "unknown";
}

HolderSignal make_signal(SignalKind kind, double alpha, double M) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be > 0");
  if (!(M > 0.0) || !std::isfinite(M)) throw std::invalid_argument("M must be > 0");
  HolderSignal s;
  s.kind_ = kind;
  s.alpha_ = alpha;
  s.M_ = M;
  switch (kind) {
    case SignalKind::constant:
    case SignalKind::linear:
    case SignalKind::cusp:
      if (kind == SignalKind::cusp && alpha > 1.0) {
        throw std::invalid_argument("the cusp signal is only in the class for alpha <= 1");
      }
      s.amplitude_ = M;
      break;
    case SignalKind::sinusoid:
      s.amplitude_ = M / sinusoid_constant(alpha);
      break;
    case SignalKind::weierstrass:
      if (alpha > 1.0) throw std::invalid_argument("the Weierstrass signal is only in the class for alpha <= 1");
      s.amplitude_ = M / weierstrass_constant(alpha);
      break;
  }
  return s;
}

double HolderSignal::operator()(double t) const {
  switch (kind_) {
    case SignalKind::constant: return amplitude_;
    case SignalKind::linear: return amplitude_ * t;
    case SignalKind::cusp: return amplitude_ * std::pow(std::abs(t - 0.5), alpha_);
    case SignalKind::sinusoid: return amplitude_ * std::sin(2.0 * kPi * t);
    case SignalKind::weierstrass: return amplitude_ * weierstrass_sum(t, alpha_);
  }
  return 0.0;
}

SignalSamples HolderSignal::sample(std::size_t n) const {
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = (*this)(static_cast<double>(i + 1) / static_cast<double>(n));
  return SignalSamples(std::move(values));
}

namespace {

constexpr double kRoundingSlack = 1e-12;

void pairwise(std::span<const double> v, double step, double exponent, double M, HolderCheck& out) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double dt = static_cast<double>(j - i) * step;
      const double ratio = std::abs(v[i] - v[j]) / (M * std::pow(dt, exponent));
      if (ratio > out.ratio) {
        out.ratio = ratio;
        out.i = i;
        out.j = j;
      }
    }
  }
}

}  // namespace

HolderCheck check_holder(const SignalSamples& samples, double alpha, double M) {
  if (!(alpha > 0.0) || !(M > 0.0)) throw std::invalid_argument("alpha and M must be > 0");
  const auto y = samples.values();
  const double step = 1.0 / static_cast<double>(y.size());
  HolderCheck out;

  if (alpha <= 1.0) {
    pairwise(y, step, alpha, M, out);
  } else {
    const int p = static_cast<int>(std::floor(alpha));
    const double r = alpha - p;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
      const double ratio = std::abs(y[i + 1] - y[i]) / step / M;
      if (ratio > out.ratio) {
        out.ratio = ratio;
        out.i = i;
        out.j = i + 1;
      }
    }
    std::vector<double> diff(y.begin(), y.end());
    for (int order = 0; order < p && diff.size() > 1; ++order) {
      for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = (diff[i + 1] - diff[i]) / step;
      diff.pop_back();
    }
    pairwise(diff, step, r, M, out);
  }
  out.holds = out.ratio <= 1.0 + kRoundingSlack;
  return out;
}

}  // namespace wshrink

#include "wshrink/daubechies.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wshrink {
namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Roots of sum_{k<N} C(N-1+k, k) y^k via the companion matrix.
std::vector<std::complex<double>> daubechies_polynomial_roots(int N) {
  const int degree = N - 1;
  if (degree == 0) return {};
  std::vector<double> coeff(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) coeff[static_cast<std::size_t>(k)] = binomial(N - 1 + k, k);
  const double lead = coeff.back();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coeff[static_cast<std::size_t>(i)] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < degree; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

DaubechiesFilter build_filter(int N) {
  // H(z) ~ (1 + z)^N * prod (z - z_r), with z_r the root inside the unit
  // circle of z + 1/z = 2 - 4 y_r.
  std::vector<std::complex<double>> poly{1.0};
  auto multiply = [&poly](std::complex<double> c0, std::complex<double> c1) {
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i] * c0;
      next[i + 1] += poly[i] * c1;
    }
    poly = std::move(next);
  };
  for (int i = 0; i < N; ++i) multiply(1.0, 1.0);
  for (const auto& y : daubechies_polynomial_roots(N)) {
    const std::complex<double> s = 2.0 - 4.0 * y;
    const std::complex<double> disc = std::sqrt(s * s - 4.0);
    std::complex<double> z = 0.5 * (s - disc);
    if (std::abs(z) > 1.0) z = 0.5 * (s + disc);
    multiply(-z, 1.0);
  }

  DaubechiesFilter f;
  f.N = N;
  const std::size_t len = poly.size();
  f.lowpass.resize(len);
  double sum = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    f.lowpass[k] = poly[len - 1 - k].real();
    sum += f.lowpass[k];
  }
  for (double& h : f.lowpass) h *= std::numbers::sqrt2 / sum;
  f.highpass.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    f.highpass[k] = sign * f.lowpass[len - 1 - k];
  }
  return f;
}

void check_moments(int N) {
  if (N < 1 || N > kMaxVanishingMoments) {
    throw std::invalid_argument("unsupported number of vanishing moments " + std::to_string(N) +
                                " (expected 1.." + std::to_string(kMaxVanishingMoments) + ")");
  }
}

}  // namespace

const DaubechiesFilter& daubechies_filter(int N) {
  check_moments(N);
  static const std::array<DaubechiesFilter, kMaxVanishingMoments> filters = [] {
    std::array<DaubechiesFilter, kMaxVanishingMoments> all;
    for (int n = 1; n <= kMaxVanishingMoments; ++n) all[static_cast<std::size_t>(n - 1)] = build_filter(n);
    return all;
  }();
  return filters[static_cast<std::size_t>(N - 1)];
}

double CascadeTable::step() const { return std::ldexp(1.0, -resolution); }

double CascadeTable::abscissa(std::size_t m) const { return static_cast<double>(m) * step(); }

CascadeTable cascade_evaluate(int N, int resolution) {
  check_moments(N);
  if (resolution < 0 || resolution > 24) throw std::invalid_argument("resolution must be in [0, 24]");
  const DaubechiesFilter& filter = daubechies_filter(N);
  const auto& h = filter.lowpass;
  const auto& g = filter.highpass;
  const long scale = 1L << resolution;
  const long last = (2L * N - 1) * scale;

  CascadeTable t;
  t.N = N;
  t.resolution = resolution;
  t.phi.assign(static_cast<std::size_t>(last + 1), 0.0);

  if (N == 1) {
    for (long m = 1; m <= last; ++m) t.phi[static_cast<std::size_t>(m)] = 1.0;
  } else {
    // phi(a) = sqrt(2) sum_b h_{2a-b} phi(b) on the integers 1..2N-2, sum = 1.
    const int m = 2 * N - 2;
    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    for (int a = 1; a <= m; ++a) {
      for (int b = 1; b <= m; ++b) {
        const int k = 2 * a - b;
        if (k >= 0 && k < 2 * N) system(a - 1, b - 1) = std::numbers::sqrt2 * h[static_cast<std::size_t>(k)];
      }
      system(a - 1, a - 1) -= 1.0;
    }
    system.row(m - 1).setOnes();
    rhs(m - 1) = 1.0;
    const Eigen::VectorXd values = system.colPivHouseholderQr().solve(rhs);
    for (int a = 1; a <= m; ++a) t.phi[static_cast<std::size_t>(a * scale)] = values(a - 1);

    for (int r = 1; r <= resolution; ++r) {
      const long stride = 1L << (resolution - r);
      for (long idx = stride; idx < last; idx += 2 * stride) {
        double v = 0.0;
        for (int k = 0; k < 2 * N; ++k) {
          const long src = 2 * idx - k * scale;
          if (src > 0 && src < last) v += h[static_cast<std::size_t>(k)] * t.phi[static_cast<std::size_t>(src)];
        }
        t.phi[static_cast<std::size_t>(idx)] = std::numbers::sqrt2 * v;
      }
    }
  }

  t.psi.assign(t.phi.size(), 0.0);
  for (long idx = 0; idx <= last; ++idx) {
    double v = 0.0;
    for (int k = 0; k < 2 * N; ++k) {
      const long src = 2 * idx - k * scale;
      if (src >= 0 && src <= last) v += g[static_cast<std::size_t>(k)] * t.phi[static_cast<std::size_t>(src)];
    }
    t.psi[static_cast<std::size_t>(idx)] = std::numbers::sqrt2 * v;
  }
  return t;
}

double refinement_residual(const CascadeTable& table) {
  const auto& h = daubechies_filter(table.N).lowpass;
  const long scale = 1L << table.resolution;
  const long last = static_cast<long>(table.phi.size()) - 1;
  double worst = 0.0;
  for (long idx = 0; idx <= last; ++idx) {
    double v = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
      const long src = 2 * idx - static_cast<long>(k) * scale;
      if (src >= 0 && src <= last) v += h[k] * table.phi[static_cast<std::size_t>(src)];
    }
    worst = std::max(worst, std::abs(table.phi[static_cast<std::size_t>(idx)] - std::numbers::sqrt2 * v));
  }
  return worst;
}

double trapezoid(const std::vector<double>& f, double step) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * step;
}

}  // namespace wshrink

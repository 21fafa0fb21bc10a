#include <gtest/gtest.h>

#include <cmath>

#include "wshrink/daubechies.hpp"

using namespace wshrink;

TEST(Daubechies, Db2ClosedForm) {
  const auto& f = daubechies_filter(2);
  const double s3 = std::sqrt(3.0);
  const double d = 4.0 * std::sqrt(2.0);
  const double expected[] = {(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
  ASSERT_EQ(f.lowpass.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(f.lowpass[k], expected[k], 1e-14);
}

TEST(Daubechies, HaarFilter) {
  const auto& f = daubechies_filter(1);
  EXPECT_NEAR(f.lowpass[0], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f.lowpass[1], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f.highpass[0], 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f.highpass[1], -1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Daubechies, OrthonormalityAndMoments) {
  for (int N = 1; N <= kMaxVanishingMoments; ++N) {
    const auto& f = daubechies_filter(N);
    const int len = 2 * N;
    for (int shift = 0; shift < N; ++shift) {
      double s = 0.0;
      double cross = 0.0;
      for (int k = 0; k + 2 * shift < len; ++k) {
        s += f.lowpass[k] * f.lowpass[k + 2 * shift];
        cross += f.lowpass[k] * f.highpass[k + 2 * shift];
      }
      EXPECT_NEAR(s, shift == 0 ? 1.0 : 0.0, 1e-12) << "N=" << N;
      EXPECT_NEAR(cross, 0.0, 1e-12);
    }
    for (int m = 0; m < N; ++m) {
      double moment = 0.0;
      for (int k = 0; k < len; ++k) moment += f.highpass[k] * std::pow(k, m);
      EXPECT_NEAR(moment, 0.0, 1e-9 * std::pow(len, m)) << "N=" << N << " m=" << m;
    }
  }
  EXPECT_THROW(daubechies_filter(0), std::invalid_argument);
  EXPECT_THROW(daubechies_filter(6), std::invalid_argument);
}

TEST(Cascade, HaarIndicator) {
  const auto t = cascade_evaluate(1, 20);
  EXPECT_EQ(t.phi.front(), 0.0);
  for (std::size_t m = 1; m < t.phi.size(); m += 997) EXPECT_EQ(t.phi[m], 1.0);
  EXPECT_NEAR(trapezoid(t.phi, t.step()), 1.0, 1e-6);
}

TEST(Cascade, NormalizationRefinementAndMoments) {
  for (int N = 1; N <= kMaxVanishingMoments; ++N) {
    const auto t = cascade_evaluate(N, 14);
    EXPECT_LT(refinement_residual(t), 1e-8) << "N=" << N;
    if (N > 1) {
      EXPECT_NEAR(trapezoid(t.phi, t.step()), 1.0, 1e-6);
    }
    for (int m = 0; m < N; ++m) {
      std::vector<double> integrand(t.psi.size());
      for (std::size_t i = 0; i < t.psi.size(); ++i) integrand[i] = std::pow(t.abscissa(i), m) * t.psi[i];
      // The Haar jump costs one grid step in the trapezoid rule.
      const double tol = N == 1 ? t.step() : 1e-6;
      EXPECT_NEAR(trapezoid(integrand, t.step()), 0.0, tol) << "N=" << N << " m=" << m;
    }
  }
}

TEST(Cascade, ArgumentChecks) {
  EXPECT_THROW(cascade_evaluate(0, 4), std::invalid_argument);
  EXPECT_THROW(cascade_evaluate(2, -1), std::invalid_argument);
  EXPECT_THROW(cascade_evaluate(2, 25), std::invalid_argument);
}

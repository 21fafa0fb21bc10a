#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"
#include "wshrink/holder.hpp"
#include "wshrink/noise.hpp"
#include "wshrink/shrink.hpp"

using namespace wshrink;
using wshrink::testing::max_abs_diff;
using wshrink::testing::random_signal;

TEST(Shrink, ZeroThresholdIsIdentity) {
  const auto y = random_signal(512, 1);
  EXPECT_LT(max_abs_diff(shrink_with_threshold(y, HaarBasis{}, 0, 0.0, ThresholdMode::soft).values(), y.values()),
            1e-12);
  auto sys = std::make_shared<const IntervalSystem>(build_interval_system(2, 512, 3));
  EXPECT_LT(
      max_abs_diff(shrink_with_threshold(y, IntervalBasis{sys}, 3, 0.0, ThresholdMode::hard).values(), y.values()),
      1e-10);
}

TEST(Shrink, HugeThresholdProjectsOntoCoarseSpace) {
  const auto y = random_signal(64, 2);
  const int coarse = 2;
  const auto out = shrink_with_threshold(y, HaarBasis{}, coarse, 1e9, ThresholdMode::soft);
  const std::size_t block = 64 >> coarse;
  for (std::size_t b = 0; b < (std::size_t{1} << coarse); ++b) {
    double mean = 0.0;
    for (std::size_t i = 0; i < block; ++i) mean += y[b * block + i];
    mean /= static_cast<double>(block);
    for (std::size_t i = 0; i < block; ++i) EXPECT_NEAR(out[b * block + i], mean, 1e-12);
  }
}

TEST(Shrink, IntervalN1MatchesHaar) {
  const auto y = random_signal(256, 3);
  auto sys = std::make_shared<const IntervalSystem>(build_interval_system(1, 256, 1));
  for (double lambda : {0.0, 0.01, 0.05, 1.0}) {
    const auto a = shrink_with_threshold(y, HaarBasis{}, 1, lambda, ThresholdMode::soft);
    const auto b = shrink_with_threshold(y, IntervalBasis{sys}, 1, lambda, ThresholdMode::soft);
    EXPECT_LT(max_abs_diff(a.values(), b.values()), 1e-10);
  }
}

TEST(Shrink, ForwardTransformChecksCoarseLevel) {
  auto sys = std::make_shared<const IntervalSystem>(build_interval_system(2, 128, 3));
  EXPECT_THROW(forward_transform(random_signal(128, 1), IntervalBasis{sys}, 4), GeometryError);
  EXPECT_FALSE(forward_transform(random_signal(128, 1), IntervalBasis{sys}, 3).scaled);
  EXPECT_EQ(describe(IntervalBasis{sys}), "interval(N=2)");
  EXPECT_EQ(describe(HaarBasis{}), "haar");
}

TEST(MakeConfig, HaarLevelsAndThreshold) {
  ShrinkageRequest req;
  req.alpha = 0.5;
  req.b = 1.0;
  req.delta = 1.0;
  const auto c = make_config(256, req, HaarBasis{});
  EXPECT_EQ(c.J, 8);
  EXPECT_EQ(c.J0, 0);
  EXPECT_EQ(c.J1, 3);
  EXPECT_EQ(c.c_phi, 1.0);
  EXPECT_NEAR(c.lambda, compute_threshold(256, 1.0, 1.0, 1.0), 1e-15);
  EXPECT_TRUE(c.below_theorem_range);  // 256 < 512
  EXPECT_FALSE(make_config(1024, req, HaarBasis{}).below_theorem_range);
  EXPECT_NO_THROW(validate_config(c));
}

TEST(MakeConfig, HaarRejectsSmoothClasses) {
  ShrinkageRequest req;
  req.alpha = 2.0;
  EXPECT_THROW(make_config(1024, req, HaarBasis{}), std::invalid_argument);
}

TEST(MakeConfig, IntervalGeometry) {
  auto sys = std::make_shared<const IntervalSystem>(build_interval_system(2, 256, 3));
  ShrinkageRequest req;
  req.alpha = 2.0;
  EXPECT_THROW(make_config(256, req, IntervalBasis{sys}), GeometryError);
  req.allow_below_n0 = true;
  const auto c = make_config(256, req, IntervalBasis{sys});
  EXPECT_EQ(c.J0, 3);
  EXPECT_EQ(c.J1, 3);
  EXPECT_TRUE(c.below_theorem_range);
  EXPECT_EQ(c.c_phi, sys->c_phi_estimate());
  EXPECT_NO_THROW(validate_config(c));

  req.alpha = 2.5;
  EXPECT_THROW(make_config(256, req, IntervalBasis{sys}), std::invalid_argument);
  req.alpha = 1.0;
  EXPECT_THROW(make_config(512, req, IntervalBasis{sys}), GeometryError);
}

TEST(ValidateConfig, DetectsInconsistency) {
  ShrinkageRequest req;
  req.alpha = 1.0;
  auto c = make_config(1024, req, HaarBasis{});
  auto bad = c;
  bad.lambda *= 1.01;
  EXPECT_THROW(validate_config(bad), std::invalid_argument);
  bad = c;
  bad.J1 = c.J + 1;
  EXPECT_THROW(validate_config(bad), GeometryError);
  EXPECT_THROW(shrink(random_signal(512, 1), c), GeometryError);
}

TEST(Shrink, DeterministicAndMseBelowMax) {
  ShrinkageRequest req;
  req.alpha = 1.0;
  const auto c = make_config(4096, req, HaarBasis{});
  const auto f = make_signal(SignalKind::cusp, 1.0, 1.0).sample(4096);
  NoiseSpec noise;
  noise.seed = 42;
  const auto e = sample_noise(noise, 4096);
  std::vector<double> y(4096);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = f[i] + e[i];
  const SignalSamples ys(y);
  const auto a = shrink(ys, c);
  const auto b = shrink(ys, c);
  EXPECT_EQ(a, b);
  double mx = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = (a[i] - f[i]) * (a[i] - f[i]);
    mx = std::max(mx, d);
    mean += d / 4096.0;
  }
  EXPECT_LE(mean, mx);
  EXPECT_LT(mean, 0.05);
}

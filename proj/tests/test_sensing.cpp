#include "fieldmap/sensing.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fieldmap;
using namespace fieldmap::sensing;

TEST(Quantizer, FourLevelMapping) {
  const Quantizer q({1, 2, 3});
  EXPECT_EQ(q.levels(), 4);
  EXPECT_EQ(quantize(0.5, q), 0);
  EXPECT_EQ(quantize(1.0, q), 1);
  EXPECT_EQ(quantize(1.999, q), 1);
  EXPECT_EQ(quantize(2.0, q), 2);
  EXPECT_EQ(quantize(3.2, q), 3);
  EXPECT_EQ(quantize(-1e300, q), 0);
  EXPECT_EQ(quantize(1e300, q), 3);
}

TEST(Quantizer, BinaryIsIndicator) {
  const Quantizer q({0.0});
  EXPECT_EQ(quantize(-0.1, q), 0);
  EXPECT_EQ(quantize(0.1, q), 1);
  Rng rng = make_stream(41, 0, Stream::test);
  std::uniform_real_distribution<double> d(-5, 5);
  for (int i = 0; i < 1000; ++i) {
    const double x = d(rng);
    EXPECT_EQ(quantize(x, q), x > 0.0 ? 1 : 0);
  }
}

TEST(Quantizer, EqualThresholdsCollapseLevel) {
  const Quantizer q({0, 0});
  EXPECT_EQ(quantize(0.0, q), 2);
  EXPECT_EQ(quantize(-1e-12, q), 0);
}

TEST(Quantizer, RejectsInvalidThresholds) {
  EXPECT_THROW(Quantizer({}), std::invalid_argument);
  EXPECT_THROW(Quantizer({2, 1}), std::invalid_argument);
  EXPECT_THROW(Quantizer({0, NAN}), std::invalid_argument);
}

TEST(Quantizer, MonotoneAndPiecewiseConstant) {
  Rng rng = make_stream(42, 0, Stream::test);
  std::uniform_real_distribution<double> d(-2, 6);
  const Quantizer q({0.3, 1.1, 1.1, 4.0});
  std::vector<double> xs(2000);
  for (auto& x : xs) x = d(rng);
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    EXPECT_LE(q(xs[i - 1]), q(xs[i]));
    const bool straddles = std::any_of(q.thresholds().begin(), q.thresholds().end(),
                                       [&](double t) { return xs[i - 1] < t && t <= xs[i]; });
    if (!straddles) EXPECT_EQ(q(xs[i - 1]), q(xs[i]));
  }
}

TEST(NoiseModel, RejectsNegativeVariance) {
  EXPECT_THROW(NoiseModel(NoiseKind::gaussian, -0.1), std::invalid_argument);
  EXPECT_THROW(NoiseModel(NoiseKind::gaussian, INFINITY), std::invalid_argument);
}

TEST(Measure, DeterministicWithoutNoise) {
  const GridSpec g(0, 1, 0, 1, 3, 3);
  const Quantizer q({1, 2, 3});
  const NoiseModel none(NoiseKind::gaussian, 0.0);
  Rng rng = make_stream(43, 0, Stream::test);
  const Rng before = rng;
  EXPECT_EQ(measure(FieldGrid(g, Eigen::MatrixXd::Constant(3, 3, 2.5)), {1, 2}, none, q, rng), 2);
  EXPECT_EQ(measure(FieldGrid::zeros(g), {0, 0}, none, q, rng), 0);
  EXPECT_EQ(measure(FieldGrid::zeros(g), {0, 0}, NoiseModel(NoiseKind::none, 1.0), q, rng), 0);
  EXPECT_TRUE(rng == before);
  EXPECT_THROW(measure(FieldGrid::zeros(g), {3, 0}, none, q, rng), std::out_of_range);
}

TEST(Measure, GaussianAtThresholdIsFair) {
  const GridSpec g(0, 1, 0, 1, 1, 1);
  const FieldGrid f(g, Eigen::MatrixXd::Constant(1, 1, 1.0));
  const Quantizer q({1, 2, 3});
  const NoiseModel noise(NoiseKind::gaussian, 0.1);
  Rng rng = make_stream(44, 0, Stream::test);
  int hits = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) hits += measure(f, {0, 0}, noise, q, rng) >= 1;
  EXPECT_NEAR(hits / static_cast<double>(n), 0.5, 0.01);
}

TEST(Measure, SeededStreamsReproduce) {
  const GridSpec g(0, 1, 0, 1, 4, 4);
  Rng src = make_stream(45, 0, Stream::test);
  const FieldGrid f(g, oracle::random_matrix(4, 4, src, 0, 4));
  const Quantizer q({1, 2, 3});
  const NoiseModel noise(NoiseKind::gaussian, 0.1);
  Rng a = make_stream(7, 3, Stream::noise), b = make_stream(7, 3, Stream::noise);
  for (int i = 0; i < 500; ++i) {
    const PositionIndex idx{i % 4, (i / 4) % 4};
    EXPECT_EQ(measure(f, idx, noise, q, a), measure(f, idx, noise, q, b));
  }
}

TEST(Measure, AcceptsCustomSampler) {
  const GridSpec g(0, 1, 0, 1, 1, 1);
  const FieldGrid f(g, Eigen::MatrixXd::Constant(1, 1, 1.5));
  const Quantizer q({1, 2, 3});
  EXPECT_EQ(measure_with(f, {0, 0}, [] { return 0.6; }, q), 2);
  EXPECT_EQ(measure_with(f, {0, 0}, [] { return -0.6; }, q), 0);
}

TEST(Streams, DistinctConcernsDiffer) {
  Rng n = make_stream(1, 0, Stream::noise), e = make_stream(1, 0, Stream::exploration);
  Rng n1 = make_stream(1, 1, Stream::noise);
  const auto a = n(), b = e(), c = n1();
  EXPECT_NE(a, b);
  EXPECT_NE(a, c);
}

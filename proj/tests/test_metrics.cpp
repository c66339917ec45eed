#include "fieldmap/metrics.hpp"
#include "fieldmap/dct.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fieldmap;
using namespace fieldmap::metrics;

namespace {

const GridSpec kGrid(0, 1, 0, 1, 24, 20);

FieldGrid random_field(Rng& rng, double lo = 0.0, double hi = 4.0) {
  return FieldGrid(kGrid, oracle::random_matrix(24, 20, rng, lo, hi));
}

}  // namespace

TEST(Mse, BasicValues) {
  Rng rng = make_stream(91, 0, Stream::test);
  const auto a = random_field(rng);
  EXPECT_EQ(mse(a, a), 0.0);
  EXPECT_NEAR(mse(a, FieldGrid(kGrid, a.values().array() + 1.0)), 1.0, 1e-12);
  const auto b = random_field(rng);
  EXPECT_EQ(mse(a, b), mse(b, a));
  EXPECT_GT(mse(a, b), 0.0);
  EXPECT_THROW(mse(a, FieldGrid::zeros(GridSpec(0, 1, 0, 1, 24, 21))), std::invalid_argument);
}

TEST(Mse, OptimalTruncationError) {
  Rng rng = make_stream(92, 0, Stream::test);
  const auto f = random_field(rng);
  const auto c = dct::forward_dct(f);
  for (int n : {1, 7, 40, 200}) {
    const auto modes = dct::select_modes_largest(n, kGrid);
    EXPECT_NEAR(mse(f, dct::truncated_field(c, modes)), dct::truncation_mse(c, modes), 1e-9);
  }
}

TEST(SsimParams, Validation) {
  EXPECT_NO_THROW(SsimParams{}.validate());
  EXPECT_THROW((SsimParams{10, 1.5, 0.01, 0.03, {}}.validate()), std::invalid_argument);
  EXPECT_THROW((SsimParams{1, 1.5, 0.01, 0.03, {}}.validate()), std::invalid_argument);
  EXPECT_THROW((SsimParams{11, 0.0, 0.01, 0.03, {}}.validate()), std::invalid_argument);
  EXPECT_THROW((SsimParams{11, 1.5, 0.0, 0.03, {}}.validate()), std::invalid_argument);
  EXPECT_THROW((SsimParams{11, 1.5, 0.01, 0.03, -1.0}.validate()), std::invalid_argument);
}

TEST(Ssim, IdenticalIsOne) {
  Rng rng = make_stream(93, 0, Stream::test);
  const auto a = random_field(rng);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
  const auto flat = FieldGrid(kGrid, Eigen::MatrixXd::Constant(24, 20, 2.0));
  EXPECT_NEAR(ssim(flat, flat), 1.0, 1e-12);
}

TEST(Ssim, ZeroEstimateIsBelowOne) {
  Rng rng = make_stream(94, 0, Stream::test);
  const auto a = random_field(rng);
  EXPECT_LT(ssim(a, FieldGrid::zeros(kGrid)), 1.0);
}

TEST(Ssim, MatchesDirectWindowReference) {
  Rng rng = make_stream(95, 0, Stream::test);
  const auto a = random_field(rng);
  for (auto [c, d] : {std::pair{0.5, 1.0}, std::pair{-1.2, 0.3}, std::pair{1.0, 0.0}}) {
    const FieldGrid b(kGrid, c * a.values().array() + d);
    const double range = a.values().maxCoeff() - a.values().minCoeff();
    EXPECT_NEAR(ssim(a, b), oracle::ssim(a.values(), b.values(), 11, 1.5, 0.01, 0.03, range), 1e-6);
  }
  const auto b = random_field(rng, -1, 2);
  const SsimParams p{7, 1.0, 0.02, 0.05, 3.0};
  EXPECT_NEAR(ssim(a, b, p), oracle::ssim(a.values(), b.values(), 7, 1.0, 0.02, 0.05, 3.0), 1e-6);
}

TEST(Ssim, SymmetricWithExplicitRange) {
  Rng rng = make_stream(96, 0, Stream::test);
  const auto a = random_field(rng), b = random_field(rng, 1, 3);
  SsimParams p;
  p.dynamic_range = 4.0;
  EXPECT_NEAR(ssim(a, b, p), ssim(b, a, p), 1e-12);
  const double s = ssim(a, b, p);
  EXPECT_GE(s, -1.0);
  EXPECT_LE(s, 1.0);
}

TEST(Ssim, DynamicRangeResolution) {
  Rng rng = make_stream(97, 0, Stream::test);
  const auto a = random_field(rng);
  EXPECT_DOUBLE_EQ(resolve_dynamic_range(a, {}), a.values().maxCoeff() - a.values().minCoeff());
  const auto flat = FieldGrid(kGrid, Eigen::MatrixXd::Constant(24, 20, 2.0));
  EXPECT_DOUBLE_EQ(resolve_dynamic_range(flat, {}), 1.0);
  SsimParams p;
  p.dynamic_range = 7.0;
  EXPECT_DOUBLE_EQ(resolve_dynamic_range(a, p), 7.0);
}

TEST(Ssim, RejectsGridSmallerThanWindow) {
  const GridSpec tiny(0, 1, 0, 1, 10, 30);
  EXPECT_THROW(ssim(FieldGrid::zeros(tiny), FieldGrid::zeros(tiny)), std::invalid_argument);
  EXPECT_THROW(ssim(FieldGrid::zeros(kGrid), FieldGrid::zeros(tiny)), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "jsmreg/pyramid.hpp"
#include "jsmreg/saliency.hpp"
#include "oracles.hpp"

using namespace jsmreg;

namespace {

Image step_edge(int n) {
  Image img(n, n, 0.0);
  for (int y = 0; y < n; ++y)
    for (int x = n / 2; x < n; ++x) img(x, y) = 1.0;
  return img;
}

double angle_deg(Vec2 a, Vec2 b) {
  const double c = std::min(1.0, std::abs(dot(a, b)) / (norm(a) * norm(b)));
  return std::acos(c) * 180.0 / std::numbers::pi;
}

}  // namespace

TEST(LocalSaliencyTest, ConstantIsZero) {
  const SaliencyMap s = local_saliency(Image(9, 7, 0.3));
  for (double v : s.values().pixels()) EXPECT_EQ(v, 0.0);
}

TEST(LocalSaliencyTest, IsolatedPeak) {
  Image img(5, 5, 0.0);
  img(2, 2) = 1.0;
  const SaliencyMap s = local_saliency(img);
  EXPECT_DOUBLE_EQ(s(2, 2), 8.0);
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      if (dx || dy) {
        EXPECT_DOUBLE_EQ(s(2 + dx, 2 + dy), 1.0);
      }
  EXPECT_DOUBLE_EQ(s(0, 0), 0.0);
}

TEST(LocalSaliencyTest, BorderUsesInBoundsNeighbors) {
  Image img(3, 3, 0.0);
  img(0, 0) = 1.0;
  EXPECT_DOUBLE_EQ(local_saliency(img)(0, 0), 3.0);
}

TEST(LocalSaliencyTest, QuadraticHomogeneityAndOffsetInvariance) {
  std::mt19937_64 rng(21);
  const Image img = oracle::random_image(rng, 12, 10);
  Image scaled = img, shifted = img;
  for (double& v : scaled.pixels()) v *= 3.0;
  for (double& v : shifted.pixels()) v += 0.25;
  const SaliencyMap a = local_saliency(img);
  const SaliencyMap b = local_saliency(scaled);
  const SaliencyMap c = local_saliency(shifted);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 12; ++x) {
      EXPECT_NEAR(b(x, y), 9.0 * a(x, y), 1e-12);
      EXPECT_NEAR(c(x, y), a(x, y), 1e-12);
    }
  }
}

TEST(LocalSaliencyTest, TranslationEquivariance) {
  std::mt19937_64 rng(22);
  const Image img = oracle::random_image(rng, 20, 20);
  Image moved(20, 20, 0.0);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x)
      if (x >= 3 && y >= 2) moved(x, y) = img(x - 3, y - 2);
  const SaliencyMap a = local_saliency(img);
  const SaliencyMap b = local_saliency(moved);
  for (int y = 4; y < 18; ++y)
    for (int x = 5; x < 18; ++x) EXPECT_DOUBLE_EQ(b(x, y), a(x - 3, y - 2));
}

TEST(MultiscaleSaliencyTest, ConstantIsZero) {
  const SaliencyMap s = multiscale_saliency(build_pyramid(Image(64, 64, 0.4), 2));
  for (double v : s.values().pixels()) EXPECT_EQ(v, 0.0);
}

TEST(MultiscaleSaliencyTest, SingleLevelEqualsLocal) {
  std::mt19937_64 rng(23);
  const Image img = oracle::random_image(rng, 16, 16);
  const SaliencyMap a = multiscale_saliency(build_pyramid(img, 1));
  const SaliencyMap b = local_saliency(img);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) EXPECT_EQ(a(x, y), b(x, y));
}

TEST(MultiscaleSaliencyTest, MoreLevelsNeverDecrease) {
  const Image img = step_edge(64);
  const SaliencyMap one = multiscale_saliency(build_pyramid(img, 1));
  const SaliencyMap two = multiscale_saliency(build_pyramid(img, 2));
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) EXPECT_GE(two(x, y), one(x, y));
}

TEST(DiscTest, NinetySevenOffsets) {
  const auto d = disc_offsets(kInertiaRadius);
  EXPECT_EQ(d.size(), 97u);
  for (const auto& [dx, dy] : d) EXPECT_LE(dx * dx + dy * dy, 30.25);
  EXPECT_EQ(disc_offsets(1.0).size(), 5u);
}

TEST(InertiaTest, ZeroSaliencyGivesZeroMatrix) {
  const SaliencyMap s(Image(20, 20, 0.0));
  EXPECT_TRUE(inertia_matrix(s, 10, 10).is_zero());
}

TEST(InertiaTest, HorizontalSegment) {
  Image v(21, 21, 0.0);
  for (int x = 8; x <= 12; ++x) v(x, 10) = 1.0;
  const SymMat2 m = inertia_matrix(SaliencyMap(v), 10, 10);
  EXPECT_DOUBLE_EQ(m.yy, 0.0);
  EXPECT_DOUBLE_EQ(m.xy, 0.0);
  // Unit masses at -2..2: sum of squares 10.
  EXPECT_DOUBLE_EQ(m.xx, 10.0);
}

TEST(InertiaTest, SegmentOffCenterUsesCentralMoments) {
  Image v(21, 21, 0.0);
  for (int x = 9; x <= 13; ++x) v(x, 12) = 2.0;
  const SymMat2 m = inertia_matrix(SaliencyMap(v), 10, 10);
  EXPECT_NEAR(m.yy, 0.0, 1e-12);
  EXPECT_NEAR(m.xy, 0.0, 1e-12);
  EXPECT_NEAR(m.xx, 20.0, 1e-12);
}

TEST(InertiaTest, SymmetricBlob) {
  Image v(31, 31, 0.0);
  for (int y = 0; y < 31; ++y)
    for (int x = 0; x < 31; ++x)
      v(x, y) = std::exp(-((x - 15) * (x - 15) + (y - 15) * (y - 15)) / 8.0);
  const SymMat2 m = inertia_matrix(SaliencyMap(v), 15, 15);
  EXPECT_NEAR(m.xx, m.yy, 1e-12);
  EXPECT_NEAR(m.xy, 0.0, 1e-12);
  EXPECT_GT(m.xx, 0.0);
}

TEST(RsvTest, AxisAligned) {
  const auto e = rsv({4, 0, 1});
  ASSERT_TRUE(e);
  EXPECT_DOUBLE_EQ(e->x, 1.0);
  EXPECT_DOUBLE_EQ(e->y, 0.0);
  const auto f = rsv({1, 0, 4});
  ASSERT_TRUE(f);
  EXPECT_DOUBLE_EQ(f->x, 0.0);
  EXPECT_DOUBLE_EQ(f->y, 1.0);
}

TEST(RsvTest, Diagonal) {
  const auto e = rsv({2, 1, 2});
  ASSERT_TRUE(e);
  EXPECT_NEAR(e->x, 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(e->y, 1 / std::sqrt(2.0), 1e-15);
}

TEST(RsvTest, CanonicalSign) {
  const auto e = rsv({2, -1, 2});
  ASSERT_TRUE(e);
  EXPECT_GT(e->x, 0.0);
  EXPECT_NEAR(e->y, -1 / std::sqrt(2.0), 1e-15);
}

TEST(RsvTest, IsotropicAndZeroAreAbsent) {
  EXPECT_FALSE(rsv({1, 0, 1}));
  EXPECT_FALSE(rsv({0, 0, 0}));
  EXPECT_FALSE(rsv({5, 0, 5 * (1 - 1e-8)}));
  EXPECT_TRUE(rsv({5, 0, 5 * (1 - 1e-4)}));
}

TEST(RsvTest, EigenEquationAgainstCharacteristicPolynomial) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    const SymMat2 m{u(rng), u(rng), u(rng)};
    const auto e = rsv(m);
    ASSERT_TRUE(e);
    const auto ev = oracle::eigenvalues(m.xx, m.xy, m.yy);
    EXPECT_NEAR(norm(*e), 1.0, 1e-12);
    EXPECT_NEAR(m.xx * e->x + m.xy * e->y, ev.lambda_max * e->x, 1e-9);
    EXPECT_NEAR(m.xy * e->x + m.yy * e->y, ev.lambda_max * e->y, 1e-9);
  }
}

TEST(RsvFieldTest, ConstantImageHasNoVectors) {
  const RsvResult r = build_rsv_field(Image(64, 64, 0.5), 2);
  EXPECT_EQ(r.field.valid_count(), 0u);
}

TEST(RsvFieldTest, StepEdgeVectorsAreParallelToEdge) {
  const RsvResult r = build_rsv_field(step_edge(64), 2);
  EXPECT_TRUE(r.field.valid(31, 32));
  EXPECT_TRUE(r.field.valid(32, 32));
  std::size_t checked = 0;
  for (int y = 6; y < 58; ++y) {
    for (int x = 0; x < 64; ++x) {
      if (const auto e = r.field.at(x, y)) {
        EXPECT_LT(angle_deg(*e, {0, 1}), 5.0) << x << "," << y;
        EXPECT_NEAR(norm(*e), 1.0, 1e-12);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100u);
  EXPECT_FALSE(r.field.valid(5, 32));
}

TEST(RsvFieldTest, ThresholdIsInclusive) {
  // Single level: interior line pixels have saliency 6a^2, the rows beside it 3a^2,
  // exactly half the maximum.
  Image img(32, 32, 0.0);
  for (int x = 0; x < 32; ++x) img(x, 16) = 0.5;
  const RsvResult at = build_rsv_field(img, 1, 0.5);
  EXPECT_TRUE(at.field.valid(16, 16));
  EXPECT_TRUE(at.field.valid(16, 15));
  EXPECT_TRUE(at.field.valid(16, 17));
  const RsvResult above = build_rsv_field(img, 1, 0.5001);
  EXPECT_TRUE(above.field.valid(16, 16));
  EXPECT_FALSE(above.field.valid(16, 15));
  EXPECT_FALSE(above.field.valid(16, 17));
}

TEST(RsvFieldTest, QuarterTurnRotatesVectors) {
  std::mt19937_64 rng(25);
  const int n = 48;
  Image img(n, n, 0.0);
  // Smooth random field so RSVs are well defined.
  const Image noise = oracle::random_image(rng, n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      double s = 0;
      for (int k = -2; k <= 2; ++k) s += noise((x + k + n) % n, y) + noise(x, (y + k + n) % n);
      img(x, y) = s / 10;
    }
  Image rot(n, n, 0.0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) rot(x, y) = img(y, n - 1 - x);

  const RsvResult a = build_rsv_field(img, 1, 0.0);
  const RsvResult b = build_rsv_field(rot, 1, 0.0);
  int compared = 0;
  for (int y = 8; y < n - 8; ++y) {
    for (int x = 8; x < n - 8; ++x) {
      // rot(x, y) = img(y, n-1-x)
      const auto e = a.field.at(y, n - 1 - x);
      const auto f = b.field.at(x, y);
      ASSERT_EQ(e.has_value(), f.has_value());
      if (!e) continue;
      EXPECT_LT(angle_deg(*f, {e->y, -e->x}), 2.0);
      ++compared;
    }
  }
  EXPECT_GT(compared, 500);
}

TEST(RsvFieldTest, RejectsBadThreshold) {
  EXPECT_THROW(build_rsv_field(Image(8, 8), 1, 1.0), std::invalid_argument);
  EXPECT_THROW(build_rsv_field(Image(8, 8), 1, -0.1), std::invalid_argument);
}

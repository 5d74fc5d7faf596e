#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "jsmreg/image.hpp"
#include "jsmreg/image_io.hpp"
#include "jsmreg/interpolate.hpp"
#include "jsmreg/pyramid.hpp"
#include "jsmreg/transform.hpp"
#include "oracles.hpp"

using namespace jsmreg;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("jsmreg_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(ImageTest, RejectsBadData) {
  EXPECT_THROW(Image(2, 2, std::vector<double>{1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(Image(1, 1, std::vector<double>{NAN}), std::invalid_argument);
  EXPECT_THROW(Image(1, 1, std::vector<double>{INFINITY}), std::invalid_argument);
}

TEST(ImageTest, MaskControlsValidity) {
  Image img(3, 2, 0.5);
  EXPECT_TRUE(img.valid(2, 1));
  EXPECT_FALSE(img.valid(3, 1));
  img.set_mask({1, 1, 1, 1, 0, 1});
  EXPECT_FALSE(img.valid(1, 1));
  EXPECT_TRUE(img.valid(2, 1));
  img.set_mask({});
  EXPECT_TRUE(img.valid(1, 1));
}

TEST(ImageTest, Center) {
  const Vec2 c = image_center(256, 200);
  EXPECT_DOUBLE_EQ(c.x, 127.5);
  EXPECT_DOUBLE_EQ(c.y, 99.5);
}

TEST(TransformTest, Identity) {
  const Vec2 p = RigidTransform::identity().apply({10, 20}, {3, 4});
  EXPECT_DOUBLE_EQ(p.x, 10);
  EXPECT_DOUBLE_EQ(p.y, 20);
}

TEST(TransformTest, PureTranslation) {
  const Vec2 p = apply_transform({5, -3, 0}, {0, 0}, {0, 0});
  EXPECT_DOUBLE_EQ(p.x, 5);
  EXPECT_DOUBLE_EQ(p.y, -3);
}

TEST(TransformTest, QuarterTurn) {
  const Vec2 p = apply_transform({0, 0, 90}, {1, 0}, {0, 0});
  EXPECT_NEAR(norm(p), 1.0, 1e-15);
  EXPECT_NEAR(dot(p, {1, 0}), 0.0, 1e-15);
  // x right, y down: +x turns toward +y.
  EXPECT_NEAR(p.y, 1.0, 1e-15);
}

TEST(TransformTest, RoundTripProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 1000; ++i) {
    const RigidTransform t{u(rng), u(rng), u(rng) * 3};
    const Vec2 c{u(rng), u(rng)};
    const Vec2 p{u(rng), u(rng)};
    const Vec2 q = t.inverse().apply(t.apply(p, c), c);
    EXPECT_NEAR(q.x, p.x, 1e-9);
    EXPECT_NEAR(q.y, p.y, 1e-9);
  }
}

TEST(TransformTest, CompositionMatchesSequentialApplication) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int i = 0; i < 200; ++i) {
    const RigidTransform a{u(rng), u(rng), u(rng)};
    const RigidTransform b{u(rng), u(rng), u(rng)};
    const Vec2 c{u(rng), u(rng)};
    const Vec2 p{u(rng), u(rng)};
    const Vec2 seq = a.apply(b.apply(p, c), c);
    const Vec2 comp = a.after(b).apply(p, c);
    EXPECT_NEAR(seq.x, comp.x, 1e-9);
    EXPECT_NEAR(seq.y, comp.y, 1e-9);
  }
}

TEST(TransformTest, PointMapperIsBitIdentical) {
  const RigidTransform t{1.25, -3.5, 7.3};
  const Vec2 c{31.5, 17.5};
  const PointMapper m(t, c);
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) {
      EXPECT_EQ(m({double(x), double(y)}), t.apply({double(x), double(y)}, c));
    }
  }
}

TEST(InterpolateTest, OnGridIsExact) {
  std::mt19937_64 rng(1);
  const Image img = oracle::random_image(rng, 7, 6);
  EXPECT_EQ(*sample_bilinear(img, {3, 4}), img(3, 4));
  EXPECT_EQ(*sample_bilinear(img, {6, 5}), img(6, 5));
  EXPECT_EQ(*sample_bilinear(img, {0, 0}), img(0, 0));
}

TEST(InterpolateTest, Midpoint) {
  const Image img(2, 2, std::vector<double>{0, 1, 0, 1});
  EXPECT_DOUBLE_EQ(*sample_bilinear(img, {0.5, 0.3}), 0.5);
}

TEST(InterpolateTest, OutsideIsAbsent) {
  const Image img(4, 4, 1.0);
  EXPECT_FALSE(sample_bilinear(img, {-0.01, 1}));
  EXPECT_FALSE(sample_bilinear(img, {1, 3.0001}));
  EXPECT_FALSE(sample_nearest(img, {4, 0}));
  EXPECT_TRUE(sample_nearest(img, {3, 3}));
}

TEST(InterpolateTest, MaskedNeighborIsAbsent) {
  Image img(3, 3, 1.0);
  std::vector<std::uint8_t> mask(9, 1);
  mask[4] = 0;
  img.set_mask(mask);
  EXPECT_FALSE(sample_bilinear(img, {0.5, 0.5}));
  // Every stencil on a 3x3 grid touches the center pixel.
  EXPECT_FALSE(sample_bilinear(img, {0, 0}));
  EXPECT_FALSE(sample_bilinear(img, {2, 2}));
  EXPECT_FALSE(sample_nearest(img, {0, 2}));
}

TEST(InterpolateTest, BoundedByNeighborsProperty) {
  std::mt19937_64 rng(2);
  const Image img = oracle::random_image(rng, 9, 8);
  std::uniform_real_distribution<double> ux(0, 8), uy(0, 7);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 p{ux(rng), uy(rng)};
    const auto s = bilinear_stencil(img, p);
    ASSERT_TRUE(s);
    double lo = 1e9, hi = -1e9, wsum = 0;
    for (int k = 0; k < 4; ++k) {
      lo = std::min(lo, img(s->x[k], s->y[k]));
      hi = std::max(hi, img(s->x[k], s->y[k]));
      wsum += s->weight[k];
      EXPECT_GE(s->weight[k], 0.0);
    }
    EXPECT_NEAR(wsum, 1.0, 1e-12);
    const double v = *sample_bilinear(img, p);
    EXPECT_GE(v, lo - 1e-12);
    EXPECT_LE(v, hi + 1e-12);
  }
}

TEST(InterpolateTest, NearestPixelRounds) {
  EXPECT_EQ((*nearest_pixel(5, 5, {1.49, 2.5}))[0], 1);
  EXPECT_EQ((*nearest_pixel(5, 5, {1.49, 2.5}))[1], 3);
}

TEST(UpsampleTest, SameSizeIsIdentity) {
  std::mt19937_64 rng(3);
  const Image img = oracle::random_image(rng, 5, 4);
  const Image up = upsample_to(img, 5, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 5; ++x) EXPECT_EQ(up(x, y), img(x, y));
}

TEST(UpsampleTest, ConstantStaysConstant) {
  const Image up = upsample_to(Image(3, 3, 0.25), 11, 7);
  EXPECT_EQ(up.width(), 11);
  EXPECT_EQ(up.height(), 7);
  for (double v : up.pixels()) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(UpsampleTest, TwoByTwoToThreeByThree) {
  const Image img(2, 2, std::vector<double>{0.0, 1.0, 2.0, 5.0});
  const Image up = upsample_to(img, 3, 3);
  EXPECT_DOUBLE_EQ(up(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(up(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(up(2, 2), 5.0);
}

TEST(UpsampleTest, RejectsShrinking) {
  EXPECT_THROW(upsample_to(Image(4, 4), 3, 4), std::invalid_argument);
  EXPECT_THROW(upsample_to(Image(), 3, 4), std::invalid_argument);
}

TEST(PyramidTest, ConstantImage) {
  const GaussianPyramid p = build_pyramid(Image(128, 128, 0.7), 3);
  ASSERT_EQ(p.size(), 3);
  for (const Image& l : p.levels)
    for (double v : l.pixels()) EXPECT_NEAR(v, 0.7, 1e-15);
}

TEST(PyramidTest, LevelSizes) {
  const GaussianPyramid p = build_pyramid(Image(256, 256, 0.0), 3);
  ASSERT_EQ(p.size(), 3);
  EXPECT_EQ(p.level(1).width(), 128);
  EXPECT_EQ(p.level(2).width(), 64);
  EXPECT_EQ(p.level(2).height(), 64);
  EXPECT_EQ(decimate(Image(7, 5)).width(), 4);
  EXPECT_EQ(decimate(Image(7, 5)).height(), 3);
}

TEST(PyramidTest, DepthIsClampedAndDefaulted) {
  EXPECT_EQ(build_pyramid(Image(64, 64), 4).size(), 2);
  EXPECT_EQ(build_pyramid(Image(20, 20), 3).size(), 1);
  EXPECT_EQ(default_pyramid_levels(256, 256), 4);
  EXPECT_EQ(default_pyramid_levels(400, 300), 4);
  EXPECT_EQ(default_pyramid_levels(64, 100), 2);
  EXPECT_EQ(default_pyramid_levels(16, 16), 1);
  EXPECT_THROW(build_pyramid(Image(), 2), std::invalid_argument);
  EXPECT_THROW(build_pyramid(Image(8, 8), 0), std::invalid_argument);
}

TEST(PyramidTest, ImpulseResponseIsBinomialOuterProduct) {
  Image img(64, 64, 0.0);
  img(20, 20) = 1.0;
  const GaussianPyramid p = build_pyramid(img, 2);
  const Image& l1 = p.level(1);
  const double k[] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  for (int j = 0; j < l1.height(); ++j) {
    for (int i = 0; i < l1.width(); ++i) {
      const int dx = 2 * i - 20, dy = 2 * j - 20;
      const double expected =
          (std::abs(dx) <= 2 && std::abs(dy) <= 2) ? k[dx + 2] * k[dy + 2] : 0.0;
      EXPECT_NEAR(l1(i, j), expected, 1e-15) << i << "," << j;
    }
  }
  EXPECT_NEAR(l1(10, 10), 36.0 / 256, 1e-15);
}

TEST(PyramidTest, MeanApproximatelyPreserved) {
  std::mt19937_64 rng(4);
  const GaussianPyramid p = build_pyramid(oracle::random_image(rng, 256, 256), 4);
  for (int k = 1; k < p.size(); ++k) {
    EXPECT_NEAR(p.level(k).mean(), p.level(k - 1).mean(), 1e-3);
  }
}

TEST(PyramidTest, MaskPropagates) {
  Image img(64, 64, 0.5);
  std::vector<std::uint8_t> mask(64 * 64, 1);
  mask[10 * 64 + 10] = 0;
  img.set_mask(mask);
  const GaussianPyramid p = build_pyramid(img, 2);
  EXPECT_TRUE(p.level(1).has_mask());
  EXPECT_FALSE(p.level(1).valid(5, 5));
  EXPECT_TRUE(p.level(1).valid(20, 20));
}

TEST(ImageIoTest, PgmRoundTrip) {
  Gray8 g{5, 3, {}};
  for (int i = 0; i < 15; ++i) g.data.push_back(static_cast<std::uint8_t>(i * 17));
  const auto path = temp_path("rt.pgm");
  write_pgm8(path, g);
  const Gray8 back = read_pgm8(path);
  EXPECT_EQ(back.width, 5);
  EXPECT_EQ(back.height, 3);
  EXPECT_EQ(back.data, g.data);
  std::filesystem::remove(path);
}

TEST(ImageIoTest, PngRoundTripThroughImage) {
  std::mt19937_64 rng(5);
  Gray8 g{9, 4, {}};
  for (int i = 0; i < 36; ++i) g.data.push_back(static_cast<std::uint8_t>(rng() & 0xff));
  const auto path = temp_path("rt.png");
  write_image(path, to_image(g));
  const Gray8 back = to_gray8(read_image(path));
  EXPECT_EQ(back.data, g.data);
  std::filesystem::remove(path);
}

TEST(ImageIoTest, PgmWithCommentAndSixteenBit) {
  const auto path = temp_path("c.pgm");
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n# comment\n2 1\n65535\n";
    const unsigned char px[] = {0xff, 0xff, 0x00, 0x00};
    out.write(reinterpret_cast<const char*>(px), 4);
  }
  const Gray8 g = read_pgm8(path);
  ASSERT_EQ(g.data.size(), 2u);
  EXPECT_EQ(g.data[0], 255);
  EXPECT_EQ(g.data[1], 0);
  std::filesystem::remove(path);
}

TEST(ImageIoTest, RejectsMalformed) {
  const auto path = temp_path("bad.pgm");
  {
    std::ofstream out(path, std::ios::binary);
    out << "P2\n2 2\n255\n1 2 3 4\n";
  }
  EXPECT_THROW(read_pgm8(path), std::runtime_error);
  EXPECT_THROW(read_image(temp_path("missing.png")), std::runtime_error);
  std::filesystem::remove(path);
}

TEST(ImageIoTest, Normalization) {
  const Gray8 g = to_gray8_normalized(Image(3, 1, std::vector<double>{2, 4, 6}));
  EXPECT_EQ(g.data, (std::vector<std::uint8_t>{0, 128, 255}));
  const Gray8 c = to_gray8_normalized(Image(2, 2, 3.0));
  for (auto v : c.data) EXPECT_EQ(v, 128);
}

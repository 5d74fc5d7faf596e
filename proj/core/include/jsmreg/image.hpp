#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace jsmreg {

/// Continuous 2D point or direction in pixel coordinates.
///
/// Pixel coordinates: x grows to the right (columns), y grows downward
/// (rows), and integer coordinates address pixel centers.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

double dot(Vec2 a, Vec2 b);
double norm(Vec2 a);

/// Row-major grayscale raster of finite doubles, usually in [0, 1].
///
/// An image may carry a validity mask. Masked-out pixels hold a value but are
/// not part of the image's valid domain: samplers treat them as absent.
class Image {
 public:
  Image() = default;
  Image(int width, int height, double fill = 0.0);
  /// Throws std::invalid_argument if the size does not match or a value is
  /// not finite.
  Image(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  std::size_t size() const { return data_.size(); }

  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  double operator()(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  double& operator()(int x, int y) {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const double> pixels() const { return data_; }
  std::span<double> pixels() { return data_; }

  bool has_mask() const { return !mask_.empty(); }
  /// True when (x, y) is in bounds and not masked out.
  bool valid(int x, int y) const {
    return contains(x, y) &&
           (mask_.empty() ||
            mask_[static_cast<std::size_t>(y) * width_ + x] != 0);
  }
  /// Nonzero entries mark valid pixels. An empty vector clears the mask.
  void set_mask(std::vector<std::uint8_t> mask);
  std::span<const std::uint8_t> mask() const { return mask_; }

  double min() const;
  double max() const;
  double mean() const;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
  std::vector<std::uint8_t> mask_;
};

/// The continuous image center ((w - 1) / 2, (h - 1) / 2), used as the
/// rotation center for every rigid transform.
Vec2 image_center(const Image& img);
Vec2 image_center(int width, int height);

/// Mirrored index for filter borders: -1 -> 1, n -> n - 2.
int mirror_index(int i, int n);

}  // namespace jsmreg

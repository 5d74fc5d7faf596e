#include "jsmreg/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jsmreg {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Image::Image(int width, int height, double fill) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("Image: negative dimensions");
  }
  if (!std::isfinite(fill)) {
    throw std::invalid_argument("Image: non-finite fill value");
  }
  width_ = width;
  height_ = height;
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Image::Image(int width, int height, std::vector<double> data) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("Image: negative dimensions");
  }
  if (data.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("Image: data length " +
                                std::to_string(data.size()) +
                                " does not match " + std::to_string(width) +
                                "x" + std::to_string(height));
  }
  if (!std::all_of(data.begin(), data.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("Image: non-finite intensity");
  }
  width_ = width;
  height_ = height;
  data_ = std::move(data);
}

void Image::set_mask(std::vector<std::uint8_t> mask) {
  if (!mask.empty() && mask.size() != data_.size()) {
    throw std::invalid_argument("Image: mask size does not match image");
  }
  mask_ = std::move(mask);
}

double Image::min() const {
  if (data_.empty()) return 0.0;
  return *std::min_element(data_.begin(), data_.end());
}

double Image::max() const {
  if (data_.empty()) return 0.0;
  return *std::max_element(data_.begin(), data_.end());
}

double Image::mean() const {
  if (data_.empty()) return 0.0;
  return std::accumulate(data_.begin(), data_.end(), 0.0) /
         static_cast<double>(data_.size());
}

Vec2 image_center(int width, int height) {
  return {(width - 1) / 2.0, (height - 1) / 2.0};
}

Vec2 image_center(const Image& img) {
  return image_center(img.width(), img.height());
}

int mirror_index(int i, int n) {
  if (n <= 1) return 0;
  const int period = 2 * (n - 1);
  i = i % period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace jsmreg

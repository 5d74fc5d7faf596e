#include "jsmreg/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jsmreg {

namespace {

bool in_domain(int width, int height, Vec2 p) {
  return p.x >= 0.0 && p.y >= 0.0 && p.x <= width - 1 && p.y <= height - 1;
}

}  // namespace

std::optional<BilinearStencil> bilinear_stencil(int w, int h, Vec2 p) {
  if (w <= 0 || h <= 0 || !in_domain(w, h, p)) return std::nullopt;

  const int x0 = std::min(static_cast<int>(std::floor(p.x)), std::max(w - 2, 0));
  const int y0 = std::min(static_cast<int>(std::floor(p.y)), std::max(h - 2, 0));
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x1 == x0 ? 0.0 : p.x - x0;
  const double fy = y1 == y0 ? 0.0 : p.y - y0;

  BilinearStencil s;
  s.x = {x0, x1, x0, x1};
  s.y = {y0, y0, y1, y1};
  s.weight = {(1.0 - fx) * (1.0 - fy), fx * (1.0 - fy), (1.0 - fx) * fy,
              fx * fy};
  return s;
}

std::optional<BilinearStencil> bilinear_stencil(const Image& img, Vec2 p) {
  auto s = bilinear_stencil(img.width(), img.height(), p);
  if (s && img.has_mask()) {
    for (int i = 0; i < 4; ++i) {
      if (!img.valid(s->x[i], s->y[i])) return std::nullopt;
    }
  }
  return s;
}

std::optional<double> sample_bilinear(const Image& img, Vec2 p) {
  const auto s = bilinear_stencil(img, p);
  if (!s) return std::nullopt;
  double v = 0.0;
  for (int i = 0; i < 4; ++i) v += s->weight[i] * img(s->x[i], s->y[i]);
  return v;
}

std::optional<std::array<int, 2>> nearest_pixel(int width, int height, Vec2 p) {
  if (width <= 0 || height <= 0 || !in_domain(width, height, p)) {
    return std::nullopt;
  }
  const int x = std::clamp(static_cast<int>(std::lround(p.x)), 0, width - 1);
  const int y = std::clamp(static_cast<int>(std::lround(p.y)), 0, height - 1);
  return std::array<int, 2>{x, y};
}

std::optional<double> sample_nearest(const Image& img, Vec2 p) {
  // Same domain as bilinear sampling, so both modes see the same overlap.
  if (!bilinear_stencil(img, p)) return std::nullopt;
  const auto px = nearest_pixel(img.width(), img.height(), p);
  return img((*px)[0], (*px)[1]);
}

Image upsample_to(const Image& img, int target_w, int target_h) {
  if (img.empty()) throw std::invalid_argument("upsample_to: empty image");
  if (target_w < img.width() || target_h < img.height()) {
    throw std::invalid_argument("upsample_to: target smaller than source");
  }
  const double sx =
      target_w > 1 ? static_cast<double>(img.width() - 1) / (target_w - 1) : 0.0;
  const double sy =
      target_h > 1 ? static_cast<double>(img.height() - 1) / (target_h - 1) : 0.0;

  Image out(target_w, target_h);
  for (int y = 0; y < target_h; ++y) {
    const double py = y * sy;
    const int y0 = std::min(static_cast<int>(py), img.height() - 1);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double fy = py - y0;
    for (int x = 0; x < target_w; ++x) {
      const double px = x * sx;
      const int x0 = std::min(static_cast<int>(px), img.width() - 1);
      const int x1 = std::min(x0 + 1, img.width() - 1);
      const double fx = px - x0;
      out(x, y) = (1 - fx) * (1 - fy) * img(x0, y0) + fx * (1 - fy) * img(x1, y0) +
                  (1 - fx) * fy * img(x0, y1) + fx * fy * img(x1, y1);
    }
  }
  return out;
}

}  // namespace jsmreg

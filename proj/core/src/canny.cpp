#include "jsmreg/canny.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jsmreg/interpolate.hpp"

namespace jsmreg {

std::size_t EdgeMap::count() const {
  return static_cast<std::size_t>(std::count(edges.begin(), edges.end(), 1));
}

Image gaussian_blur(const Image& img, double sigma) {
  if (!(sigma > 0.0)) return img;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;

  const int w = img.width();
  const int h = img.height();
  Image tmp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += k[i + radius] * img(mirror_index(x + i, w), y);
      tmp(x, y) = acc;
    }
  }
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) acc += k[i + radius] * tmp(x, mirror_index(y + i, h));
      out(x, y) = acc;
    }
  }
  return out;
}

namespace {

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  const auto idx = static_cast<std::size_t>(
      std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1));
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(idx),
                   values.end());
  return values[idx];
}

}  // namespace

EdgeMap canny(const Image& img, const CannyParams& params) {
  EdgeMap out;
  out.width = img.width();
  out.height = img.height();
  out.edges.assign(img.size(), 0);
  if (img.empty()) return out;

  const Image s = gaussian_blur(img, params.sigma);
  const int w = img.width();
  const int h = img.height();
  auto at = [&](int x, int y) { return s(mirror_index(x, w), mirror_index(y, h)); };

  std::vector<double> mag(img.size());
  std::vector<std::uint8_t> dir(img.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (at(x + 1, y - 1) + 2 * at(x + 1, y) + at(x + 1, y + 1)) -
                        (at(x - 1, y - 1) + 2 * at(x - 1, y) + at(x - 1, y + 1));
      const double gy = (at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1)) -
                        (at(x - 1, y - 1) + 2 * at(x, y - 1) + at(x + 1, y - 1));
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      mag[i] = std::hypot(gx, gy);
      double angle = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
      if (angle < 0) angle += 180.0;
      dir[i] = angle < 22.5 || angle >= 157.5 ? 0 : angle < 67.5 ? 1 : angle < 112.5 ? 2 : 3;
    }
  }

  const double low = percentile(mag, params.low_percentile);
  const double high = percentile(mag, params.high_percentile);

  // Non-maximum suppression along the quantized gradient direction.
  static constexpr int kStep[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};
  std::vector<double> thin(img.size(), 0.0);
  auto mag_at = [&](int x, int y) {
    return img.contains(x, y) ? mag[static_cast<std::size_t>(y) * w + x] : 0.0;
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double m = mag[i];
      if (m <= 0.0) continue;
      const auto& d = kStep[dir[i]];
      if (m >= mag_at(x + d[0], y + d[1]) && m > mag_at(x - d[0], y - d[1])) thin[i] = m;
    }
  }

  // Hysteresis: strong pixels seed, weak pixels join when 8-connected.
  std::vector<int> stack;
  for (std::size_t i = 0; i < thin.size(); ++i) {
    if (thin[i] > 0.0 && thin[i] >= high) {
      out.edges[i] = 1;
      stack.push_back(static_cast<int>(i));
    }
  }
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    const int x = i % w;
    const int y = i / w;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (!img.contains(x + dx, y + dy)) continue;
        const std::size_t j = static_cast<std::size_t>(y + dy) * w + (x + dx);
        if (!out.edges[j] && thin[j] > 0.0 && thin[j] >= low) {
          out.edges[j] = 1;
          stack.push_back(static_cast<int>(j));
        }
      }
    }
  }
  return out;
}

double edge_agreement(const EdgeMap& a, const EdgeMap& b, int radius) {
  if (a.width != b.width || a.height != b.height) {
    throw std::invalid_argument("edge_agreement: size mismatch");
  }
  std::size_t total = 0;
  std::size_t matched = 0;
  for (int y = 0; y < a.height; ++y) {
    for (int x = 0; x < a.width; ++x) {
      if (!a.at(x, y)) continue;
      ++total;
      bool found = false;
      for (int dy = -radius; dy <= radius && !found; ++dy) {
        for (int dx = -radius; dx <= radius && !found; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          found = nx >= 0 && ny >= 0 && nx < b.width && ny < b.height && b.at(nx, ny);
        }
      }
      if (found) ++matched;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
}

Image resample_onto(const Image& ref, const Image& flt, const RigidTransform& t) {
  Image out(ref.width(), ref.height());
  std::vector<std::uint8_t> mask(ref.size(), 1);
  bool any_missing = false;
  const PointMapper map(t, image_center(ref));
  for (int y = 0; y < ref.height(); ++y) {
    for (int x = 0; x < ref.width(); ++x) {
      if (const auto v = sample_bilinear(flt, map({double(x), double(y)}))) {
        out(x, y) = *v;
      } else {
        mask[static_cast<std::size_t>(y) * ref.width() + x] = 0;
        any_missing = true;
      }
    }
  }
  if (any_missing) out.set_mask(std::move(mask));
  return out;
}

Overlay export_overlay(const Image& ref, const Image& flt, const RigidTransform& t) {
  const Image moved = resample_onto(ref, flt, t);
  Overlay o;
  o.reference_edges = canny(ref);
  o.floating_edges = canny(moved);
  // Drop floating edges induced by the overlap boundary.
  if (moved.has_mask()) {
    for (int y = 0; y < moved.height(); ++y) {
      for (int x = 0; x < moved.width(); ++x) {
        bool near_missing = false;
        for (int dy = -2; dy <= 2 && !near_missing; ++dy) {
          for (int dx = -2; dx <= 2 && !near_missing; ++dx) {
            near_missing = moved.contains(x + dx, y + dy) && !moved.valid(x + dx, y + dy);
          }
        }
        if (near_missing) {
          o.floating_edges.edges[static_cast<std::size_t>(y) * moved.width() + x] = 0;
        }
      }
    }
  }

  o.image = RgbImage(ref.width(), ref.height());
  for (int y = 0; y < ref.height(); ++y) {
    for (int x = 0; x < ref.width(); ++x) {
      std::uint8_t* px = o.image.at(x, y);
      const auto gray = static_cast<std::uint8_t>(
          std::lround(0.6 * 255.0 * std::clamp(ref(x, y), 0.0, 1.0)));
      const bool red = o.reference_edges.at(x, y);
      const bool green = o.floating_edges.at(x, y);
      if (red || green) {
        px[0] = red ? 255 : 0;
        px[1] = green ? 255 : 0;
        px[2] = 0;
      } else {
        px[0] = px[1] = px[2] = gray;
      }
    }
  }
  return o;
}

}  // namespace jsmreg

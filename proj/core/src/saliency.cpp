#include "jsmreg/saliency.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "jsmreg/interpolate.hpp"

namespace jsmreg {

SaliencyMap::SaliencyMap(Image values) : values_(std::move(values)) {}

RsvField::RsvField(int width, int height)
    : width_(width),
      height_(height),
      dirs_(static_cast<std::size_t>(width) * height),
      valid_(static_cast<std::size_t>(width) * height, 0) {}

void RsvField::set(int x, int y, Vec2 dir) {
  const std::size_t i = static_cast<std::size_t>(y) * width_ + x;
  dirs_[i] = dir;
  valid_[i] = 1;
}

void RsvField::clear(int x, int y) {
  const std::size_t i = static_cast<std::size_t>(y) * width_ + x;
  dirs_[i] = {};
  valid_[i] = 0;
}

std::size_t RsvField::valid_count() const {
  return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), 1));
}

SaliencyMap local_saliency(const Image& img) {
  if (img.empty()) throw std::invalid_argument("local_saliency: empty image");
  const int w = img.width();
  const int h = img.height();
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double c = img(x, y);
      double acc = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if ((dx == 0 && dy == 0) || !img.contains(x + dx, y + dy)) continue;
          const double d = c - img(x + dx, y + dy);
          acc += d * d;
        }
      }
      out(x, y) = acc;
    }
  }
  return SaliencyMap(std::move(out));
}

SaliencyMap multiscale_saliency(const GaussianPyramid& pyr) {
  if (pyr.levels.empty()) {
    throw std::invalid_argument("multiscale_saliency: empty pyramid");
  }
  const int w = pyr.finest().width();
  const int h = pyr.finest().height();
  Image sum = local_saliency(pyr.finest()).values();
  for (int k = 1; k < pyr.size(); ++k) {
    const Image up = upsample_to(local_saliency(pyr.level(k)).values(), w, h);
    auto dst = sum.pixels();
    const auto src = up.pixels();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  return SaliencyMap(std::move(sum));
}

std::vector<std::array<int, 2>> disc_offsets(double radius) {
  std::vector<std::array<int, 2>> out;
  const int r = static_cast<int>(std::floor(radius));
  const double r2 = radius * radius;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx * dx + dy * dy <= r2) out.push_back({dx, dy});
    }
  }
  return out;
}

namespace {

const std::vector<std::array<int, 2>>& inertia_disc() {
  static const std::vector<std::array<int, 2>> disc = disc_offsets(kInertiaRadius);
  return disc;
}

}  // namespace

SymMat2 inertia_matrix(const SaliencyMap& s, int x, int y) {
  const Image& img = s.values();
  if (!img.contains(x, y)) {
    throw std::out_of_range("inertia_matrix: pixel out of bounds");
  }
  // Moments in disc-local coordinates (offsets from the center pixel).
  double m00 = 0.0;
  double m10 = 0.0;
  double m01 = 0.0;
  for (const auto& [dx, dy] : inertia_disc()) {
    if (!img.contains(x + dx, y + dy)) continue;
    const double v = img(x + dx, y + dy);
    m00 += v;
    m10 += dx * v;
    m01 += dy * v;
  }
  if (m00 == 0.0) return {};
  const double gx = m10 / m00;
  const double gy = m01 / m00;

  SymMat2 m;
  for (const auto& [dx, dy] : inertia_disc()) {
    if (!img.contains(x + dx, y + dy)) continue;
    const double v = img(x + dx, y + dy);
    const double cx = dx - gx;
    const double cy = dy - gy;
    m.xx += cx * cx * v;
    m.xy += cx * cy * v;
    m.yy += cy * cy * v;
  }
  return m;
}

std::optional<Vec2> rsv(const SymMat2& m) {
  if (m.is_zero()) return std::nullopt;
  const double half_trace = 0.5 * (m.xx + m.yy);
  const double half_diff = 0.5 * (m.xx - m.yy);
  const double radius = std::hypot(half_diff, m.xy);
  const double lmax = half_trace + radius;
  const double lmin = half_trace - radius;
  const double scale = std::max(std::abs(lmax), std::abs(lmin));
  if (lmax - lmin <= kIsotropyTolerance * scale) return std::nullopt;

  // Two algebraically equivalent eigenvector forms; take the larger one for
  // numerical stability.
  const Vec2 a{lmax - m.yy, m.xy};
  const Vec2 b{m.xy, lmax - m.xx};
  Vec2 e = norm(a) >= norm(b) ? a : b;
  const double n = norm(e);
  e = {e.x / n, e.y / n};
  if (e.x < 0.0 || (e.x == 0.0 && e.y < 0.0)) e = {-e.x, -e.y};
  return e;
}

RsvResult build_rsv_field(const Image& img, int pyramid_levels,
                          double threshold_fraction) {
  if (img.empty()) throw std::invalid_argument("build_rsv_field: empty image");
  if (!(threshold_fraction >= 0.0 && threshold_fraction < 1.0)) {
    throw std::invalid_argument("build_rsv_field: threshold must be in [0, 1)");
  }
  RsvResult out{multiscale_saliency(build_pyramid(img, pyramid_levels)),
                RsvField(img.width(), img.height())};
  const double smax = out.saliency.max();
  if (smax <= 0.0) return out;
  const double cutoff = threshold_fraction * smax;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (out.saliency(x, y) < cutoff || out.saliency(x, y) <= 0.0) continue;
      if (const auto dir = rsv(inertia_matrix(out.saliency, x, y))) {
        out.field.set(x, y, *dir);
      }
    }
  }
  return out;
}

}  // namespace jsmreg

#include "jsmreg/pyramid.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace jsmreg {

namespace {

constexpr std::array<double, 5> kBinomial = {1.0 / 16, 4.0 / 16, 6.0 / 16,
                                             4.0 / 16, 1.0 / 16};

int half_up(int n) { return (n + 1) / 2; }

// A coarse pixel is valid when every in-bounds fine pixel under the kernel
// footprint is valid.
std::vector<std::uint8_t> decimate_mask(const Image& fine) {
  const int cw = half_up(fine.width());
  const int ch = half_up(fine.height());
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(cw) * ch, 1);
  for (int y = 0; y < ch; ++y) {
    for (int x = 0; x < cw; ++x) {
      bool ok = true;
      for (int dy = -2; dy <= 2 && ok; ++dy) {
        for (int dx = -2; dx <= 2 && ok; ++dx) {
          const int fx = 2 * x + dx;
          const int fy = 2 * y + dy;
          if (fine.contains(fx, fy) && !fine.valid(fx, fy)) ok = false;
        }
      }
      mask[static_cast<std::size_t>(y) * cw + x] = ok ? 1 : 0;
    }
  }
  return mask;
}

}  // namespace

int default_pyramid_levels(int width, int height) {
  int levels = 1;
  int w = width;
  int h = height;
  while (levels < kMaxPyramidLevels) {
    const int nw = half_up(w);
    const int nh = half_up(h);
    if (std::min(nw, nh) < kMinPyramidSide) break;
    w = nw;
    h = nh;
    ++levels;
  }
  return levels;
}

Image smooth_binomial(const Image& img) {
  const int w = img.width();
  const int h = img.height();
  Image tmp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) {
        acc += kBinomial[k + 2] * img(mirror_index(x + k, w), y);
      }
      tmp(x, y) = acc;
    }
  }
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) {
        acc += kBinomial[k + 2] * tmp(x, mirror_index(y + k, h));
      }
      out(x, y) = acc;
    }
  }
  return out;
}

Image decimate(const Image& img) {
  const int cw = half_up(img.width());
  const int ch = half_up(img.height());
  Image out(cw, ch);
  for (int y = 0; y < ch; ++y) {
    for (int x = 0; x < cw; ++x) out(x, y) = img(2 * x, 2 * y);
  }
  return out;
}

GaussianPyramid build_pyramid(const Image& img, int num_levels) {
  if (img.empty()) throw std::invalid_argument("build_pyramid: empty image");
  if (num_levels < 1) {
    throw std::invalid_argument("build_pyramid: num_levels must be >= 1");
  }
  num_levels = std::min(num_levels, [&] {
    int levels = 1;
    int w = img.width();
    int h = img.height();
    while (std::min(half_up(w), half_up(h)) >= kMinPyramidSide) {
      w = half_up(w);
      h = half_up(h);
      ++levels;
    }
    return levels;
  }());

  GaussianPyramid pyr;
  pyr.levels.reserve(num_levels);
  pyr.levels.push_back(img);
  for (int k = 1; k < num_levels; ++k) {
    const Image& prev = pyr.levels.back();
    Image next = decimate(smooth_binomial(prev));
    if (prev.has_mask()) next.set_mask(decimate_mask(prev));
    pyr.levels.push_back(std::move(next));
  }
  return pyr;
}

}  // namespace jsmreg

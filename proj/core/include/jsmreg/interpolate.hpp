#pragma once

#include <array>
#include <optional>

#include "jsmreg/image.hpp"

namespace jsmreg {

/// Four grid neighbors of a continuous position and their bilinear
/// coefficients. Coefficients are non-negative and sum to 1.
///
/// Neighbor order: (x0, y0), (x1, y0), (x0, y1), (x1, y1).
struct BilinearStencil {
  std::array<int, 4> x{};
  std::array<int, 4> y{};
  std::array<double, 4> weight{};
};

/// Stencil for p, or nullopt when p lies outside [0, w-1] x [0, h-1] or any
/// neighbor is masked out. Positions on the last row/column use a zero-weight
/// neighbor inside the image so that on-grid border points remain valid.
std::optional<BilinearStencil> bilinear_stencil(const Image& img, Vec2 p);

/// Stencil over a bare width x height grid (no mask).
std::optional<BilinearStencil> bilinear_stencil(int width, int height, Vec2 p);

std::optional<double> sample_bilinear(const Image& img, Vec2 p);

/// Nearest grid pixel value over the same domain as sample_bilinear.
std::optional<double> sample_nearest(const Image& img, Vec2 p);

/// Nearest grid pixel index (x, y) for p, over the same domain.
std::optional<std::array<int, 2>> nearest_pixel(int width, int height, Vec2 p);

/// Bilinear magnification with corner-aligned coordinates:
/// target (0, 0) maps to source (0, 0) and target (tw-1, th-1) maps to
/// source (w-1, h-1). Throws std::invalid_argument when the target is smaller
/// than the source or the source is empty.
Image upsample_to(const Image& img, int target_w, int target_h);

}  // namespace jsmreg

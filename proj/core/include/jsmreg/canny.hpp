#pragma once

#include <cstdint>
#include <vector>

#include "jsmreg/image.hpp"
#include "jsmreg/image_io.hpp"
#include "jsmreg/transform.hpp"

namespace jsmreg {

struct EdgeMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> edges;

  bool at(int x, int y) const {
    return edges[static_cast<std::size_t>(y) * width + x] != 0;
  }
  std::size_t count() const;
};

struct CannyParams {
  double sigma = 1.0;
  double low_percentile = 0.70;
  double high_percentile = 0.90;
};

/// Separable Gaussian blur, radius ceil(3 sigma), mirrored borders.
Image gaussian_blur(const Image& img, double sigma);

/// Gaussian smoothing, Sobel gradients, non-maximum suppression, hysteresis
/// with thresholds at percentiles of the gradient magnitude. Pixels with zero
/// gradient are never edges.
EdgeMap canny(const Image& img, const CannyParams& params = {});

/// Fraction of edges in `a` that have an edge in `b` within Chebyshev
/// distance `radius`. 0 when `a` has no edges.
double edge_agreement(const EdgeMap& a, const EdgeMap& b, int radius = 1);

struct Overlay {
  RgbImage image;
  EdgeMap reference_edges;
  EdgeMap floating_edges;  // edges of the floating image resampled onto ref
};

/// Reference edges in red, resampled floating edges in green (coincident
/// edges become yellow) over the dimmed reference. Floating pixels outside
/// the overlap are black and carry no edges.
Overlay export_overlay(const Image& ref, const Image& flt, const RigidTransform& t);

/// The floating image resampled onto the reference grid under t; absent
/// samples are 0 and masked out.
Image resample_onto(const Image& ref, const Image& flt, const RigidTransform& t);

}  // namespace jsmreg

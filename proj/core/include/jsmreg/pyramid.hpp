#pragma once

#include <vector>

#include "jsmreg/image.hpp"

namespace jsmreg {

/// Coarse-to-fine image stack. Level 0 is the input; level k+1 is level k
/// smoothed by the separable binomial kernel [1 4 6 4 1]/16 (mirrored borders)
/// and decimated by 2, keeping even rows and columns. Level k pixel (i, j)
/// therefore sits at level 0 position (2^k i, 2^k j).
struct GaussianPyramid {
  std::vector<Image> levels;

  int size() const { return static_cast<int>(levels.size()); }
  const Image& level(int k) const { return levels.at(k); }
  const Image& finest() const { return levels.front(); }
  const Image& coarsest() const { return levels.back(); }
};

inline constexpr int kMinPyramidSide = 32;
inline constexpr int kMaxPyramidLevels = 4;

/// Largest depth whose coarsest level keeps the short side >= 32 px,
/// capped at 4. Always at least 1.
int default_pyramid_levels(int width, int height);

/// Builds up to num_levels levels, clamped so the coarsest level stays
/// >= 32 px on each side (a single level is always kept). Throws
/// std::invalid_argument on an empty image or num_levels < 1.
GaussianPyramid build_pyramid(const Image& img, int num_levels);

/// One smoothing pass with the 5-tap binomial kernel, mirrored borders.
Image smooth_binomial(const Image& img);

/// Keeps even rows and columns; output is ceil(w/2) x ceil(h/2).
Image decimate(const Image& img);

}  // namespace jsmreg

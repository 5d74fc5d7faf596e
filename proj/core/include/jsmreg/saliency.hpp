#pragma once

#include <array>
#include <optional>
#include <vector>

#include "jsmreg/image.hpp"
#include "jsmreg/pyramid.hpp"

namespace jsmreg {

/// Non-negative per-pixel intensity-contrast saliency, same grid as its source.
class SaliencyMap {
 public:
  SaliencyMap() = default;
  explicit SaliencyMap(Image values);

  int width() const { return values_.width(); }
  int height() const { return values_.height(); }
  double operator()(int x, int y) const { return values_(x, y); }
  const Image& values() const { return values_; }
  double max() const { return values_.max(); }

 private:
  Image values_;
};

/// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct SymMat2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  bool is_zero() const { return xx == 0.0 && xy == 0.0 && yy == 0.0; }
  friend bool operator==(const SymMat2&, const SymMat2&) = default;
};

/// Per-pixel regional saliency vectors. Valid entries are unit vectors in
/// canonical sign (first nonzero component positive).
class RsvField {
 public:
  RsvField() = default;
  RsvField(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  std::optional<Vec2> at(int x, int y) const {
    const std::size_t i = static_cast<std::size_t>(y) * width_ + x;
    if (!valid_[i]) return std::nullopt;
    return dirs_[i];
  }
  bool valid(int x, int y) const {
    return valid_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, Vec2 dir);
  void clear(int x, int y);
  std::size_t valid_count() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Vec2> dirs_;
  std::vector<std::uint8_t> valid_;
};

/// Radius of the neighborhood used for the inertia matrix.
inline constexpr double kInertiaRadius = 5.5;
/// Relative eigenvalue gap below which a matrix counts as isotropic.
inline constexpr double kIsotropyTolerance = 1e-6;
inline constexpr double kDefaultSaliencyThreshold = 0.1;

/// S(v) = sum over the 8-connected neighbors u of (I(v) - I(u))^2.
/// Border pixels use only their in-bounds neighbors.
SaliencyMap local_saliency(const Image& img);

/// Local saliency at every pyramid level, each upsampled to level-0 size and
/// summed (raw amplitudes, no per-level rescaling).
SaliencyMap multiscale_saliency(const GaussianPyramid& pyr);

/// Offsets (dx, dy) with dx^2 + dy^2 <= r^2, in row-major order.
std::vector<std::array<int, 2>> disc_offsets(double radius);

/// Central second moments of the saliency mass in the 5.5 px disc around
/// (x, y), clipped to the image. Zero matrix when the disc holds no mass.
SymMat2 inertia_matrix(const SaliencyMap& s, int x, int y);

/// Unit eigenvector of the larger eigenvalue, canonical sign. nullopt for the
/// zero matrix or when the eigenvalues agree within kIsotropyTolerance
/// relative to the larger magnitude.
std::optional<Vec2> rsv(const SymMat2& m);

struct RsvResult {
  SaliencyMap saliency;
  RsvField field;
};

/// Multiscale saliency over a pyramid of the given depth, then the RSV of every
/// pixel whose saliency is >= threshold_fraction * max. Pixels below the
/// threshold are invalid without eigen-analysis.
RsvResult build_rsv_field(const Image& img, int pyramid_levels,
                          double threshold_fraction = kDefaultSaliencyThreshold);

}  // namespace jsmreg

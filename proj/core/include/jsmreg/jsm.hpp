#pragma once

#include <cstdint>
#include <vector>

#include "jsmreg/image.hpp"
#include "jsmreg/saliency.hpp"
#include "jsmreg/transform.hpp"

namespace jsmreg {

/// How a negative RSV cosine becomes a weight.
enum class CosinePolicy {
  kAbsolute,       // w = |cos|
  kClampNegative,  // w = max(cos, 0)
};

/// How the floating RSV is looked up at a non-grid position.
enum class RsvLookup {
  kNearest,         // RSV of the nearest floating pixel
  kBilinearWeight,  // weights against the 4 neighbors, blended bilinearly
};

/// Per-pixel weights in [0, 1] on the reference grid, plus the overlap mask
/// under the transform the map was built for. Weights are 0 outside the
/// overlap.
class JointSaliencyMap {
 public:
  JointSaliencyMap() = default;
  /// float_width/float_height: extent of the floating image the reference
  /// grid was mapped into.
  JointSaliencyMap(int width, int height, int float_width, int float_height);

  int width() const { return width_; }
  int height() const { return height_; }
  int float_width() const { return float_width_; }
  int float_height() const { return float_height_; }

  double weight(int x, int y) const {
    return weights_[static_cast<std::size_t>(y) * width_ + x];
  }
  bool in_overlap(int x, int y) const {
    return overlap_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  /// Setting a weight marks the pixel as part of the overlap. Values are
  /// clamped to [0, 1].
  void set(int x, int y, double w);

  std::span<const double> weights() const { return weights_; }
  double total_weight() const;
  std::size_t overlap_count() const;

  /// Weights as an image (for export).
  Image to_image() const;

 private:
  int width_ = 0;
  int height_ = 0;
  int float_width_ = 0;
  int float_height_ = 0;
  std::vector<double> weights_;
  std::vector<std::uint8_t> overlap_;
};

/// Full joint saliency map. For every reference pixel v whose image t(v)
/// lands inside the floating grid, the weight is the (policy-adjusted) cosine
/// between the reference RSV at v and the floating RSV found at t(v), or 0
/// when either is invalid. With kBilinearWeight the cosine is taken against
/// each of the 4 floating neighbors (invalid ones count as 0) and the results
/// are blended with the bilinear coefficients; vectors are never
/// interpolated. RSVs are compared without reorientation by the rotation.
JointSaliencyMap compute_jsm(const RsvField& ref_rsv, const RsvField& flt_rsv,
                             const RigidTransform& t, Vec2 center,
                             CosinePolicy policy = CosinePolicy::kAbsolute,
                             RsvLookup lookup = RsvLookup::kNearest);

/// compute_jsm with the reference grid center as rotation center.
JointSaliencyMap compute_jsm(const RsvField& ref_rsv, const RsvField& flt_rsv,
                             const RigidTransform& t,
                             CosinePolicy policy = CosinePolicy::kAbsolute,
                             RsvLookup lookup = RsvLookup::kNearest);

/// Cheap approximation between full recomputations: the weight at v is the
/// previous map bilinearly sampled at t_prev^-1(t_new(v)), i.e. weights follow
/// the floating structure they were computed against. Samples outside the
/// previous grid or landing outside the floating image are 0.
JointSaliencyMap update_jsm(const JointSaliencyMap& prev,
                            const RigidTransform& t_prev,
                            const RigidTransform& t_new, Vec2 center);

JointSaliencyMap update_jsm(const JointSaliencyMap& prev,
                            const RigidTransform& t_prev,
                            const RigidTransform& t_new);

/// Weight for two unit vectors under the policy.
double joint_saliency(Vec2 ref_dir, Vec2 flt_dir, CosinePolicy policy);

}  // namespace jsmreg

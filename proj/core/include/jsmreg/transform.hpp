#pragma once

#include "jsmreg/image.hpp"

namespace jsmreg {

/// Rigid motion (translation in pixels, rotation in degrees) about a center.
///
/// Convention, used everywhere in the library:
///
///   apply(p) = R(beta) * (p - center) + center + (tx, ty)
///   R(beta)  = [[cos b, -sin b], [sin b, cos b]]
///
/// in pixel coordinates (x right, y down). With y pointing down this turns
/// +x toward +y, which is counterclockwise in the usual image-coordinate
/// reading of the rotation matrix. During registration the transform maps
/// reference-image coordinates into the floating image.
struct RigidTransform {
  double tx = 0.0;
  double ty = 0.0;
  double beta = 0.0;  // degrees

  static RigidTransform identity() { return {}; }

  Vec2 apply(Vec2 p, Vec2 center) const;

  /// Inverse about the same center.
  RigidTransform inverse() const;

  /// Returns the transform p -> this(first(p)); both share one center.
  RigidTransform after(const RigidTransform& first) const;

  friend bool operator==(const RigidTransform&,
                         const RigidTransform&) = default;
};

/// A transform bound to a center with its sine and cosine precomputed.
/// Produces bit-identical results to RigidTransform::apply.
class PointMapper {
 public:
  PointMapper(const RigidTransform& t, Vec2 center);

  Vec2 operator()(Vec2 p) const {
    const Vec2 d = p - center_;
    return Vec2{cos_ * d.x - sin_ * d.y, sin_ * d.x + cos_ * d.y} + center_ +
           shift_;
  }

 private:
  double cos_;
  double sin_;
  Vec2 center_;
  Vec2 shift_;
};

Vec2 apply_transform(const RigidTransform& t, Vec2 p, Vec2 center);

double deg_to_rad(double deg);
double rad_to_deg(double rad);

/// Rotates a direction vector by the given angle in degrees.
Vec2 rotate(Vec2 v, double beta_deg);

}  // namespace jsmreg

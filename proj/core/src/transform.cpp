#include "jsmreg/transform.hpp"

#include <cmath>
#include <numbers>

namespace jsmreg {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

Vec2 rotate(Vec2 v, double beta_deg) {
  const double b = deg_to_rad(beta_deg);
  const double c = std::cos(b);
  const double s = std::sin(b);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 RigidTransform::apply(Vec2 p, Vec2 center) const {
  return PointMapper(*this, center)(p);
}

PointMapper::PointMapper(const RigidTransform& t, Vec2 center)
    : cos_(std::cos(deg_to_rad(t.beta))),
      sin_(std::sin(deg_to_rad(t.beta))),
      center_(center),
      shift_{t.tx, t.ty} {}

RigidTransform RigidTransform::inverse() const {
  // p = R^T (q - c - t) + c, so the inverse translation is -R^T t.
  const Vec2 t = rotate({-tx, -ty}, -beta);
  return {t.x, t.y, -beta};
}

RigidTransform RigidTransform::after(const RigidTransform& first) const {
  const Vec2 t = rotate({first.tx, first.ty}, beta) + Vec2{tx, ty};
  return {t.x, t.y, beta + first.beta};
}

Vec2 apply_transform(const RigidTransform& t, Vec2 p, Vec2 center) {
  return t.apply(p, center);
}

}  // namespace jsmreg

#include "jsmreg/jsm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jsmreg/interpolate.hpp"

namespace jsmreg {

JointSaliencyMap::JointSaliencyMap(int width, int height, int float_width,
                                   int float_height)
    : width_(width),
      height_(height),
      float_width_(float_width),
      float_height_(float_height),
      weights_(static_cast<std::size_t>(width) * height, 0.0),
      overlap_(static_cast<std::size_t>(width) * height, 0) {}

void JointSaliencyMap::set(int x, int y, double w) {
  const std::size_t i = static_cast<std::size_t>(y) * width_ + x;
  weights_[i] = std::clamp(w, 0.0, 1.0);
  overlap_[i] = 1;
}

double JointSaliencyMap::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

std::size_t JointSaliencyMap::overlap_count() const {
  return static_cast<std::size_t>(std::count(overlap_.begin(), overlap_.end(), 1));
}

Image JointSaliencyMap::to_image() const {
  return Image(width_, height_, weights_);
}

double joint_saliency(Vec2 ref_dir, Vec2 flt_dir, CosinePolicy policy) {
  const double c = dot(ref_dir, flt_dir) / (norm(ref_dir) * norm(flt_dir));
  return policy == CosinePolicy::kAbsolute ? std::min(std::abs(c), 1.0)
                                           : std::clamp(c, 0.0, 1.0);
}

JointSaliencyMap compute_jsm(const RsvField& ref_rsv, const RsvField& flt_rsv,
                             const RigidTransform& t, Vec2 center,
                             CosinePolicy policy, RsvLookup lookup) {
  const int fw = flt_rsv.width();
  const int fh = flt_rsv.height();
  JointSaliencyMap jsm(ref_rsv.width(), ref_rsv.height(), fw, fh);
  const PointMapper map(t, center);
  for (int y = 0; y < ref_rsv.height(); ++y) {
    for (int x = 0; x < ref_rsv.width(); ++x) {
      const Vec2 p = map({double(x), double(y)});
      if (lookup == RsvLookup::kNearest) {
        const auto q = nearest_pixel(fw, fh, p);
        if (!q) continue;
        const auto r = ref_rsv.at(x, y);
        const auto f = r ? flt_rsv.at((*q)[0], (*q)[1]) : std::nullopt;
        jsm.set(x, y, (r && f) ? joint_saliency(*r, *f, policy) : 0.0);
      } else {
        const auto s = bilinear_stencil(fw, fh, p);
        if (!s) continue;
        const auto r = ref_rsv.at(x, y);
        double w = 0.0;
        if (r) {
          for (int i = 0; i < 4; ++i) {
            if (s->weight[i] == 0.0) continue;
            if (const auto f = flt_rsv.at(s->x[i], s->y[i])) {
              w += s->weight[i] * joint_saliency(*r, *f, policy);
            }
          }
        }
        jsm.set(x, y, w);
      }
    }
  }
  return jsm;
}

JointSaliencyMap compute_jsm(const RsvField& ref_rsv, const RsvField& flt_rsv,
                             const RigidTransform& t, CosinePolicy policy,
                             RsvLookup lookup) {
  return compute_jsm(ref_rsv, flt_rsv, t,
                     image_center(ref_rsv.width(), ref_rsv.height()), policy, lookup);
}

JointSaliencyMap update_jsm(const JointSaliencyMap& prev,
                            const RigidTransform& t_prev,
                            const RigidTransform& t_new, Vec2 center) {
  const int w = prev.width();
  const int h = prev.height();
  const int fw = prev.float_width();
  const int fh = prev.float_height();
  JointSaliencyMap out(w, h, fw, fh);
  const PointMapper forward(t_new, center);
  const PointMapper back(t_prev.inverse(), center);
  const Image weights = prev.to_image();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Vec2 q = forward({double(x), double(y)});
      if (!nearest_pixel(fw, fh, q)) continue;
      Vec2 p = back(q);
      // Snap round-off so an unchanged transform reproduces prev exactly,
      // border pixels included.
      if (std::abs(p.x - std::round(p.x)) < 1e-9) p.x = std::round(p.x);
      if (std::abs(p.y - std::round(p.y)) < 1e-9) p.y = std::round(p.y);
      const auto v = sample_bilinear(weights, p);
      out.set(x, y, v.value_or(0.0));
    }
  }
  return out;
}

JointSaliencyMap update_jsm(const JointSaliencyMap& prev,
                            const RigidTransform& t_prev,
                            const RigidTransform& t_new) {
  return update_jsm(prev, t_prev, t_new, image_center(prev.width(), prev.height()));
}

}  // namespace jsmreg

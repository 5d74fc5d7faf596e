#include "jsmreg/histogram.hpp"

#include <cmath>
#include <string>

#include "jsmreg/interpolate.hpp"

namespace jsmreg {

std::string_view to_string(Interpolation mode) {
  switch (mode) {
    case Interpolation::kNearest:
      return "nearest";
    case Interpolation::kBilinear:
      return "bilinear";
    case Interpolation::kPartialVolume:
      return "pv";
  }
  return "unknown";
}

Interpolation parse_interpolation(std::string_view name) {
  if (name == "nearest") return Interpolation::kNearest;
  if (name == "bilinear") return Interpolation::kBilinear;
  if (name == "pv") return Interpolation::kPartialVolume;
  throw std::invalid_argument("unknown interpolation mode: " + std::string(name));
}

JointHistogram::JointHistogram(int bins) : bins_(bins) {
  if (bins < 2) throw std::invalid_argument("JointHistogram: bins must be >= 2");
  counts_.assign(static_cast<std::size_t>(bins) * bins, 0.0);
}

JointHistogram JointHistogram::from_entries(int bins, std::vector<double> entries) {
  JointHistogram h(bins);
  if (entries.size() != h.counts_.size()) {
    throw std::invalid_argument("JointHistogram: entry count mismatch");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i] >= 0.0) || !std::isfinite(entries[i])) {
      throw std::invalid_argument("JointHistogram: entries must be finite and >= 0");
    }
    h.counts_[i] = entries[i];
    h.mass_ += entries[i];
  }
  return h;
}

std::vector<double> JointHistogram::joint_probabilities() const {
  if (!(mass_ > 0.0)) throw EmptyOverlapError("joint histogram has zero mass");
  std::vector<double> p(counts_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = counts_[i] / mass_;
  return p;
}

std::vector<double> JointHistogram::reference_marginal() const {
  if (!(mass_ > 0.0)) throw EmptyOverlapError("joint histogram has zero mass");
  std::vector<double> p(bins_, 0.0);
  for (int r = 0; r < bins_; ++r) {
    for (int f = 0; f < bins_; ++f) p[r] += at(r, f);
    p[r] /= mass_;
  }
  return p;
}

std::vector<double> JointHistogram::floating_marginal() const {
  if (!(mass_ > 0.0)) throw EmptyOverlapError("joint histogram has zero mass");
  std::vector<double> p(bins_, 0.0);
  for (int r = 0; r < bins_; ++r) {
    for (int f = 0; f < bins_; ++f) p[f] += at(r, f);
  }
  for (double& v : p) v /= mass_;
  return p;
}

int quantize(double intensity, int bins) {
  if (bins < 2) throw std::invalid_argument("quantize: bins must be >= 2");
  if (!std::isfinite(intensity)) {
    throw std::invalid_argument("quantize: non-finite intensity");
  }
  const double scaled = std::floor(intensity * bins);
  if (scaled <= 0.0) return 0;
  if (scaled >= bins - 1) return bins - 1;
  return static_cast<int>(scaled);
}

namespace {

std::vector<int> quantize_image(const Image& img, int bins) {
  std::vector<int> out(img.size());
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) out[i] = quantize(px[i], bins);
  return out;
}

// Shared accumulation loop; weight_at(x, y) returns the deposit weight of a
// reference pixel, or a value <= 0 to skip it.
template <typename WeightFn>
JointHistogram accumulate(const Image& ref, const Image& flt,
                          const RigidTransform& t, Interpolation mode, int bins,
                          Vec2 center, WeightFn weight_at) {
  JointHistogram h(bins);
  const std::vector<int> ref_bins = quantize_image(ref, bins);
  const std::vector<int> flt_bins = mode == Interpolation::kPartialVolume
                                        ? quantize_image(flt, bins)
                                        : std::vector<int>{};
  const int fw = flt.width();

  const PointMapper map(t, center);

  for (int y = 0; y < ref.height(); ++y) {
    for (int x = 0; x < ref.width(); ++x) {
      if (!ref.valid(x, y)) continue;
      const double w = weight_at(x, y);
      if (!(w > 0.0)) continue;
      const Vec2 q = map({double(x), double(y)});
      const auto s = bilinear_stencil(flt, q);
      if (!s) continue;
      const int r = ref_bins[static_cast<std::size_t>(y) * ref.width() + x];
      switch (mode) {
        case Interpolation::kNearest: {
          const auto p = nearest_pixel(flt.width(), flt.height(), q);
          h.add(r, quantize(flt((*p)[0], (*p)[1]), bins), w);
          break;
        }
        case Interpolation::kBilinear: {
          double v = 0.0;
          for (int i = 0; i < 4; ++i) v += s->weight[i] * flt(s->x[i], s->y[i]);
          h.add(r, quantize(v, bins), w);
          break;
        }
        case Interpolation::kPartialVolume: {
          for (int i = 0; i < 4; ++i) {
            if (s->weight[i] == 0.0) continue;
            h.add(r, flt_bins[static_cast<std::size_t>(s->y[i]) * fw + s->x[i]],
                  w * s->weight[i]);
          }
          break;
        }
      }
    }
  }
  if (!(h.mass() > 0.0)) {
    throw EmptyOverlapError("no overlapping pixels with positive weight");
  }
  return h;
}

}  // namespace

JointHistogram build_weighted_histogram(const Image& ref, const Image& flt,
                                        const RigidTransform& t,
                                        const JointSaliencyMap& jsm,
                                        Interpolation mode, int bins,
                                        Vec2 center) {
  if (jsm.width() != ref.width() || jsm.height() != ref.height()) {
    throw std::invalid_argument("build_weighted_histogram: JSM/reference size mismatch");
  }
  return accumulate(ref, flt, t, mode, bins, center, [&](int x, int y) {
    return jsm.in_overlap(x, y) ? jsm.weight(x, y) : 0.0;
  });
}

JointHistogram build_weighted_histogram(const Image& ref, const Image& flt,
                                        const RigidTransform& t,
                                        const JointSaliencyMap& jsm,
                                        Interpolation mode, int bins) {
  return build_weighted_histogram(ref, flt, t, jsm, mode, bins, image_center(ref));
}

JointHistogram build_unweighted_histogram(const Image& ref, const Image& flt,
                                          const RigidTransform& t,
                                          Interpolation mode, int bins,
                                          Vec2 center) {
  return accumulate(ref, flt, t, mode, bins, center, [](int, int) { return 1.0; });
}

JointHistogram build_unweighted_histogram(const Image& ref, const Image& flt,
                                          const RigidTransform& t,
                                          Interpolation mode, int bins) {
  return build_unweighted_histogram(ref, flt, t, mode, bins, image_center(ref));
}

}  // namespace jsmreg

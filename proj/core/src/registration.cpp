#include "jsmreg/registration.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include "json.hpp"

#include "jsmreg/pyramid.hpp"
#include "jsmreg/saliency.hpp"
#include "jsmreg/similarity.hpp"

namespace jsmreg {

std::string_view to_string(RegistrationMeasure m) {
  return m == RegistrationMeasure::kJMI ? "jmi" : "nmi";
}

RegistrationMeasure parse_measure(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "jmi") return RegistrationMeasure::kJMI;
  if (lower == "nmi" || lower == "nmi-baseline") return RegistrationMeasure::kNmiBaseline;
  throw std::invalid_argument("unknown measure: " + std::string(name));
}

void RegistrationConfig::validate() const {
  if (bins < 2) throw std::invalid_argument("bins must be >= 2");
  if (min_bins < 2) throw std::invalid_argument("min_bins must be >= 2");
  if (pyramid_levels < 0) throw std::invalid_argument("pyramid_levels must be >= 0");
  if (jsm_recompute_interval < 1 || jsm_recompute_interval > 50) {
    throw std::invalid_argument("jsm_recompute_interval must be in [1, 50]");
  }
  if (!(saliency_threshold >= 0.0 && saliency_threshold < 1.0)) {
    throw std::invalid_argument("saliency_threshold must be in [0, 1)");
  }
  if (!(min_overlap_fraction >= 0.0 && min_overlap_fraction < 1.0)) {
    throw std::invalid_argument("min_overlap_fraction must be in [0, 1)");
  }
  if (!(jsm_update_max_shift >= 0.0) || !(jsm_update_max_rotation >= 0.0)) {
    throw std::invalid_argument("JSM update limits must be >= 0");
  }
  optimizer.validate();
}

namespace {

// Cost of one pyramid level. Parameters arrive in finest-level units and are
// mapped onto the level grid: a level-L pixel sits at 2^L times its index on
// the finest grid, so translations scale by 2^-L and the rotation center is
// the finest center scaled the same way.
class LevelObjective {
 public:
  LevelObjective(const Image& ref, const Image& flt, double scale, Vec2 finest_center,
                 const RegistrationConfig& cfg)
      : ref_(ref),
        flt_(flt),
        scale_(scale),
        center_{finest_center.x / scale, finest_center.y / scale},
        cfg_(cfg),
        min_mass_(cfg.min_overlap_fraction * static_cast<double>(ref.size())),
        bins_(std::max(std::min(cfg.min_bins, cfg.bins),
                       static_cast<int>(cfg.bins / scale))) {
    if (cfg.measure == RegistrationMeasure::kJMI) {
      ref_rsv_ = build_rsv_field(ref, default_pyramid_levels(ref.width(), ref.height()),
                                 cfg.saliency_threshold)
                     .field;
      flt_rsv_ = build_rsv_field(flt, default_pyramid_levels(flt.width(), flt.height()),
                                 cfg.saliency_threshold)
                     .field;
    }
  }

  RigidTransform to_level(const RigidTransform& t) const {
    return {t.tx / scale_, t.ty / scale_, t.beta};
  }

  double operator()(const RigidTransform& t) {
    const RigidTransform lt = to_level(t);
    try {
      if (cfg_.measure == RegistrationMeasure::kNmiBaseline) {
        const JointHistogram h = build_unweighted_histogram(
            ref_, flt_, lt, cfg_.interpolation, bins_, center_);
        if (h.mass() < min_mass_) return kFailureValue;
        return normalized_mutual_information(h).value;
      }
      refresh_jsm(lt);
      if (static_cast<double>(jsm_.overlap_count()) < min_mass_) return kFailureValue;
      const JointHistogram h = build_weighted_histogram(
          ref_, flt_, lt, jsm_, cfg_.interpolation, bins_, center_);
      return mutual_information(h).value;
    } catch (const EmptyOverlapError&) {
      return kFailureValue;
    }
  }

  int recomputations() const { return recomputations_; }
  int updates() const { return updates_; }

 private:
  void refresh_jsm(const RigidTransform& lt) {
    const bool small_motion =
        have_jsm_ &&
        std::hypot(lt.tx - jsm_t_.tx, lt.ty - jsm_t_.ty) < cfg_.jsm_update_max_shift &&
        std::abs(lt.beta - jsm_t_.beta) < cfg_.jsm_update_max_rotation;
    if (small_motion && since_recompute_ < cfg_.jsm_recompute_interval) {
      jsm_ = update_jsm(jsm_, jsm_t_, lt, center_);
      ++updates_;
    } else {
      jsm_ = compute_jsm(ref_rsv_, flt_rsv_, lt, center_, cfg_.cosine_policy,
                         cfg_.rsv_lookup);
      since_recompute_ = 0;
      ++recomputations_;
    }
    have_jsm_ = true;
    jsm_t_ = lt;
    ++since_recompute_;
  }

  const Image& ref_;
  const Image& flt_;
  double scale_;
  Vec2 center_;
  const RegistrationConfig& cfg_;
  double min_mass_;
  int bins_;
  RsvField ref_rsv_;
  RsvField flt_rsv_;
  JointSaliencyMap jsm_;
  RigidTransform jsm_t_;
  bool have_jsm_ = false;
  int since_recompute_ = 0;
  int recomputations_ = 0;
  int updates_ = 0;
};

int registration_levels(const Image& ref, const Image& flt,
                        const RegistrationConfig& cfg) {
  const int auto_levels =
      std::min(default_pyramid_levels(ref.width(), ref.height()),
               default_pyramid_levels(flt.width(), flt.height()));
  return cfg.pyramid_levels > 0 ? cfg.pyramid_levels : auto_levels;
}

}  // namespace

RegistrationResult register_images(const Image& ref, const Image& flt,
                                   const RigidTransform& start,
                                   const RegistrationConfig& cfg) {
  cfg.validate();
  if (ref.empty() || flt.empty()) {
    throw std::invalid_argument("register_images: empty image");
  }
  const auto t0 = std::chrono::steady_clock::now();

  const int requested = registration_levels(ref, flt, cfg);
  const GaussianPyramid ref_pyr = build_pyramid(ref, requested);
  const GaussianPyramid flt_pyr = build_pyramid(flt, requested);
  const int levels = std::min(ref_pyr.size(), flt_pyr.size());
  const Vec2 center = image_center(ref);

  RegistrationResult result;
  RigidTransform current = start;
  SimplexConfig opt = cfg.optimizer;
  for (int level = levels - 1; level >= 0; --level) {
    const double scale = std::ldexp(1.0, level);
    LevelObjective objective(ref_pyr.level(level), flt_pyr.level(level), scale,
                             center, cfg);
    OptResult r = maximize(std::ref(objective), current, opt);
    if (level == levels - 1 && !r.trace.empty() &&
        r.trace.front().value == kFailureValue) {
      throw RegistrationError(
          "start transform leaves less than the minimum overlap at the coarsest level");
    }
    if (r.best_value != kFailureValue) current = r.best;
    result.evaluations += r.evaluations;
    result.similarity = r.best_value;
    result.levels.push_back({level, ref_pyr.level(level).width(),
                             ref_pyr.level(level).height(), std::move(r),
                             objective.recomputations(), objective.updates()});
    for (double& s : opt.initial_step) s *= 0.5;
  }
  result.transform = current;
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::optional<double> evaluate_similarity(const Image& ref, const Image& flt,
                                          const RigidTransform& t,
                                          const RegistrationConfig& cfg) {
  LevelObjective objective(ref, flt, 1.0, image_center(ref), cfg);
  const double v = objective(t);
  if (v == kFailureValue) return std::nullopt;
  return v;
}

SimilaritySurface similarity_surface(const Image& ref, const Image& flt,
                                     const RigidTransform& t0,
                                     const RegistrationConfig& cfg, double range,
                                     double step) {
  cfg.validate();
  if (!(step > 0.0)) throw std::invalid_argument("similarity_surface: step must be > 0");
  if (!(range >= 0.0)) throw std::invalid_argument("similarity_surface: range must be >= 0");

  // Recompute at every evaluation: the surface must not depend on visit order.
  RegistrationConfig exact = cfg;
  exact.jsm_recompute_interval = 1;
  LevelObjective objective(ref, flt, 1.0, image_center(ref), exact);

  SimilaritySurface s;
  s.center = t0;
  s.range = range;
  s.step = step;
  s.size = static_cast<int>(std::floor(2.0 * range / step + 1e-9)) + 1;
  s.values.resize(static_cast<std::size_t>(s.size) * s.size);
  for (int iy = 0; iy < s.size; ++iy) {
    for (int ix = 0; ix < s.size; ++ix) {
      const RigidTransform t{t0.tx + s.offset(ix), t0.ty + s.offset(iy), t0.beta};
      const double v = objective(t);
      if (v != kFailureValue) s.values[static_cast<std::size_t>(iy) * s.size + ix] = v;
    }
  }
  return s;
}

int count_strict_local_maxima(const SimilaritySurface& s) {
  int count = 0;
  for (int iy = 0; iy < s.size; ++iy) {
    for (int ix = 0; ix < s.size; ++ix) {
      const auto& v = s.at(ix, iy);
      if (!v) continue;
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy) {
        for (int dx = -1; dx <= 1 && is_max; ++dx) {
          const int nx = ix + dx;
          const int ny = iy + dy;
          if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= s.size || ny >= s.size) {
            continue;
          }
          const auto& n = s.at(nx, ny);
          if (n && *n >= *v) is_max = false;
        }
      }
      if (is_max) ++count;
    }
  }
  return count;
}

std::optional<std::array<int, 2>> surface_argmax(const SimilaritySurface& s) {
  std::optional<std::array<int, 2>> best;
  double best_v = 0.0;
  for (int iy = 0; iy < s.size; ++iy) {
    for (int ix = 0; ix < s.size; ++ix) {
      const auto& v = s.at(ix, iy);
      if (v && (!best || *v > best_v)) {
        best = std::array<int, 2>{ix, iy};
        best_v = *v;
      }
    }
  }
  return best;
}

std::string result_record(const RegistrationResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f %.9g %d %.3f", r.transform.tx,
                r.transform.ty, r.transform.beta, r.similarity, r.evaluations,
                r.seconds);
  return buf;
}

std::string result_json(const RegistrationResult& r, const RegistrationConfig& cfg) {
  using nlohmann::json;
  json doc;
  doc["transform"] = {{"tx", r.transform.tx}, {"ty", r.transform.ty},
                      {"beta", r.transform.beta}};
  doc["similarity"] = r.similarity;
  doc["measure"] = std::string(to_string(cfg.measure));
  doc["interpolation"] = std::string(to_string(cfg.interpolation));
  doc["bins"] = cfg.bins;
  doc["evaluations"] = r.evaluations;
  doc["seconds"] = r.seconds;
  json levels = json::array();
  for (const LevelTrace& lt : r.levels) {
    json trace = json::array();
    for (const TraceEntry& e : lt.optimization.trace) {
      trace.push_back({e.evaluation, e.params.tx, e.params.ty, e.params.beta,
                       e.value == kFailureValue ? json(nullptr) : json(e.value),
                       e.best_so_far == kFailureValue ? json(nullptr)
                                                      : json(e.best_so_far)});
    }
    levels.push_back({{"level", lt.level},
                      {"width", lt.width},
                      {"height", lt.height},
                      {"evaluations", lt.optimization.evaluations},
                      {"termination", std::string(to_string(lt.optimization.termination))},
                      {"best", {{"tx", lt.optimization.best.tx},
                                {"ty", lt.optimization.best.ty},
                                {"beta", lt.optimization.best.beta}}},
                      {"best_value", lt.optimization.best_value},
                      {"jsm_recomputations", lt.jsm_recomputations},
                      {"jsm_updates", lt.jsm_updates},
                      {"trace_columns", {"eval", "tx", "ty", "beta", "value", "best"}},
                      {"trace", std::move(trace)}});
  }
  doc["levels"] = std::move(levels);
  return doc.dump(2);
}

}  // namespace jsmreg

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jsmreg/histogram.hpp"
#include "jsmreg/image.hpp"
#include "jsmreg/jsm.hpp"
#include "jsmreg/optimizer.hpp"
#include "jsmreg/transform.hpp"

namespace jsmreg {

enum class RegistrationMeasure {
  kJMI,          // MI of the joint-saliency-weighted histogram
  kNmiBaseline,  // NMI of the plain (unweighted) histogram
};

std::string_view to_string(RegistrationMeasure m);
/// Accepts "jmi" and "nmi" (case-insensitive).
RegistrationMeasure parse_measure(std::string_view name);

struct RegistrationConfig {
  RegistrationMeasure measure = RegistrationMeasure::kJMI;
  Interpolation interpolation = Interpolation::kPartialVolume;
  int bins = kDefaultBins;
  /// Registration pyramid depth; 0 picks default_pyramid_levels().
  int pyramid_levels = 0;
  /// Full JSM recomputation every n cost evaluations; update_jsm in between.
  int jsm_recompute_interval = 12;
  /// Fraction of the saliency maximum below which RSVs are dropped.
  double saliency_threshold = 0.02;
  CosinePolicy cosine_policy = CosinePolicy::kAbsolute;
  RsvLookup rsv_lookup = RsvLookup::kNearest;
  /// Histogram bins at pyramid level L are max(min(min_bins, bins), bins / 2^L).
  int min_bins = 16;
  /// initial_step applies at the coarsest level (in finest-level pixels and
  /// degrees) and is halved at each descent.
  SimplexConfig optimizer;
  /// Cost is kFailureValue when the geometric overlap (reference pixels
  /// mapped inside the floating image) falls below this fraction of the
  /// reference pixel count.
  double min_overlap_fraction = 0.01;
  /// Incremental motion (level pixels / degrees) above which update_jsm is
  /// bypassed in favor of a full recomputation.
  double jsm_update_max_shift = 3.0;
  double jsm_update_max_rotation = 3.0;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct LevelTrace {
  int level = 0;  // 0 = finest
  int width = 0;
  int height = 0;
  OptResult optimization;  // parameters in finest-level pixels
  int jsm_recomputations = 0;
  int jsm_updates = 0;
};

struct RegistrationResult {
  RigidTransform transform;
  double similarity = 0.0;
  std::vector<LevelTrace> levels;  // coarsest first
  int evaluations = 0;
  double seconds = 0.0;
};

/// Raised when the start transform leaves too little overlap to register.
class RegistrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coarse-to-fine rigid registration of flt onto ref. The returned transform
/// maps reference coordinates into the floating image about the reference
/// center, in finest-level pixels.
RegistrationResult register_images(const Image& ref, const Image& flt,
                                   const RigidTransform& start,
                                   const RegistrationConfig& cfg = {});

/// Evaluates the configured measure at one transform on the finest level
/// with a freshly computed JSM. nullopt for degenerate overlap.
std::optional<double> evaluate_similarity(const Image& ref, const Image& flt,
                                          const RigidTransform& t,
                                          const RegistrationConfig& cfg = {});

/// Measure values on the grid t0 + (dx, dy, 0), dx and dy in
/// [-range, range] at the given step; rows run over dy, columns over dx.
struct SimilaritySurface {
  RigidTransform center;
  double range = 0.0;
  double step = 0.0;
  int size = 0;  // samples per axis
  std::vector<std::optional<double>> values;

  const std::optional<double>& at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * size + ix];
  }
  double offset(int i) const { return -range + i * step; }
};

/// Throws std::invalid_argument for step <= 0 or range < 0. The JSM is
/// recomputed at every grid point.
SimilaritySurface similarity_surface(const Image& ref, const Image& flt,
                                     const RigidTransform& t0,
                                     const RegistrationConfig& cfg,
                                     double range, double step);

/// Grid samples strictly greater than every present 8-neighbor. Missing
/// samples are ignored, both as candidates and as neighbors.
int count_strict_local_maxima(const SimilaritySurface& s);

/// Index (ix, iy) of the largest present sample; nullopt if all missing.
std::optional<std::array<int, 2>> surface_argmax(const SimilaritySurface& s);

/// "tx ty beta similarity evals seconds"
std::string result_record(const RegistrationResult& r);

/// JSON document with the final result and per-level traces.
std::string result_json(const RegistrationResult& r, const RegistrationConfig& cfg);

}  // namespace jsmreg

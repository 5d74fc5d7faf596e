#pragma once

#include <stdexcept>
#include <string_view>
#include <vector>

#include "jsmreg/image.hpp"
#include "jsmreg/jsm.hpp"
#include "jsmreg/transform.hpp"

namespace jsmreg {

enum class Interpolation { kNearest, kBilinear, kPartialVolume };

std::string_view to_string(Interpolation mode);
/// Accepts "nearest", "bilinear", "pv". Throws std::invalid_argument.
Interpolation parse_interpolation(std::string_view name);

inline constexpr int kDefaultBins = 64;

/// Raised when no weight was deposited (empty overlap or all-zero weights).
class EmptyOverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// B x B weighted joint histogram; rows index reference bins, columns index
/// floating bins. Probabilities are entries divided by the total mass.
class JointHistogram {
 public:
  explicit JointHistogram(int bins);

  int bins() const { return bins_; }
  double at(int r, int f) const {
    return counts_[static_cast<std::size_t>(r) * bins_ + f];
  }
  void add(int r, int f, double w) {
    counts_[static_cast<std::size_t>(r) * bins_ + f] += w;
    mass_ += w;
  }
  double mass() const { return mass_; }
  std::span<const double> entries() const { return counts_; }

  double probability(int r, int f) const { return at(r, f) / mass_; }
  /// Joint probabilities, row-major. Throws EmptyOverlapError at zero mass.
  std::vector<double> joint_probabilities() const;
  /// p(r) = sum_f p(r, f)
  std::vector<double> reference_marginal() const;
  /// p(f) = sum_r p(r, f)
  std::vector<double> floating_marginal() const;

  /// Builds a histogram from raw entries (tests, analysis).
  static JointHistogram from_entries(int bins, std::vector<double> entries);

 private:
  int bins_;
  double mass_ = 0.0;
  std::vector<double> counts_;
};

/// floor(v * bins) clamped to [0, bins-1]. Throws std::invalid_argument for a
/// non-finite value or bins < 2.
int quantize(double intensity, int bins);

/// Joint histogram over reference pixels v in the overlap with w(v) > 0.
///   nearest/bilinear: the floating intensity at t(v) is interpolated and w(v)
///     goes to (bin(ref(v)), bin(flt)).
///   pv: each of the 4 floating neighbors of t(v) receives w(v) * c_i at
///     (bin(ref(v)), bin(flt_i)), c_i being its bilinear coefficient.
/// The reference grid drives the loop; masked-out reference pixels are skipped.
/// Throws EmptyOverlapError when nothing is deposited.
JointHistogram build_weighted_histogram(const Image& ref, const Image& flt,
                                        const RigidTransform& t,
                                        const JointSaliencyMap& jsm,
                                        Interpolation mode, int bins,
                                        Vec2 center);
JointHistogram build_weighted_histogram(const Image& ref, const Image& flt,
                                        const RigidTransform& t,
                                        const JointSaliencyMap& jsm,
                                        Interpolation mode,
                                        int bins = kDefaultBins);

/// Same with w = 1 on the whole overlap.
JointHistogram build_unweighted_histogram(const Image& ref, const Image& flt,
                                          const RigidTransform& t,
                                          Interpolation mode, int bins,
                                          Vec2 center);
JointHistogram build_unweighted_histogram(const Image& ref, const Image& flt,
                                          const RigidTransform& t,
                                          Interpolation mode,
                                          int bins = kDefaultBins);

}  // namespace jsmreg

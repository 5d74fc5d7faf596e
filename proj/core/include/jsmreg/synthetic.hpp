#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jsmreg/image.hpp"
#include "jsmreg/transform.hpp"

namespace jsmreg {

/// Seeded generator. std::mt19937_64 output is fixed by the standard but the
/// std:: distributions are not, so values are mapped to doubles here to keep
/// generated pairs byte-identical across standard libraries.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed);

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [lo, hi].
  int uniform_int(int lo, int hi);
  /// Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class ImageRole { kReference, kFloating };
enum class OutlierStyle { kSolid, kStripes };

struct OutlierSpec {
  bool enabled = false;
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
  double intensity = 0.95;
  OutlierStyle style = OutlierStyle::kSolid;
  ImageRole target = ImageRole::kFloating;
};

struct SyntheticCase {
  std::string id = "case";
  std::uint64_t seed = 1;
  int width = 256;
  int height = 256;
  /// Ground truth: maps reference coordinates into the floating image about
  /// the image center.
  RigidTransform truth;
  OutlierSpec outlier;
  /// Additive Gaussian noise sigma, applied independently to both images.
  double noise_sigma = 0.0;
  double gain = 1.0;
  double bias = 0.0;
  ImageRole illumination_target = ImageRole::kFloating;

  /// Throws std::invalid_argument for bad sizes or an outlier covering more
  /// than half of the image.
  void validate() const;
};

struct SyntheticPair {
  Image reference;
  Image floating;  // masked where resampling left the rendered canvas
  RigidTransform truth;
};

/// Procedural texture (gradient background, Gaussian blobs, hard-edged
/// rectangles, ellipses and bars) fully determined by the seed.
Image render_texture(std::uint64_t seed, int width, int height);

/// Renders the base scene, forms the floating image by bilinear resampling
/// under the ground truth, then applies outlier, illumination and noise.
SyntheticPair generate_case(const SyntheticCase& spec);

enum class SuiteKind {
  kClean,    // random transform, no outlier
  kOutlier,  // random transform, 9-16% outlier patch, gain 1.2 on floating
};

/// Seeded suite: |tx|, |ty| <= 10 px, |beta| <= 8 deg.
std::vector<SyntheticCase> make_suite(SuiteKind kind, int count, std::uint64_t seed,
                                      int size = 256);

/// One case per line as whitespace-separated key=value tokens; '#' starts a
/// comment. Keys: id seed width height size tx ty beta noise gain bias gain_in
/// outlier=WxH@X,Y outlier_value outlier_style outlier_in.
std::vector<SyntheticCase> parse_suite(const std::string& text);
std::string format_case(const SyntheticCase& c);
std::string format_suite(const std::vector<SyntheticCase>& suite);

}  // namespace jsmreg

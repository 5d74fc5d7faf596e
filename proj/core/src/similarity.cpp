#include "jsmreg/similarity.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jsmreg {

std::string_view to_string(SimilarityMeasure m) {
  return m == SimilarityMeasure::kMI ? "MI" : "NMI";
}

namespace {

double entropy_unchecked(std::span<const double> p) {
  double h = 0.0;
  for (const double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

}  // namespace

double entropy(std::span<const double> p) {
  double sum = 0.0;
  for (const double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument("entropy: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("entropy: probabilities do not sum to 1");
  }
  return entropy_unchecked(p);
}

Entropies histogram_entropies(const JointHistogram& h) {
  const auto joint = h.joint_probabilities();
  const auto pr = h.reference_marginal();
  const auto pf = h.floating_marginal();
  return {entropy_unchecked(pr), entropy_unchecked(pf), entropy_unchecked(joint)};
}

SimilarityValue mutual_information(const JointHistogram& h) {
  const Entropies e = histogram_entropies(h);
  return {e.reference + e.floating - e.joint, SimilarityMeasure::kMI};
}

SimilarityValue normalized_mutual_information(const JointHistogram& h) {
  const Entropies e = histogram_entropies(h);
  if (e.joint <= 0.0) return {2.0, SimilarityMeasure::kNMI};
  return {(e.reference + e.floating) / e.joint, SimilarityMeasure::kNMI};
}

}  // namespace jsmreg

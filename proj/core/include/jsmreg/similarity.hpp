#pragma once

#include <span>
#include <string_view>

#include "jsmreg/histogram.hpp"

namespace jsmreg {

enum class SimilarityMeasure { kMI, kNMI };

std::string_view to_string(SimilarityMeasure m);

/// Similarity in bits (log base 2).
struct SimilarityValue {
  double value = 0.0;
  SimilarityMeasure measure = SimilarityMeasure::kMI;
};

/// Shannon entropy in bits, 0 log 0 = 0. Throws std::invalid_argument if an
/// entry is negative or the entries do not sum to 1 within 1e-9.
double entropy(std::span<const double> p);

/// H(R) + H(F) - H(R, F) over the histogram's probabilities. Throws
/// EmptyOverlapError for a zero-mass histogram.
SimilarityValue mutual_information(const JointHistogram& h);

/// (H(R) + H(F)) / H(R, F); 2 when the joint entropy is 0.
SimilarityValue normalized_mutual_information(const JointHistogram& h);

struct Entropies {
  double reference = 0.0;
  double floating = 0.0;
  double joint = 0.0;
};

Entropies histogram_entropies(const JointHistogram& h);

}  // namespace jsmreg

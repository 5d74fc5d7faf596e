#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "jsmreg/transform.hpp"

namespace jsmreg {

/// Cost value meaning "no usable overlap"; worse than any real similarity.
inline constexpr double kFailureValue = std::numeric_limits<double>::lowest();

struct SimplexConfig {
  /// Initial vertex offsets for (tx, ty, beta): pixels, pixels, degrees.
  /// Parameters are scaled by these steps inside the optimizer.
  std::array<double, 3> initial_step{8.0, 8.0, 4.0};
  /// Termination threshold on the largest vertex-to-centroid distance, in
  /// scaled coordinates.
  double min_step = 1e-5;
  int max_evaluations = 200;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

enum class Termination { kStepTolerance, kEvaluationLimit };

std::string_view to_string(Termination t);

struct TraceEntry {
  int evaluation = 0;  // 1-based
  RigidTransform params;
  double value = 0.0;
  double best_so_far = 0.0;
};

struct OptResult {
  RigidTransform best;
  double best_value = kFailureValue;
  int evaluations = 0;
  Termination termination = Termination::kStepTolerance;
  std::vector<TraceEntry> trace;
};

using CostFunction = std::function<double(const RigidTransform&)>;

/// Nelder-Mead maximization over (tx, ty, beta). Deterministic; never
/// evaluates the cost more than cfg.max_evaluations times and returns the
/// best point ever evaluated. Ties keep the earlier vertex.
OptResult maximize(const CostFunction& cost, const RigidTransform& start,
                   const SimplexConfig& cfg = {});

}  // namespace jsmreg

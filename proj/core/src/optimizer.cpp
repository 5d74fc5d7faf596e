#include "jsmreg/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jsmreg {

namespace {

constexpr int kDim = 3;
using Point = std::array<double, kDim>;

struct Vertex {
  Point z;        // scaled coordinates
  double f = 0;   // negated cost, minimized
};

// Evaluation budget exhausted; unwinds the simplex loop.
struct BudgetExhausted {};

class Minimizer {
 public:
  Minimizer(const CostFunction& cost, const SimplexConfig& cfg)
      : cost_(cost), cfg_(cfg) {}

  OptResult run(const RigidTransform& start) {
    try {
      iterate(scale(start));
      result_.termination = Termination::kStepTolerance;
    } catch (const BudgetExhausted&) {
      result_.termination = Termination::kEvaluationLimit;
    }
    result_.evaluations = evaluations_;
    return std::move(result_);
  }

 private:
  Point scale(const RigidTransform& t) const {
    return {t.tx / cfg_.initial_step[0], t.ty / cfg_.initial_step[1],
            t.beta / cfg_.initial_step[2]};
  }

  RigidTransform unscale(const Point& z) const {
    return {z[0] * cfg_.initial_step[0], z[1] * cfg_.initial_step[1],
            z[2] * cfg_.initial_step[2]};
  }

  Vertex evaluate(const Point& z) {
    if (evaluations_ >= cfg_.max_evaluations) throw BudgetExhausted{};
    ++evaluations_;
    const RigidTransform params = unscale(z);
    double value = cost_(params);
    if (std::isnan(value)) value = kFailureValue;
    if (evaluations_ == 1 || value > result_.best_value) {
      result_.best = params;
      result_.best_value = value;
    }
    result_.trace.push_back({evaluations_, params, value, result_.best_value});
    return {z, -value};
  }

  static Point lerp(const Point& from, const Point& to, double t) {
    Point out;
    for (int i = 0; i < kDim; ++i) out[i] = from[i] + t * (to[i] - from[i]);
    return out;
  }

  double step_length(const std::array<Vertex, kDim + 1>& s) const {
    Point c{};
    for (const auto& v : s) {
      for (int i = 0; i < kDim; ++i) c[i] += v.z[i] / (kDim + 1);
    }
    double longest = 0.0;
    for (const auto& v : s) {
      double d2 = 0.0;
      for (int i = 0; i < kDim; ++i) d2 += (v.z[i] - c[i]) * (v.z[i] - c[i]);
      longest = std::max(longest, std::sqrt(d2));
    }
    return longest;
  }

  void iterate(const Point& z0) {
    std::array<Vertex, kDim + 1> s;
    s[0] = evaluate(z0);
    for (int i = 0; i < kDim; ++i) {
      Point z = z0;
      z[i] += 1.0;
      s[i + 1] = evaluate(z);
    }

    for (;;) {
      std::stable_sort(s.begin(), s.end(),
                       [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      if (step_length(s) < cfg_.min_step) return;

      Point centroid{};
      for (int k = 0; k < kDim; ++k) {
        for (int i = 0; i < kDim; ++i) centroid[i] += s[k].z[i] / kDim;
      }
      const Vertex& best = s.front();
      const Vertex& second_worst = s[kDim - 1];
      Vertex& worst = s.back();

      const Vertex reflected =
          evaluate(lerp(centroid, worst.z, -cfg_.reflection));
      if (reflected.f < best.f) {
        const Vertex expanded =
            evaluate(lerp(centroid, reflected.z, cfg_.expansion));
        worst = expanded.f < reflected.f ? expanded : reflected;
        continue;
      }
      if (reflected.f < second_worst.f) {
        worst = reflected;
        continue;
      }
      if (reflected.f < worst.f) {
        const Vertex outside =
            evaluate(lerp(centroid, reflected.z, cfg_.contraction));
        if (outside.f <= reflected.f) {
          worst = outside;
          continue;
        }
      } else {
        const Vertex inside = evaluate(lerp(centroid, worst.z, cfg_.contraction));
        if (inside.f < worst.f) {
          worst = inside;
          continue;
        }
      }
      for (int k = 1; k <= kDim; ++k) {
        s[k] = evaluate(lerp(s[0].z, s[k].z, cfg_.shrink));
      }
    }
  }

  const CostFunction& cost_;
  const SimplexConfig& cfg_;
  int evaluations_ = 0;
  OptResult result_;
};

}  // namespace

void SimplexConfig::validate() const {
  for (const double s : initial_step) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("SimplexConfig: initial steps must be > 0");
    }
  }
  if (!(min_step > 0.0)) {
    throw std::invalid_argument("SimplexConfig: min_step must be > 0");
  }
  if (max_evaluations < 1) {
    throw std::invalid_argument("SimplexConfig: max_evaluations must be >= 1");
  }
  if (!(reflection > 0.0) || !(expansion > 1.0) || !(contraction > 0.0) ||
      !(contraction < 1.0) || !(shrink > 0.0) || !(shrink < 1.0)) {
    throw std::invalid_argument("SimplexConfig: invalid simplex coefficients");
  }
}

std::string_view to_string(Termination t) {
  return t == Termination::kStepTolerance ? "step_tolerance" : "eval_limit";
}

OptResult maximize(const CostFunction& cost, const RigidTransform& start,
                   const SimplexConfig& cfg) {
  cfg.validate();
  return Minimizer(cost, cfg).run(start);
}

}  // namespace jsmreg

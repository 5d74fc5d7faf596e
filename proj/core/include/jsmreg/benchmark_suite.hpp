#pragma once

#include <array>
#include <string>
#include <vector>

#include "jsmreg/registration.hpp"
#include "jsmreg/synthetic.hpp"

namespace jsmreg {

struct BenchRecord {
  std::string case_id;
  RegistrationMeasure measure = RegistrationMeasure::kJMI;
  RigidTransform correct;
  RigidTransform computed;
  std::array<double, 3> error{};  // |computed - correct| per parameter
  int evaluations = 0;
  double seconds = 0.0;
  bool ok = true;
  std::string message;  // failure description when !ok
};

/// Registers every case under every measure from the identity start.
/// A failing case becomes a record with ok = false. Cases run on up to
/// `threads` workers; record order follows the suite regardless.
std::vector<BenchRecord> run_benchmark(const std::vector<SyntheticCase>& suite,
                                       const std::vector<RegistrationMeasure>& measures,
                                       const RegistrationConfig& cfg, int threads = 1);

/// Deterministic CSV (no wall-clock column).
std::string bench_csv(const std::vector<BenchRecord>& records);

/// Fixed-width summary in the "Correct(X,Y,beta) / Computed(X,Y,beta)"
/// layout with evaluation counts and seconds.
std::string bench_table(const std::vector<BenchRecord>& records);

}  // namespace jsmreg

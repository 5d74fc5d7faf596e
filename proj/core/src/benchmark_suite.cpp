#include "jsmreg/benchmark_suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace jsmreg {

namespace {

std::vector<BenchRecord> run_case(const SyntheticCase& c,
                                  const std::vector<RegistrationMeasure>& measures,
                                  const RegistrationConfig& cfg) {
  std::vector<BenchRecord> records;
  SyntheticPair pair;
  std::string gen_error;
  try {
    pair = generate_case(c);
  } catch (const std::exception& e) {
    gen_error = e.what();
  }
  for (const RegistrationMeasure m : measures) {
    BenchRecord rec;
    rec.case_id = c.id;
    rec.measure = m;
    rec.correct = c.truth;
    if (!gen_error.empty()) {
      rec.ok = false;
      rec.message = gen_error;
      records.push_back(rec);
      continue;
    }
    RegistrationConfig run_cfg = cfg;
    run_cfg.measure = m;
    try {
      const RegistrationResult r =
          register_images(pair.reference, pair.floating, RigidTransform::identity(), run_cfg);
      rec.computed = r.transform;
      rec.error = {std::abs(r.transform.tx - c.truth.tx),
                   std::abs(r.transform.ty - c.truth.ty),
                   std::abs(r.transform.beta - c.truth.beta)};
      rec.evaluations = r.evaluations;
      rec.seconds = r.seconds;
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.message = e.what();
    }
    records.push_back(rec);
  }
  return records;
}

}  // namespace

std::vector<BenchRecord> run_benchmark(const std::vector<SyntheticCase>& suite,
                                       const std::vector<RegistrationMeasure>& measures,
                                       const RegistrationConfig& cfg, int threads) {
  if (suite.empty()) throw std::invalid_argument("run_benchmark: empty suite");
  std::vector<std::vector<BenchRecord>> per_case(suite.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suite.size(); i = next++) {
      per_case[i] = run_case(suite[i], measures, cfg);
    }
  };
  const int n = std::clamp(threads, 1, static_cast<int>(suite.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::vector<BenchRecord> records;
  for (auto& v : per_case) records.insert(records.end(), v.begin(), v.end());
  return records;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::string out =
      "case,measure,correct_x,correct_y,correct_beta,computed_x,computed_y,"
      "computed_beta,error_x,error_y,error_beta,evaluations,status\n";
  char buf[512];
  for (const BenchRecord& r : records) {
    std::snprintf(buf, sizeof(buf),
                  "%s,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%s\n",
                  r.case_id.c_str(), std::string(to_string(r.measure)).c_str(),
                  r.correct.tx, r.correct.ty, r.correct.beta, r.computed.tx,
                  r.computed.ty, r.computed.beta, r.error[0], r.error[1], r.error[2],
                  r.evaluations, r.ok ? "ok" : "failed");
    out += buf;
  }
  return out;
}

std::string bench_table(const std::vector<BenchRecord>& records) {
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%-12s %-5s %-28s %-28s %-24s %6s %8s\n", "Case",
                "Meas", "Correct(X,Y,beta)", "Computed(X,Y,beta)", "Error(X,Y,beta)",
                "Evals", "Seconds");
  out += buf;
  out += std::string(117, '-') + "\n";
  for (const BenchRecord& r : records) {
    char correct[64];
    char computed[64];
    char error[64];
    std::snprintf(correct, sizeof(correct), "%.2f, %.2f, %.2f", r.correct.tx,
                  r.correct.ty, r.correct.beta);
    if (r.ok) {
      std::snprintf(computed, sizeof(computed), "%.2f, %.2f, %.2f", r.computed.tx,
                    r.computed.ty, r.computed.beta);
      std::snprintf(error, sizeof(error), "%.2f, %.2f, %.2f", r.error[0], r.error[1],
                    r.error[2]);
    } else {
      std::snprintf(computed, sizeof(computed), "failed");
      std::snprintf(error, sizeof(error), "-");
    }
    std::snprintf(buf, sizeof(buf), "%-12s %-5s %-28s %-28s %-24s %6d %8.2f\n",
                  r.case_id.c_str(), std::string(to_string(r.measure)).c_str(), correct,
                  computed, error, r.evaluations, r.seconds);
    out += buf;
  }
  return out;
}

}  // namespace jsmreg

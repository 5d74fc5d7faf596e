#include <benchmark/benchmark.h>

#include "jsmreg/jsmreg.hpp"

using namespace jsmreg;

namespace {

SyntheticPair make_pair(int size) {
  SyntheticCase c;
  c.seed = 7;
  c.width = c.height = size;
  c.truth = {3.5, -2.25, 4.0};
  return generate_case(c);
}

void BM_Histogram(benchmark::State& state) {
  const SyntheticPair p = make_pair(256);
  const auto mode = static_cast<Interpolation>(state.range(0));
  JointSaliencyMap jsm(256, 256, 256, 256);
  for (int y = 0; y < 256; ++y)
    for (int x = 0; x < 256; ++x) jsm.set(x, y, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_weighted_histogram(p.reference, p.floating, p.truth, jsm, mode));
  }
  state.SetLabel(std::string(to_string(mode)));
}
BENCHMARK(BM_Histogram)
    ->Arg(static_cast<int>(Interpolation::kNearest))
    ->Arg(static_cast<int>(Interpolation::kBilinear))
    ->Arg(static_cast<int>(Interpolation::kPartialVolume));

void BM_RsvField(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const SyntheticPair p = make_pair(size);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_rsv_field(p.reference, default_pyramid_levels(size, size), 0.02));
  }
}
BENCHMARK(BM_RsvField)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ComputeJsm(benchmark::State& state) {
  const SyntheticPair p = make_pair(256);
  const RsvResult r = build_rsv_field(p.reference, 4, 0.02);
  const RsvResult f = build_rsv_field(p.floating, 4, 0.02);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_jsm(r.field, f.field, p.truth));
  }
}
BENCHMARK(BM_ComputeJsm);

void BM_UpdateJsm(benchmark::State& state) {
  const SyntheticPair p = make_pair(256);
  const RsvResult r = build_rsv_field(p.reference, 4, 0.02);
  const RsvResult f = build_rsv_field(p.floating, 4, 0.02);
  const JointSaliencyMap jsm = compute_jsm(r.field, f.field, p.truth);
  const RigidTransform moved{p.truth.tx + 0.5, p.truth.ty - 0.25, p.truth.beta + 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(update_jsm(jsm, p.truth, moved));
  }
}
BENCHMARK(BM_UpdateJsm);

void BM_Register(benchmark::State& state) {
  const SyntheticPair p = make_pair(256);
  RegistrationConfig cfg;
  cfg.measure = static_cast<RegistrationMeasure>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(register_images(p.reference, p.floating, RigidTransform::identity(), cfg));
  }
  state.SetLabel(std::string(to_string(cfg.measure)));
}
BENCHMARK(BM_Register)
    ->Arg(static_cast<int>(RegistrationMeasure::kJMI))
    ->Arg(static_cast<int>(RegistrationMeasure::kNmiBaseline))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

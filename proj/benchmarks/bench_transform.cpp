#include <benchmark/benchmark.h>

#include "gclm/profile.hpp"
#include "gclm/specfun.hpp"
#include "gclm/transform.hpp"

namespace {

void BM_F(benchmark::State& state) {
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gclm::specfun::F(t));
    t += 1e-6;
  }
}
BENCHMARK(BM_F);

void BM_apply_T(benchmark::State& state) {
  auto f = gclm::profile::make_profile(gclm::profile::SeedKind::SeedLorentzian);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gclm::transform::apply_T(f));
  }
}
BENCHMARK(BM_apply_T)->Unit(benchmark::kMillisecond);

void BM_compute_Q(benchmark::State& state) {
  auto f = gclm::profile::make_profile(gclm::profile::SeedKind::FHalf);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gclm::transform::compute_Q(f));
  }
}
BENCHMARK(BM_compute_Q)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

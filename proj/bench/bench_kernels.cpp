// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>
#include <map>

#include "so3kin/reference.hpp"

using namespace so3kin;

namespace {

struct Fixture {
  RateProfile profile;
  Trajectory trajectory;
};

const Fixture& fixture(std::size_t steps) {
  static std::map<std::size_t, Fixture> cache;
  auto it = cache.find(steps);
  if (it == cache.end()) {
    const double dt = 1e-4;
    std::vector<RateSample> samples;
    for (std::size_t k = 0; k <= steps / 10; ++k) {
      const double t = static_cast<double>(k) * dt * 10.0;
      samples.push_back({t, {Vec3(std::sin(t), std::cos(t), 0.5)}});
    }
    RateProfile profile(std::move(samples));
    Trajectory traj = propagate(RotationMatrix::identity(), profile, dt, Method::Euler);
    it = cache.emplace(steps, Fixture{std::move(profile), std::move(traj)}).first;
  }
  return it->second;
}

void BM_ResidualParallel(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(finite_difference_residual(f.trajectory, f.profile).max_residual);
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_ResidualSerial(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::finite_difference_residual(f.trajectory, f.profile).max_residual);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DriftParallel(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(drift_report(f.trajectory).max_ortho_err);
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_DriftSerial(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::drift_report(f.trajectory).max_ortho_err);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ResidualSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ResidualParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DriftSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DriftParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

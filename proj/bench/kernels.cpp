// Serial reference against the OpenMP path for the data-parallel kernels.
// The second argument of every benchmark is the policy: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "skewlie/funcspace.hpp"
#include "skewlie/oracle.hpp"
#include "skewlie/random.hpp"
#include "skewlie/reconstruct.hpp"
#include "skewlie/twolocal.hpp"

using namespace skewlie;

namespace {

Exec policy(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_ExtractionOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_extraction_identity(n, 3, default_oracle_cap, policy(state)));
}
BENCHMARK(BM_ExtractionOracle)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_WitnessScan(benchmark::State& state) {
  const Ring& f = Ring::prime_field(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  // s_12 -> s_12 has no witness, so the whole space is scanned.
  const SkewMatrix s = s_unit(f, n, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_witness_nonexistence(s, s, 3, default_oracle_cap, policy(state)));
}
BENCHMARK(BM_WitnessScan)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const Ring& q = Ring::rational();
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const BasisImageTable table = BasisImageTable::forward(random_skew(q, n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_generator(table, policy(state)));
}
BENCHMARK(BM_Assemble)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_TwoLocalCheck(benchmark::State& state) {
  const Ring& f = Ring::prime_field(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const TwoLocalModel model = TwoLocalModel::inner(random_skew(f, n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(check_two_local(model, 64, 3, policy(state)));
}
BENCHMARK(BM_TwoLocalCheck)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_PerOmega(benchmark::State& state) {
  SpatialSetting setting(static_cast<std::size_t>(state.range(0)), 5, Ring::rational());
  Rng rng(3);
  const BasisImageTable table = BasisImageTable::forward(random_skew(setting.ambient(), 5, rng));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_per_omega(setting, table, policy(state)));
}
BENCHMARK(BM_PerOmega)->ArgsProduct({{4, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Serial reference vs OpenMP kernels. The `threads` argument 0 means the OpenMP default.

#include <benchmark/benchmark.h>

#include "wseq/montecarlo.hpp"
#include "wseq/poly.hpp"
#include "wseq/search.hpp"
#include "wseq/tables.hpp"

namespace {

using namespace wseq;

// Second row of Table 1 (k = 15, ell = 11), well under a second per extraction.
const TableRow& table_row() { return reference_rows().at(1); }

const FactorSystem& table_system() {
  static const FactorSystem sys = [] {
    const TableRow& r = table_row();
    return build_factor_system(certificate_family(r.variant, r.scope()), {r.k, r.t, r.ell});
  }();
  return sys;
}

// Spreads the total degree as evenly as possible over the variables.
Monomial balanced_target(const FactorSystem& sys) {
  const int d = static_cast<int>(sys.degree());
  std::vector<int> e(sys.num_vars, d / sys.num_vars);
  for (int i = 0; i < d % sys.num_vars; ++i) ++e[sys.num_vars - 1 - i];
  return Monomial{e};
}

void BM_CoefficientBaseline(benchmark::State& state) {
  const auto sys = build_factor_system(Family::Q, {0, 4, 6});
  const Monomial target = balanced_target(sys);
  for (auto _ : state) benchmark::DoNotOptimize(coefficient_baseline(sys, target));
}
BENCHMARK(BM_CoefficientBaseline)->Unit(benchmark::kMillisecond);

void BM_CoefficientIntervalDp(benchmark::State& state) {
  CoefficientOptions opts;
  opts.method = CoefficientMethod::interval_dp;
  opts.threads = static_cast<int>(state.range(0));
  const Monomial& target = table_row().monomial;
  for (auto _ : state) benchmark::DoNotOptimize(coefficient_interval_dp(table_system(), target, opts));
}
BENCHMARK(BM_CoefficientIntervalDp)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_ExhaustSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_check_serial(Modulus(13), 3, 4, 12));
}
BENCHMARK(BM_ExhaustSerial)->Unit(benchmark::kMillisecond);

void BM_ExhaustParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_check(Modulus(13), 3, 4, 12, {}, threads));
}
BENCHMARK(BM_ExhaustParallel)->Arg(0)->Unit(benchmark::kMillisecond);

const TrialConfig kTrials{1009, 20, 4, 200000, 42};

void BM_MonteCarloSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(estimate_failure_probability_serial(kTrials));
}
BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond);

void BM_MonteCarloParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_failure_probability(kTrials, threads));
}
BENCHMARK(BM_MonteCarloParallel)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

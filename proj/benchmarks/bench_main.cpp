#include <benchmark/benchmark.h>

#include "frog/certify.hpp"
#include "frog/genfun.hpp"
#include "frog/interval.hpp"
#include "frog/params.hpp"
#include "frog/sim.hpp"
#include "frog/u_dist.hpp"

using frog::Rational;

static void BM_ExpEnclosure(benchmark::State& state) {
  const auto prec = static_cast<frog::Precision>(state.range(0));
  const Rational q(-355, 113);
  for (auto _ : state) benchmark::DoNotOptimize(frog::exp_enclosure(q, prec));
}
BENCHMARK(BM_ExpEnclosure)->Arg(64)->Arg(128)->Arg(512)->Arg(2048);

static void BM_SValues(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto x = frog::Interval::from_rational(Rational(3, 7));
  const auto y = frog::Interval::from_rational(Rational(5, 11));
  for (auto _ : state) benchmark::DoNotOptimize(frog::s_values(d, x, y));
}
BENCHMARK(BM_SValues)->Arg(2)->Arg(8)->Arg(13)->Arg(40);

static void BM_BuildG(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto params = frog::derive_params(d, Rational(2, 5));
  for (auto _ : state) benchmark::DoNotOptimize(frog::build_g(params));
}
BENCHMARK(BM_BuildG)->Arg(2)->Arg(5)->Arg(8);

static void BM_FEvaluator(benchmark::State& state) {
  const frog::FEvaluator f(frog::derive_params(static_cast<int>(state.range(0)), Rational(1, 4)));
  double lambda = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f(lambda));
    lambda = lambda > 5.0 ? 0.0 : lambda + 0.01;
  }
}
BENCHMARK(BM_FEvaluator)->Arg(4)->Arg(13)->Arg(40);

static void BM_CertifyTable(benchmark::State& state) {
  const std::pair<int, Rational> cases[] = {{2, Rational(55, 159)}, {5, Rational(23, 94)}, {9, Rational(20, 93)}};
  const auto& [d, p] = cases[state.range(0)];
  const frog::ExpPoly g = frog::build_g(frog::derive_params(d, p));
  for (auto _ : state) benchmark::DoNotOptimize(frog::certify_sup_below_one(g));
  state.SetLabel("d=" + std::to_string(d));
}
BENCHMARK(BM_CertifyTable)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_SimulateSfm(benchmark::State& state) {
  frog::SimConfig cfg;
  cfg.depth = static_cast<int>(state.range(0));
  cfg.replications = 20;
  for (auto _ : state) benchmark::DoNotOptimize(frog::simulate_sfm(2, 0.4, frog::InitMeasure::one_per_site(), cfg));
}
BENCHMARK(BM_SimulateSfm)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_SampleU(benchmark::State& state) {
  const auto params = frog::derive_params(4, Rational(1, 4));
  auto rng = frog::replication_rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(frog::sample_u(params, 1.5, rng));
}
BENCHMARK(BM_SampleU);
BENCHMARK_MAIN();

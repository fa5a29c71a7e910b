#include <benchmark/benchmark.h>

#include "tmdyn/analysis.hpp"
#include "tmdyn/analytic.hpp"
#include "tmdyn/embedding.hpp"
#include "tmdyn/ode.hpp"
#include "tmdyn/simulator.hpp"

namespace {

tmdyn::TMConfig double_crossing() {
  tmdyn::TMConfig c;
  c.v_norm = 100.0;
  c.rho = 0.75;
  c.delta_plus = 0.1;
  c.delta_minus = 0.5;
  c.eta = 0.03;
  c.t_pm = 0.9;
  c.m_star_plus = tmdyn::m_star_plus_for_alpha(0.343, c.delta_plus);
  c.m_star_minus = tmdyn::m_star_minus_for_alpha(0.12, c.delta_minus);
  return c;
}

void BM_ClosedFormState(benchmark::State& state) {
  const tmdyn::ClosedFormSolution sol(double_crossing());
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sol.state(t));
    t += 0.37;
  }
}
BENCHMARK(BM_ClosedFormState);

void BM_ClosedFormTrajectory(benchmark::State& state) {
  const auto cfg = double_crossing();
  const auto grid = tmdyn::default_grid(cfg, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tmdyn::closed_form_trajectory(cfg, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClosedFormTrajectory)->Arg(400)->Arg(4000);

void BM_Rk4Integrate(benchmark::State& state) {
  const auto cfg = double_crossing();
  for (auto _ : state) benchmark::DoNotOptimize(tmdyn::integrate(cfg));
}
BENCHMARK(BM_Rk4Integrate)->Unit(benchmark::kMillisecond);

void BM_SgdStep(benchmark::State& state) {
  const auto cfg = double_crossing();
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto emb = tmdyn::construct_embedding(cfg, d);
  const auto mix = tmdyn::two_cluster_mixture(cfg, emb);
  tmdyn::Xoshiro256 rng(7);
  tmdyn::NormalSampler normal;
  tmdyn::StudentState student{std::vector<double>(d, 0.0), 0};
  tmdyn::Example ex;
  for (auto _ : state) {
    tmdyn::sample_example(mix, rng, normal, ex);
    tmdyn::sgd_step(student, ex, cfg.eta);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SgdStep)->Arg(100)->Arg(1000)->Arg(10000);

void BM_DetectCrossings(benchmark::State& state) {
  const auto cfg = double_crossing();
  for (auto _ : state) benchmark::DoNotOptimize(tmdyn::detect_crossings(cfg));
}
BENCHMARK(BM_DetectCrossings)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

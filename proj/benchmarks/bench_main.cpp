#include <benchmark/benchmark.h>

#include <vector>

#include "twc/bounds.hpp"
#include "twc/channel.hpp"
#include "twc/closedform.hpp"
#include "twc/info.hpp"
#include "twc/isd.hpp"
#include "twc/poisson.hpp"

using namespace twc;

namespace {

void BM_ConditionalMi(benchmark::State& state) {
  const auto ch = examples::shannon_table2();
  const std::vector<double> joint{0.4, 0.1, 0.2, 0.3};
  for (auto _ : state)
    benchmark::DoNotOptimize(info::conditional_mi(joint, ch, info::Direction::one_to_two));
}
BENCHMARK(BM_ConditionalMi);

void BM_InnerSweep(benchmark::State& state) {
  const auto ch = examples::binary_multiplier();
  bounds::OptimizerConfig cfg;
  cfg.weights = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(bounds::inner_sweep(ch, InputConstraint::none(), InputConstraint::none(), cfg));
}
BENCHMARK(BM_InnerSweep)->Arg(9)->Arg(33)->Unit(benchmark::kMillisecond);

void BM_OuterSweep(benchmark::State& state) {
  const auto ch = examples::shannon_table2();
  bounds::OptimizerConfig cfg;
  cfg.weights = static_cast<std::size_t>(state.range(0));
  const std::vector<InputConstraint> none;
  for (auto _ : state) benchmark::DoNotOptimize(bounds::outer_sweep(ch, none, cfg));
}
BENCHMARK(BM_OuterSweep)->Arg(9)->Arg(33)->Unit(benchmark::kMillisecond);

void BM_ProbeC2(benchmark::State& state) {
  const auto ch = examples::shannon_table2();
  const bounds::OptimizerConfig cfg;
  isd::C2Options opts;
  opts.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(isd::probe_c2(ch, cfg, nullptr, opts));
}
BENCHMARK(BM_ProbeC2)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_PoissonFig3(benchmark::State& state) {
  poisson::Fig3Options opts;
  opts.grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(poisson::fig3_dataset(opts));
}
BENCHMARK(BM_PoissonFig3)->Arg(11)->Arg(31)->Unit(benchmark::kMillisecond);

void BM_ExpQuadrature(benchmark::State& state) {
  const auto law = closedform::exp_saddle_input(3.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(closedform::exp_mi_quadrature(law, 1.0));
}
BENCHMARK(BM_ExpQuadrature)->Unit(benchmark::kMillisecond);

void BM_InputDepGaussianCbar(benchmark::State& state) {
  closedform::InputDepGaussianParams p;
  p.support = {0.0, 0.5, 1.0, 1.5, 2.0};
  p.sigma_tilde_sq_2 = 0.3;
  const bounds::OptimizerConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(closedform::input_dep_gaussian_cbar(p, info::Direction::one_to_two, cfg));
}
BENCHMARK(BM_InputDepGaussianCbar)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

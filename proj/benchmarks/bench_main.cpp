#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "qgs/bounds.hpp"
#include "qgs/sampling.hpp"
#include "qgs/spectral.hpp"
#include "qgs/verify.hpp"

using namespace qgs;

namespace {

MetricGraph star(int arms) {
  GraphSpec spec;
  spec.vertices.push_back("c");
  for (int i = 0; i < arms; ++i) {
    spec.vertices.push_back("x" + std::to_string(i));
    spec.edges.push_back({"e" + std::to_string(i), "c", spec.vertices.back(), 1.0 + 0.1 * i, 0.0});
  }
  return MetricGraph::build(spec);
}

void BM_StarSpectrum(benchmark::State& state) {
  const auto g = star(static_cast<int>(state.range(0)));
  const auto y = standard_subspace(g);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_up_to(g, y, 200.0));
}
BENCHMARK(BM_StarSpectrum)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_FluxLoopSpectrum(benchmark::State& state) {
  GraphSpec spec{{"v"}, {{"o", "v", "v", 1.3, std::numbers::pi / 3}}};
  const auto g = MetricGraph::build(spec);
  const auto y = standard_subspace(g);
  const double lmax = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_up_to(g, y, lmax));
}
BENCHMARK(BM_FluxLoopSpectrum)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_OptimalGammaSvc(benchmark::State& state) {
  const auto set = svc_set(static_cast<int>(state.range(0))).set;
  for (auto _ : state) benchmark::DoNotOptimize(optimal_gamma(set, 1.0, 0.5));
}
BENCHMARK(BM_OptimalGammaSvc)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_OptimalRhoSvc(benchmark::State& state) {
  const auto set = svc_set(static_cast<int>(state.range(0))).set;
  for (auto _ : state) benchmark::DoNotOptimize(optimal_rho(set, 1.0, 4.0 / 9));
}
BENCHMARK(BM_OptimalRhoSvc)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const auto g = star(4);
  const auto pairs = eigenvalues_up_to(g, standard_subspace(g), 200.0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> c;
  for (std::size_t i = 0; i < pairs.size(); ++i) c.emplace_back(n(rng), n(rng));
  const auto f = spectral_sample(pairs, c);
  const auto profile = BernsteinProfile::power_law(pairs.back().lambda);
  for (auto _ : state) benchmark::DoNotOptimize(classify_edges(f, profile, 40));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

void BM_Audit(benchmark::State& state) {
  AuditOptions o;
  o.graphs = 4;
  o.trials_per_graph = 25;
  for (auto _ : state) benchmark::DoNotOptimize(run_audit(o));
}
BENCHMARK(BM_Audit)->Unit(benchmark::kMillisecond);

void BM_Thm21(benchmark::State& state) {
  double lambda = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(thm21_bound(0.5, 0.3, lambda));
    lambda += 1e-3;
  }
}
BENCHMARK(BM_Thm21);

}  // namespace

BENCHMARK_MAIN();

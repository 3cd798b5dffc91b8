#include <benchmark/benchmark.h>

#include "statespace/homotopy.hpp"
#include "statespace/linalg.hpp"
#include "statespace/metric.hpp"
#include "statespace/models.hpp"
#include "statespace/random.hpp"

using namespace statespace;

static void BM_HermEigJacobi(benchmark::State& state) {
  Rng rng(1);
  const ComplexMatrix a = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(a, {EigMethod::Jacobi}));
}
BENCHMARK(BM_HermEigJacobi)->Arg(4)->Arg(16)->Arg(64);

static void BM_HermEigTridiagonal(benchmark::State& state) {
  Rng rng(1);
  const ComplexMatrix a = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(a, {EigMethod::Tridiagonal}));
}
BENCHMARK(BM_HermEigTridiagonal)->Arg(16)->Arg(64)->Arg(256);

static void BM_PartialTrace(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const LatticeSpec spec = LatticeSpec::uniform(n, 2);
  const ComplexMatrix rho = random_density_matrix(rng, spec.total_dim());
  const std::vector<std::size_t> keep{0, n - 1};
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, spec, keep));
}
BENCHMARK(BM_PartialTrace)->Arg(4)->Arg(6)->Arg(8);

static void BM_WeakstarDist(benchmark::State& state) {
  Rng rng(3);
  const LatticeSpec spec({2, 2, 2});
  const ObservableFamily fam(spec, 63);
  const auto a = DensityMatrix::trusted(random_density_matrix(rng, 8));
  const auto b = DensityMatrix::trusted(random_density_matrix(rng, 8));
  for (auto _ : state) benchmark::DoNotOptimize(weakstar_dist(a, b, fam, 63));
}
BENCHMARK(BM_WeakstarDist);

static void BM_ContractGreatCircle(benchmark::State& state) {
  const auto loop = great_circle_loop(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(contract_loop_matrix(loop));
}
BENCHMARK(BM_ContractGreatCircle)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_DisentangleThreeQubits(benchmark::State& state) {
  Rng rng(4);
  const auto loop = random_loop(rng, 8, 32, 0.3);
  const LatticeSpec spec({2, 2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(disentangle_loop(loop, spec));
}
BENCHMARK(BM_DisentangleThreeQubits)->Unit(benchmark::kMillisecond);

static void BM_PumpGround(benchmark::State& state) {
  const PumpParams p{{0.0, 0.0, 1.0}, 0.3, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(pump_ground(p));
}
BENCHMARK(BM_PumpGround)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Chern(benchmark::State& state) {
  const auto bundle = berry_bundle(24, 24, 0);
  for (auto _ : state) benchmark::DoNotOptimize(chern_number(bundle));
}
BENCHMARK(BM_Chern)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

// Micro-benchmarks for the numerical kernels and the hot library paths.
#include <benchmark/benchmark.h>

#include <cmath>
#include <utility>
#include <vector>

#include "casym/asymmetry.hpp"
#include "casym/copulas.hpp"
#include "casym/numerics.hpp"
#include "casym/shockmodels.hpp"

namespace {

using namespace casym;

void BM_Integrate2dSmooth(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  const Field2D f = [](double x, double y) { return x * y * (1.0 - x); };
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate2d(f, Region::UnitSquare, 1.0, {tol, 0.0, 500000}));
}
BENCHMARK(BM_Integrate2dSmooth)->Arg(6)->Arg(8)->Arg(10);

void BM_Integrate2dAsymmetryField(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  const Copula c = cmu(2.0 / 3.0);
  const Field2D f = [&c](double x, double y) {
    return std::abs(c(x, y) - c(y, x));
  };
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate2d(f, Region::TriangleXLeY, 1.0, {tol, 0.0, 500000}));
}
BENCHMARK(BM_Integrate2dAsymmetryField)->Arg(6)->Arg(8);

void BM_SupOnSquare(benchmark::State& state) {
  const Copula c = elammu(std::sqrt(2.0) / 2.0, 1.0);
  const Field2D f = [&c](double x, double y) {
    return std::abs(c(x, y) - c(y, x));
  };
  for (auto _ : state) benchmark::DoNotOptimize(sup_on_square(f));
}
BENCHMARK(BM_SupOnSquare);

void BM_CopulaEval(benchmark::State& state) {
  std::vector<Copula> cs = {cmu(0.5), qab(0.4, 0.5),
                            marshall(marshall_f_mu(0.5), jump_to_one()),
                            survival(transpose(elammu(0.7, 0.4)))};
  const Copula c = cs[static_cast<std::size_t>(state.range(0))];
  double x = 0.12, y = 0.77;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c(x, y));
    x = x < 0.98 ? x + 0.013 : 0.01;  // walk the square to defeat caching
    y = y > 0.02 ? y - 0.017 : 0.99;
  }
}
BENCHMARK(BM_CopulaEval)->DenseRange(0, 3);

void BM_ShockSampling(benchmark::State& state) {
  const ShockModelSpec spec = rmm_elammu_spec(std::sqrt(2.0) / 2.0, 1.0);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample(spec, n, 42));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(n));
}
BENCHMARK(BM_ShockSampling)->Arg(1000)->Arg(10000);

void BM_EmpiricalSupDistance(benchmark::State& state) {
  const ShockModelSpec spec = marshall_cmu_spec(2.0 / 3.0);
  const auto s = sample(spec, static_cast<std::size_t>(state.range(0)), 1);
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : s) pts.push_back({p.cu, p.cv});
  for (auto _ : state)
    benchmark::DoNotOptimize(empirical_sup_distance(pts, spec.target));
}
BENCHMARK(BM_EmpiricalSupDistance)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();

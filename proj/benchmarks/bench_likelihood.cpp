#include <benchmark/benchmark.h>

#include "gridmrf/covariance.hpp"
#include "gridmrf/likelihood.hpp"
#include "gridmrf/precision.hpp"

using namespace gridmrf;

namespace {

struct Case {
  GridMask mask;
  Eigen::VectorXd y;
  Case(int n, int nu) : mask(GridMask::complete(n, n)) {
    ModelParams p{.tau = 1.0, .kappa = 0.2, .nu = nu};
    y = unconditional_sim(p, mask, 3, 42);
  }
};

void BM_loglik_exact(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  int nu = static_cast<int>(state.range(1));
  Case c(n, nu);
  ModelParams p{.tau = 1.0, .kappa = 0.2, .nu = nu};
  for (auto _ : state)
    benchmark::DoNotOptimize(loglik_exact(p, c.mask, c.y).loglik);
}

void BM_loglik_nugget(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  int nu = static_cast<int>(state.range(1));
  Case c(n, nu);
  ModelParams p{.tau = 1.0, .kappa = 0.2, .nu = nu, .sigma2 = 0.01};
  for (auto _ : state)
    benchmark::DoNotOptimize(loglik_nugget_lean(p, c.mask, c.y).loglik);
}

void BM_loglik_approx(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  int nu = static_cast<int>(state.range(1));
  Case c(n, nu);
  ModelParams p{.tau = 1.0, .kappa = 0.2, .nu = nu};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        loglik_approx(p, c.mask, c.y, ApproxScheme::precision).loglik);
}

void BM_covariance_table(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ModelParams p{.tau = 1.0, .kappa = 0.2, .nu = 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(table_for_grid(p, n, n, 3).values(0, 0));
}

}  // namespace

BENCHMARK(BM_loglik_exact)
    ->Args({100, 0})->Args({200, 0})->Args({100, 1})->Args({200, 1})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_loglik_nugget)
    ->Args({100, 0})->Args({200, 0})->Args({100, 1})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_loglik_approx)
    ->Args({100, 0})->Args({200, 0})->Args({100, 1})->Args({200, 1})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_covariance_table)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "levscat/asymptotics.hpp"
#include "levscat/radial.hpp"
#include "levscat/specfun.hpp"

namespace {

void BM_riccati_bessel(benchmark::State& state) {
  const double nu = state.range(0) + 0.5;
  double x = 0.7;
  for (auto _ : state) {
    auto rb = levscat::specfun::riccati_bessel(nu, x);
    benchmark::DoNotOptimize(rb);
    x = x < 40.0 ? x + 1e-3 : 0.7;
  }
}
BENCHMARK(BM_riccati_bessel)->Arg(0)->Arg(8)->Arg(32);

void BM_phase_shift(benchmark::State& state) {
  const auto pot = levscat::Potential::square_well(3, 4.0, 1.0);
  const levscat::SolverSettings s{};
  const double lam = static_cast<double>(state.range(0));
  for (auto _ : state) {
    double d = levscat::phase_shift(pot, {3, 0}, lam, s);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_phase_shift)->Arg(1)->Arg(100);

void BM_heat_coefficient_general(benchmark::State& state) {
  const auto pot = levscat::Potential::gaussian(3, -2.0, 1.0);
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double a = levscat::asym::heat_coefficient_general(pot, j);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_heat_coefficient_general)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();

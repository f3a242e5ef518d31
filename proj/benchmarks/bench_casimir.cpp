#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "casimir/casimir.hpp"

using namespace casimir;

namespace {

ForceQuery query(Medium medium, double h, BoundaryCondition bc = BoundaryCondition::Field) {
  ForceQuery q;
  q.medium = std::move(medium);
  q.bc = bc;
  q.separation = h;
  return q;
}

void BM_ForceFieldVacuum(benchmark::State& state) {
  const ForceQuery q = query(Medium::vacuum(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(force_field_bc(q));
}
BENCHMARK(BM_ForceFieldVacuum);

void BM_ForceFieldLorentz(benchmark::State& state) {
  const ForceQuery q = query(Medium::dielectric(Lorentz{1.0, 1.0, 0.1}), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(force_field_bc(q));
}
BENCHMARK(BM_ForceFieldLorentz);

// Nested 2D quadrature behind the polarization boundary condition.
void BM_ForcePolarizationLorentz(benchmark::State& state) {
  const ForceQuery q = query(Medium::dielectric(Lorentz{1.0, 1.0, 0.5}), 1.0,
                             BoundaryCondition::Polarization);
  for (auto _ : state) benchmark::DoNotOptimize(force_polarization_bc(q));
}
BENCHMARK(BM_ForcePolarizationLorentz)->Unit(benchmark::kMillisecond);

void BM_Polylog3(benchmark::State& state) {
  double z = 0.0;
  for (auto _ : state) {
    z = z < 0.99 ? z + 1e-3 : 0.0;
    benchmark::DoNotOptimize(polylog(3, z));
  }
}
BENCHMARK(BM_Polylog3);

// chi_bar on a tabulated coupling; the argument is the grid size.
void BM_TabulatedChiBar(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> w(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 1e-3 + 10.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    const double d = w[i] * w[i] - 1.0;
    g[i] = (2.0 / std::numbers::pi) * 0.1 * w[i] * w[i] / (d * d + 0.01 * w[i] * w[i]);
  }
  const SusceptibilityModel model = TabulatedCoupling(w, g);
  for (auto _ : state) benchmark::DoNotOptimize(chi_bar(model, 0.7));
}
BENCHMARK(BM_TabulatedChiBar)->RangeMultiplier(10)->Range(100, 10000);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "uscpol/classical.hpp"
#include "uscpol/correlator.hpp"
#include "uscpol/hopfield.hpp"
#include "uscpol/potential.hpp"
#include "uscpol/tomography.hpp"

using namespace uscpol;

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

SystemParams fig5() {
  SystemParams p;
  p.Omega_d = 1.0;
  p.omega_e = 0.7;
  p.Omega_e = 0.2;
  p.gamma_c = 0.01;
  p.kappa_d = 0.05;
  p.kappa_e = 0.05;
  return p;
}

void BM_PolaritonFrequencies(benchmark::State& state) {
  const SystemParams p = fig5();
  double wk = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(polariton_frequencies(p, wk));
    wk = wk < 1e3 ? wk * 1.001 : 1e-3;
  }
}
BENCHMARK(BM_PolaritonFrequencies);

void BM_KernelK(benchmark::State& state) {
  const SystemParams p = fig5();
  const double w = gap_probe_frequency(p, 2.0);
  double wk = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_K(p, wk, w));
    wk = wk < 1e3 ? wk * 1.001 : 1e-3;
  }
}
BENCHMARK(BM_KernelK);

void BM_TransmissionMap(benchmark::State& state) {
  const SystemParams p = fig5();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ks = linspace(0.02, 4.0, n);
  const auto ws = linspace(0.01, 3.0, 5 * n);
  for (auto _ : state) benchmark::DoNotOptimize(transmission_map(p, ks, ws));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(ks.size() * ws.size()));
}
BENCHMARK(BM_TransmissionMap)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_EffectivePotential(benchmark::State& state) {
  const SystemParams p = fig5();
  const double w = gap_probe_frequency(p, 2.0);
  std::vector<double> r;
  for (int i = 0; i < 200; ++i) r.push_back(0.05 * std::pow(120.0, i / 199.0));
  PotentialOptions opt;
  opt.fft_size = static_cast<std::size_t>(state.range(0));
  opt.normalize = false;
  for (auto _ : state) benchmark::DoNotOptimize(effective_potential(p, w, r, opt));
}
BENCHMARK(BM_EffectivePotential)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_HankelOracle(benchmark::State& state) {
  const SystemParams p = fig5();
  const double w = gap_probe_frequency(p, 2.0);
  const std::vector<double> r{0.1, 1.0, 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(effective_potential_hankel(p, w, r));
}
BENCHMARK(BM_HankelOracle)->Unit(benchmark::kMillisecond);

void BM_TomographySweep(benchmark::State& state) {
  const SystemParams p = fig5();
  auto we = linspace(0.2, 0.95, 20);
  const auto up = linspace(1.5, 2.9, 20);
  we.insert(we.end(), up.begin(), up.end());
  const auto ks = linspace(0.02, 4.0, 200);
  const auto ws = linspace(0.01, 3.0, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(tomography_sweep(p, we, ks, ws));
}
BENCHMARK(BM_TomographySweep)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();

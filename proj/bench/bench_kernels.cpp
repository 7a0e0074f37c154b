// Serial reference vs OpenMP kernels.
//
//   ./build/bench/bench_kernels --benchmark_filter=Amplitude

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "pst/inverse_spectral.hpp"
#include "pst/kernels.hpp"
#include "pst/polyfamilies.hpp"

namespace {

struct GridFixture {
  std::vector<double> lam, w, times;
  std::vector<std::complex<double>> out;

  explicit GridFixture(std::size_t points) {
    const auto sd = pst::persymmetric_weights(pst::gap_family_spectrum(20, 4));
    lam = sd.eigenvalues();
    w = sd.weights();
    times.resize(points);
    for (std::size_t i = 0; i < points; ++i) times[i] = 1e-4 * static_cast<double>(i);
    out.resize(points);
  }
};

void BM_AmplitudeSerial(benchmark::State& state) {
  GridFixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    pst::kernels::amplitude_grid_serial(f.lam, f.w, false, f.times, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AmplitudeParallel(benchmark::State& state) {
  GridFixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    pst::kernels::amplitude_grid_parallel(f.lam, f.w, false, f.times, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BisectSerial(benchmark::State& state) {
  const auto J = pst::krawtchouk_chain(static_cast<int>(state.range(0)));
  std::vector<double> out(J.n_sites());
  for (auto _ : state) {
    pst::kernels::bisect_eigenvalues_serial(J.diag(), J.offdiag(), out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_BisectParallel(benchmark::State& state) {
  const auto J = pst::krawtchouk_chain(static_cast<int>(state.range(0)));
  std::vector<double> out(J.n_sites());
  for (auto _ : state) {
    pst::kernels::bisect_eigenvalues_parallel(J.diag(), J.offdiag(), out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_AmplitudeSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_AmplitudeParallel)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_BisectSerial)->Arg(40)->Arg(400);
BENCHMARK(BM_BisectParallel)->Arg(40)->Arg(400);

BENCHMARK_MAIN();

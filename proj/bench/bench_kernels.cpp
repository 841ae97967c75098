// Serial reference kernels against their OpenMP counterparts.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qudit_mbqc/algebra.hpp"
#include "qudit_mbqc/kernels.hpp"
#include "qudit_mbqc/state.hpp"

namespace {

using namespace qmbqc;

struct Fixture {
  kernels::Layout layout;
  std::vector<Complex> in;
  std::vector<Complex> out;

  Fixture(int d, int n) : layout{d, n} {
    std::mt19937_64 rng(42);
    const StateVector s = random_state(d, n, rng);
    in.assign(s.amplitudes().data(), s.amplitudes().data() + s.size());
    out.resize(in.size());
  }
};

template <bool Parallel>
void BM_ApplyLocal(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const Operator op = gen_x(QuditDim(f.layout.d)) * gen_z(QuditDim(f.layout.d));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::apply_local(f.layout, f.in, f.out, f.layout.n_sites / 2, op);
    } else {
      kernels::serial::apply_local(f.layout, f.in, f.out, f.layout.n_sites / 2, op);
    }
    benchmark::DoNotOptimize(f.out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(f.in.size()));
}

template <bool Parallel>
void BM_ProjectSite(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const Amplitudes dir = x_eigenvector(QuditDim(f.layout.d), 1).amplitudes();
  const std::span<const Complex> direction(dir.data(), static_cast<std::size_t>(dir.size()));
  for (auto _ : state) {
    double p = 0.0;
    if constexpr (Parallel) {
      p = kernels::parallel::project_site(f.layout, f.in, f.out, 1, direction);
    } else {
      p = kernels::serial::project_site(f.layout, f.in, f.out, 1, direction);
    }
    benchmark::DoNotOptimize(p);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(f.in.size()));
}

template <bool Parallel>
void BM_PhaseGate(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::apply_phase_gate(f.layout, f.in, 1, f.layout.n_sites);
    } else {
      kernels::serial::apply_phase_gate(f.layout, f.in, 1, f.layout.n_sites);
    }
    benchmark::DoNotOptimize(f.in.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(f.in.size()));
}

template <bool Parallel>
void BM_ApplySites(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const QuditDim d(f.layout.d);
  const Operator op = kron(gen_x(d), gen_z(d));
  const std::vector<int> sites{2, f.layout.n_sites - 1};
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::apply_sites(f.layout, f.in, f.out, sites, op);
    } else {
      kernels::serial::apply_sites(f.layout, f.in, f.out, sites, op);
    }
    benchmark::DoNotOptimize(f.out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(f.in.size()));
}

#define QMBQC_SIZES ->Args({2, 20})->Args({3, 12})->Args({5, 8})->Unit(benchmark::kMillisecond)

BENCHMARK(BM_ApplyLocal<false>) QMBQC_SIZES;
BENCHMARK(BM_ApplyLocal<true>) QMBQC_SIZES;
BENCHMARK(BM_ProjectSite<false>) QMBQC_SIZES;
BENCHMARK(BM_ProjectSite<true>) QMBQC_SIZES;
BENCHMARK(BM_PhaseGate<false>) QMBQC_SIZES;
BENCHMARK(BM_PhaseGate<true>) QMBQC_SIZES;
BENCHMARK(BM_ApplySites<false>) QMBQC_SIZES;
BENCHMARK(BM_ApplySites<true>) QMBQC_SIZES;

}  // namespace

BENCHMARK_MAIN();

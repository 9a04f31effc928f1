#include <benchmark/benchmark.h>

#include "ellterm/arith.hpp"
#include "ellterm/elliptic.hpp"
#include "ellterm/gamma_afe.hpp"
#include "ellterm/lfunctions.hpp"

using namespace ellterm;

namespace {

// Largest fundamental discriminant with |D| <= bound, negative branch.
long long fundamental_below(long long bound) {
  for (long long d = -bound; d < 0; ++d)
    if (arith::is_fundamental_discriminant(d)) return d;
  return -4;
}

void BM_Kronecker(benchmark::State& state) {
  long long acc = 0;
  for (auto _ : state) {
    for (long long n = 1; n <= 1000; ++n) acc += arith::kronecker(-10004, n);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Kronecker);

void BM_LValueDirect(benchmark::State& state) {
  long long D = fundamental_below(state.range(0));
  lfun::QuadraticCharacter chi(D);
  long long n = lfun::default_series_length(chi.period());
  for (auto _ : state) {
    auto l = lfun::l_value_direct(chi, 1.0, n);
    benchmark::DoNotOptimize(l.value);
  }
  state.SetLabel("D=" + std::to_string(D));
}
BENCHMARK(BM_LValueDirect)->Arg(100)->Arg(10000)->Arg(1000000);

void BM_KernelBuild(benchmark::State& state) {
  auto shape = afe::odd_quadratic_shape();
  for (auto _ : state) {
    auto k = afe::CutoffKernel::make_v(shape, 1.0);
    benchmark::DoNotOptimize(k.tmax());
  }
}
BENCHMARK(BM_KernelBuild);

void BM_KernelEval(benchmark::State& state) {
  auto k = afe::CutoffKernel::make_v(afe::odd_quadratic_shape(), 1.0);
  double y = 0.37;
  for (auto _ : state) {
    auto e = k.eval(y);
    benchmark::DoNotOptimize(e.value);
  }
}
BENCHMARK(BM_KernelEval);

void BM_AfeQuadratic(benchmark::State& state) {
  long long D = fundamental_below(state.range(0));
  for (auto _ : state) {
    auto r = afe::afe_quadratic(D, 1.0);
    benchmark::DoNotOptimize(r.value);
  }
  state.SetLabel("D=" + std::to_string(D));
}
BENCHMARK(BM_AfeQuadratic)->Arg(100)->Arg(10000);

void BM_PadicProduct(benchmark::State& state) {
  auto classes = elliptic::enumerate_elliptic(2, 1, state.range(0));
  for (auto _ : state) {
    mpq_class acc = 0;
    for (const auto& c : classes) acc += elliptic::padic_orbital_product(c);
    benchmark::DoNotOptimize(acc.get_d());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(classes.size()));
}
BENCHMARK(BM_PadicProduct)->Arg(100)->Arg(1000);

void BM_LfunSumIdentity(benchmark::State& state) {
  auto cls = elliptic::make_class(0, 1, 2, 2);  // delta = -16
  for (auto _ : state) {
    auto r = elliptic::verify_lfun_sum(cls, 1e-6);
    benchmark::DoNotOptimize(r.diff);
  }
}
BENCHMARK(BM_LfunSumIdentity);

}  // namespace

BENCHMARK_MAIN();

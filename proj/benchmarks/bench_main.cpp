#include <benchmark/benchmark.h>

#include "cyclopoint/cyclotomic.hpp"
#include "cyclopoint/zx.hpp"

namespace {

using namespace cyclopoint;

void bm_cyclo_mul(benchmark::State& state) {
  const long n = state.range(0);
  auto a = cyclo_add(cyclo_power(n, 1), cyclo_power(n, n - 1));
  auto b = cyclo_add(cyclo_power(n, 2), cyclo_from_rational(make_rational(1, 3)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cyclo_mul(a, b));
  }
}
BENCHMARK(bm_cyclo_mul)->Arg(12)->Arg(60)->Arg(240);

void bm_cyclo_inv(benchmark::State& state) {
  const long n = state.range(0);
  auto a = cyclo_add(cyclo_power(n, 1), cyclo_from_rational(Rational(3)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cyclo_inv(a));
  }
}
BENCHMARK(bm_cyclo_inv)->Arg(12)->Arg(60);

void bm_zx_gcd(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  zx::ZPoly common, a, b;
  for (int i = 0; i <= d; ++i) common.emplace_back(2 * i + 1);
  zx::normalize(common);
  zx::ZPoly ca{Int(3), Int(0), Int(1)}, cb{Int(-7), Int(5)};
  a = zx::mul(common, ca);
  b = zx::mul(common, cb);
  for (auto _ : state) {
    benchmark::DoNotOptimize(zx::gcd(a, b));
  }
}
BENCHMARK(bm_zx_gcd)->Arg(8)->Arg(32);

void bm_minimal_polynomial(benchmark::State& state) {
  const long n = state.range(0);
  auto e = cyclo_add(cyclo_power(n, 1), cyclo_power(n, n - 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimal_polynomial(e));
  }
}
BENCHMARK(bm_minimal_polynomial)->Arg(16)->Arg(40);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "csa/instance_io.hpp"
#include "csa/lattice.hpp"
#include "csa/order.hpp"
#include "csa/splitter.hpp"

using namespace csa;

namespace {

Algebra generated(std::size_t n, long D, std::uint64_t seed) {
  GenOptions g;
  g.n = n;
  g.seed = seed;
  if (D) {
    g.field.kind = FieldDescriptor::Kind::quadratic;
    g.field.D = D;
  }
  return gen_instance(g).algebra();
}

void BM_LLL(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  PrecisionGuard guard(128);
  std::mt19937_64 rng(1);
  std::vector<RealVector> b(m, RealVector(m));
  for (auto& r : b)
    for (auto& x : r) x = Real(static_cast<long>(rng() % 20001) - 10000) / 13;
  for (auto _ : state) benchmark::DoNotOptimize(lll_reduce(b, 0.99, 128));
}
BENCHMARK(BM_LLL)->Arg(4)->Arg(9)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_HNF(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<IntVector> rows(2 * m, IntVector(m));
  for (auto& r : rows)
    for (auto& x : r) x = static_cast<long>(rng() % 2001) - 1000;
  for (auto _ : state) benchmark::DoNotOptimize(hnf_and_det(rows));
}
BENCHMARK(BM_HNF)->Arg(4)->Arg(9)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MaximalOrder(benchmark::State& state) {
  const Algebra A = generated(static_cast<std::size_t>(state.range(0)), 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_order(A));
}
BENCHMARK(BM_MaximalOrder)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SplitM2(benchmark::State& state) {
  const Algebra A = generated(2, state.range(0), 1);
  SplitConfig cfg;
  cfg.deterministic = true;
  for (auto _ : state) benchmark::DoNotOptimize(split(A, cfg));
}
BENCHMARK(BM_SplitM2)->Arg(0)->Arg(5)->Arg(-1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "mtsim/attacks.hpp"
#include "mtsim/session.hpp"

using namespace mtsim;

namespace {

FunctionInstance make_instance(int n, int levels, Variant v) {
  return FunctionInstance(
      MultiplexerSpec::middle_default(n, levels, seed_from_u64(1)),
      Regime::Middle, v, seed_from_u64(2));
}

void BM_ActivationPath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MultiplexerSpec spec =
      MultiplexerSpec::middle_default(n, 2, seed_from_u64(1));
  Rng rng(3);
  std::vector<Point> points;
  for (int i = 0; i < 64; ++i) points.push_back(sample_layer(n, n / 2, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(activation_path(spec, points[i++ & 63]));
  }
}
BENCHMARK(BM_ActivationPath)->Arg(16)->Arg(64)->Arg(256);

void BM_Eval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FunctionInstance f = make_instance(n, 2, Variant::Yes);
  Rng rng(4);
  std::vector<Point> points;
  for (int i = 0; i < 64; ++i) points.push_back(sample_layer(n, n / 2, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(f.eval(points[i++ & 63]));
}
BENCHMARK(BM_Eval)->Arg(16)->Arg(64)->Arg(256);

void BM_StrongQuery(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FunctionInstance f = make_instance(n, 2, Variant::No);
  Rng rng(5);
  std::vector<Point> points;
  for (int i = 0; i < 64; ++i) points.push_back(sample_layer(n, n / 2, rng));
  std::size_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(f.strong_query(points[i++ & 63]));
}
BENCHMARK(BM_StrongQuery)->Arg(16)->Arg(64)->Arg(256);

void BM_OutcomeIngest(benchmark::State& state) {
  const int n = 64;
  const FunctionInstance f = make_instance(n, 2, Variant::Yes);
  Rng rng(6);
  std::vector<std::pair<Point, StrongResponse>> answered;
  for (int i = 0; i < 256; ++i) {
    const Point x = sample_layer(n, 28 + static_cast<int>(rng.below(9)), rng);
    answered.emplace_back(x, f.strong_query(x));
  }
  for (auto _ : state) {
    Outcome out(n, 2, f.spec().arities());
    for (const auto& [x, r] : answered) out.ingest(x, r);
    benchmark::DoNotOptimize(out.queries().size());
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_OutcomeIngest);

void BM_DeriveLiterals(benchmark::State& state) {
  const MultiplexerSpec spec =
      MultiplexerSpec::middle_default(64, 2, seed_from_u64(7));
  std::uint32_t a = 1;
  for (auto _ : state) {
    const EdgeAddress e{NodeAddress{{a}}};
    benchmark::DoNotOptimize(derive_literals(spec, e));
    a = a % 256 + 1;
  }
}
BENCHMARK(BM_DeriveLiterals);

void BM_ExactDistance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FunctionInstance f = make_instance(n, 2, Variant::No);
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_distance(eval_fn(f), n, 16));
}
BENCHMARK(BM_ExactDistance)->Arg(9)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

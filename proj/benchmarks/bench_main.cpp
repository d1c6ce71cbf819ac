#include <benchmark/benchmark.h>

#include "projsem/behavior.hpp"
#include "projsem/cli.hpp"
#include "projsem/indirect.hpp"
#include "projsem/interpreter.hpp"
#include "projsem/notations.hpp"
#include "projsem/pga.hpp"
#include "projsem/services.hpp"

using namespace projsem;

namespace {

EnvParams env_of(std::int64_t maxr, std::int64_t maxn) {
  EnvParams e;
  e.maxr = static_cast<std::uint32_t>(maxr);
  e.maxn = static_cast<std::uint32_t>(maxn);
  return e;
}

// A chain of k alternating tests, closed into a loop.
Program test_ladder(std::size_t k) {
  std::string text;
  for (std::size_t i = 0; i < k; ++i) text += (i % 2 ? "-a.c; " : "+a.b; ");
  text += "##1";
  return parse_program(text, Notation::Pgld);
}

void BM_Bisimilar(benchmark::State& state) {
  const Program p = test_ladder(static_cast<std::size_t>(state.range(0)));
  const ThreadGraph a = behavior(p, EnvParams{});
  const ThreadGraph b = interpret(p, EnvParams{});
  for (auto _ : state) benchmark::DoNotOptimize(bisimilar(a, b));
}
BENCHMARK(BM_Bisimilar)->RangeMultiplier(4)->Range(4, 256);

void BM_Minimize(benchmark::State& state) {
  const ThreadGraph t = behavior(test_ladder(static_cast<std::size_t>(state.range(0))), EnvParams{});
  for (auto _ : state) benchmark::DoNotOptimize(minimize(t));
}
BENCHMARK(BM_Minimize)->RangeMultiplier(4)->Range(4, 256);

void BM_ComposeRegisterFile(benchmark::State& state) {
  const EnvParams e = env_of(state.range(0), state.range(1));
  const Program p = parse_program("rf.set:1:2; -rf.eq:1:2; a.b; i##1", Notation::Pgldij);
  const ThreadGraph raw = behavior_pgld(pgldij_to_pgld(p, e));
  for (auto _ : state) benchmark::DoNotOptimize(compose_use(raw, "rf", register_file_init(e)));
}
BENCHMARK(BM_ComposeRegisterFile)->Args({1, 4})->Args({2, 8})->Args({3, 16});

void BM_ProjectionChain(benchmark::State& state) {
  const Notation n = static_cast<Notation>(state.range(0));
  GenConfig cfg;
  cfg.notation = n;
  cfg.max_len = 8;
  cfg.seed = 99;
  const Program p = generate(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(behavior(p, cfg.env));
  state.SetLabel(std::string(notation_name(n)));
}
BENCHMARK(BM_ProjectionChain)
    ->Arg(static_cast<int>(Notation::Pgldij))
    ->Arg(static_cast<int>(Notation::Pglcij))
    ->Arg(static_cast<int>(Notation::Pglddij))
    ->Arg(static_cast<int>(Notation::Pgldrj));

void BM_Difftest(benchmark::State& state) {
  cli::DifftestOptions opts;
  opts.notation = Notation::Pgldrj;
  opts.count = static_cast<std::size_t>(state.range(0));
  opts.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(cli::difftest(opts).passed);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Difftest)->Arg(100);

void BM_ExtractCanonical(benchmark::State& state) {
  const CanonicalForm cf = normalize(parse_pga("(+a.b; #3; -a.c; #2; a.b; !)w"));
  for (auto _ : state) benchmark::DoNotOptimize(extract_thread(cf));
}
BENCHMARK(BM_ExtractCanonical);

}  // namespace
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "formulas/analytic.hpp"
#include "formulas/counting.hpp"
#include "formulas/encoders.hpp"
#include "formulas/enumeration.hpp"
#include "formulas/rewrite_graph.hpp"

using namespace formulas;

static void BM_BuildFTables(benchmark::State& state) {
  for (auto _ : state) {
    FTables t = build_f_tables(static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(t.f.at(t.f.max_n()));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildFTables)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_Enumerate(benchmark::State& state) {
  Enumerator e;
  std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    mpz_class c = e.count(n, arithmetic_kinds);
    benchmark::DoNotOptimize(c.get_ui());
  }
}
BENCHMARK(BM_Enumerate)->DenseRange(8, 12, 2);

static void BM_ShortestDP(benchmark::State& state) {
  std::size_t limit = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto s = shortest_sizes(limit);
    benchmark::DoNotOptimize(s[limit]);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ShortestDP)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_EncodeScfSweep(benchmark::State& state) {
  for (auto _ : state) {
    std::size_t total = 0;
    for (std::uint64_t n = 2; n <= 2000; ++n) total += encode_scf(n).length;
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_EncodeScfSweep);

static void BM_EvalFTilde(benchmark::State& state) {
  static FTables tables = build_f_tables(400);
  PrecisionContext ctx{};
  ctx.activate();
  FormulaSeries series(tables.f, SeriesTruncation{}, 8);
  Real x = Real(1) / 5;
  for (auto _ : state) {
    BoundedValue v = series.eval_F_tilde(x);
    benchmark::DoNotOptimize(v.value.backend().data());
  }
}
BENCHMARK(BM_EvalFTilde);

static void BM_SolveXi(benchmark::State& state) {
  static FTables tables = build_f_tables(400);
  PrecisionContext ctx{};
  FormulaSeries series(tables.f, SeriesTruncation{}, 8);
  for (auto _ : state) {
    RootResult r = solve_xi(series, ctx);
    benchmark::DoNotOptimize(r.rho.backend().data());
  }
}
BENCHMARK(BM_SolveXi);

static void BM_BuildGraph(benchmark::State& state) {
  Enumerator e;
  std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    RewriteGraph g = build_graph(n, e);
    benchmark::DoNotOptimize(g.edge_count());
  }
}
BENCHMARK(BM_BuildGraph)->DenseRange(6, 9, 1);

BENCHMARK_MAIN();

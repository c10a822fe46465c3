#include <benchmark/benchmark.h>

#include "fci/verify.hpp"

using namespace fci;

namespace {

ExtensionSpec inverted_quasicyclic() {
  ExtensionSpec s;
  s.base = QuasiSpec({QuasiComponent{2, std::nullopt}, QuasiComponent{3, 2}});
  s.top_order = 2;
  s.d0 = LevelElement{1, std::nullopt, s.base.materialize(1).group.zero()};
  s.action.exponents.push_back(ExponentSpec{2, -1, std::nullopt});
  return s;
}

ExtensionSpec twisted_quasicyclic(std::int64_t t) {
  ExtensionSpec s;
  s.base = QuasiSpec({QuasiComponent{3, std::nullopt}});
  s.d0 = LevelElement{1, std::nullopt, s.base.materialize(1).group.zero()};
  s.action.exponents.push_back(ExponentSpec{3, t, std::nullopt});
  return s;
}

void BM_CentralizerClosedForm(benchmark::State& state) {
  const CyclicExtension g = twisted_quasicyclic(4).materialize(static_cast<int>(state.range(0)));
  const GElement x = g.element(3, g.base().element_at(1));
  for (auto _ : state) benchmark::DoNotOptimize(centralizer_index(g, x));
}
BENCHMARK(BM_CentralizerClosedForm)->DenseRange(4, 10, 2);

void BM_IsDedekind(benchmark::State& state) {
  const CompiledGroup g = inverted_quasicyclic().materialize(static_cast<int>(state.range(0))).compile();
  for (auto _ : state) benchmark::DoNotOptimize(algo::is_dedekind(g));
  state.counters["order"] = static_cast<double>(g.order());
}
BENCHMARK(BM_IsDedekind)->DenseRange(3, 7, 2);

void BM_CheckFciFinite(benchmark::State& state) {
  const CompiledGroup g = inverted_quasicyclic().materialize(static_cast<int>(state.range(0))).compile();
  for (auto _ : state) benchmark::DoNotOptimize(check_fci_finite(g));
  state.counters["order"] = static_cast<double>(g.order());
}
BENCHMARK(BM_CheckFciFinite)->DenseRange(3, 6, 1);

void BM_Ladder(benchmark::State& state) {
  const ExtensionSpec s = twisted_quasicyclic(4);
  LadderOptions opt;
  opt.last = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ladder(s, opt));
}
BENCHMARK(BM_Ladder)->DenseRange(3, 6, 1)->Unit(benchmark::kMillisecond);

void BM_EnumeratePaut(benchmark::State& state) {
  const DedekindGroup d = DedekindGroup::abelian(FinAbelian({{3, 2}, {3, 4}}));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_paut(d));
}
BENCHMARK(BM_EnumeratePaut);

}  // namespace

BENCHMARK_MAIN();

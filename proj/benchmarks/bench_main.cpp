#include "unihecke/compare.hpp"
#include "unihecke/iwahori_matsumoto.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace unihecke;

namespace {

AffineHeckeDatum iwahori_datum(const std::string &name) {
  GroupSpec g = builtin_group(name);
  IwahoriWeylDatum d = build_iwahori_weyl(g.galois(), g.marking());
  FacetData f = analyze_facet(d, {});
  facet_root_datum(d, f);
  std::map<long, Int> exps = g.builtin_facets.front().exponents;
  if (exps.empty()) exps = ParameterTable::builtin().lookup(d, {}, "iwahori");
  return build_from_facet(f, exps, name).data.front();
}

const char *const kHeckeGroups[] = {"SL2", "SL3", "Sp4", "SU4", "G2"};

void BM_SmithNormalForm(benchmark::State &state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long long> d(-20, 20);
  const std::size_t n = state.range(0);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(6)->Arg(10);

void BM_WeylGroup(benchmark::State &state) {
  BasedRootDatum d = builtin_group(state.range(0) == 0 ? "SU4" : "G2").datum;
  for (auto _ : state) benchmark::DoNotOptimize(weyl_group_elements(d));
  state.SetLabel(state.range(0) == 0 ? "A3" : "G2");
}
BENCHMARK(BM_WeylGroup)->Arg(0)->Arg(1);

void BM_IwahoriWeylDatum(benchmark::State &state) {
  GroupSpec g = builtin_group("SU4");
  for (auto _ : state) benchmark::DoNotOptimize(build_iwahori_weyl(g.galois(), g.marking()));
}
BENCHMARK(BM_IwahoriWeylDatum);

void BM_FacetAnalysis(benchmark::State &state) {
  GroupSpec g = builtin_group("Sp4");
  IwahoriWeylDatum d = build_iwahori_weyl(g.galois(), g.marking());
  for (auto _ : state) {
    FacetData f = analyze_facet(d, {});
    facet_root_datum(d, f);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_FacetAnalysis)->Unit(benchmark::kMillisecond);

// Full products of random elements; the memo tables warm up over the first iterations.
void BM_HeckeMultiply(benchmark::State &state) {
  const char *name = kHeckeGroups[state.range(0)];
  HeckeAlgebra H(iwahori_datum(name));
  std::mt19937_64 rng(7);
  for (auto _ : state) {
    state.PauseTiming();
    auto a = H.random_element(rng, 4, 1, 3), b = H.random_element(rng, 4, 1, 3);
    state.ResumeTiming();
    benchmark::DoNotOptimize(H.multiply(a, b));
  }
  state.SetLabel(name);
}
BENCHMARK(BM_HeckeMultiply)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_IwahoriMatsumotoRoundtrip(benchmark::State &state) {
  HeckeAlgebra H(iwahori_datum("SL3"));
  IwahoriMatsumoto IM(H);
  auto ball = IM.ball(3);
  for (auto _ : state)
    for (const auto &g : ball) benchmark::DoNotOptimize(IM.from_bernstein(IM.to_bernstein(IM.basis(g))));
  state.SetItemsProcessed(state.iterations() * ball.size());
}
BENCHMARK(BM_IwahoriMatsumotoRoundtrip)->Unit(benchmark::kMillisecond);

void BM_CompareGroup(benchmark::State &state) {
  GroupSpec g = builtin_group(state.range(0) == 0 ? "PGL3" : "SU4");
  auto catalog = ComponentCatalog::builtin();
  auto table = ParameterTable::builtin();
  for (auto _ : state) benchmark::DoNotOptimize(compare_group(g, catalog, table));
  state.SetLabel(g.name);
}
BENCHMARK(BM_CompareGroup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

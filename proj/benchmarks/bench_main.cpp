#include <benchmark/benchmark.h>

#include "heightlab/bertini.hpp"
#include "heightlab/chow.hpp"
#include "heightlab/constants.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/northcott.hpp"
#include "heightlab/parse.hpp"
#include "heightlab/resultant.hpp"
#include "heightlab/roots.hpp"

using namespace heightlab;

namespace {

const UniPoly kLehmer = UniPoly::from_ints({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});

void BM_ComplexRoots(benchmark::State& state) {
  const auto prec = static_cast<Precision>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(complex_roots(kLehmer, prec));
}
BENCHMARK(BM_ComplexRoots)->Arg(64)->Arg(256)->Arg(1024);

void BM_LogMahlerRoots(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(log_mahler_measure(kLehmer, 1e-12));
}
BENCHMARK(BM_LogMahlerRoots);

void BM_LogMahlerIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mahler_integral_height(kLehmer, 1e-9));
}
BENCHMARK(BM_LogMahlerIntegral);

void BM_ResultantStep(benchmark::State& state) {
  // one step of the Smyth sequence from the degree 2^k minimal polynomial
  auto prof = iterate_sequence(smyth_spec(static_cast<int>(state.range(0)), CertMode::AssumeIrreducible));
  const BiPoly P = parse_bi("x^2 - t*x - 1");
  const UniPoly m = prof.entries.back().x.min_poly;
  for (auto _ : state) benchmark::DoNotOptimize(resultant_t(P, m));
}
BENCHMARK(BM_ResultantStep)->DenseRange(3, 6);

void BM_SmythSequence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(iterate_sequence(smyth_spec(n, CertMode::Certified)));
}
BENCHMARK(BM_SmythSequence)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_SphereIntegral(benchmark::State& state) {
  const Hypersurface X = Hypersurface::make(parse_poly("x0^2 + x1^2 - x2^2", {"x0", "x1", "x2"}));
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chow_height_hypersurface(X, samples, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * samples));
}
BENCHMARK(BM_SphereIntegral)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SmoothnessCheck(benchmark::State& state) {
  const Hypersurface X =
      Hypersurface::make(parse_poly("x0^4 + x1^4 + x2^4 + x3^4", {"x0", "x1", "x2", "x3"}));
  for (auto _ : state) benchmark::DoNotOptimize(smoothness_check(X));
}
BENCHMARK(BM_SmoothnessCheck);

void BM_SectionSearch(benchmark::State& state) {
  const Hypersurface X =
      Hypersurface::make(parse_poly("x0^4 + x1^4 + x2^4 + x3^4", {"x0", "x1", "x2", "x3"}));
  for (auto _ : state) benchmark::DoNotOptimize(section_search(X, {0, 1, -1}, 1000));
}
BENCHMARK(BM_SectionSearch)->Unit(benchmark::kMillisecond);

void BM_ConstantsReport(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(constants_report(g, mpq_class(0)));
}
BENCHMARK(BM_ConstantsReport)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

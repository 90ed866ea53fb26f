#include <benchmark/benchmark.h>

#include <crwb/catalog.hpp>
#include <crwb/ideals.hpp>

using namespace crwb;

namespace {

const Catalog& catalog() {
  static Catalog c = Catalog::load(default_catalog_dir());
  return c;
}

Binding grid_binding(const HypersurfaceEntry& e) {
  Binding b;
  if (!e.grid.empty())
    for (const auto& [k, v] : e.grid.front()) b.set_param(k, v.convert_to<double>());
  return b;
}

void BM_Simplify(benchmark::State& state) {
  Expr e = parse_expr("(z1 + i*z2)*(cz1 - i*cz2) + pow(re(z1), 3)*exp(im(z2)) - z1*cz1");
  for (auto _ : state) benchmark::DoNotOptimize(simplify(e));
}
BENCHMARK(BM_Simplify);

void BM_Wirtinger(benchmark::State& state) {
  Expr rho = catalog().hypersurface("item13")->surface.rho;
  for (auto _ : state)
    for (int v = 0; v < kNumVars; ++v) benchmark::DoNotOptimize(wirtinger(rho, v));
}
BENCHMARK(BM_Wirtinger);

void BM_Bracket(benchmark::State& state) {
  const Realization* r = catalog().realization("g25");
  for (auto _ : state)
    benchmark::DoNotOptimize(bracket(r->frame[0], r->frame[4]));
}
BENCHMARK(BM_Bracket);

void BM_LeviForm(benchmark::State& state) {
  const HypersurfaceEntry* e = catalog().hypersurface("item12");
  Binding params = grid_binding(*e);
  Binding p = sample_surface_points(e->surface, params, 1, 42).at(0);
  for (auto _ : state) benchmark::DoNotOptimize(levi_form(e->surface, p));
}
BENCHMARK(BM_LeviForm);

void BM_SampleSurfacePoint(benchmark::State& state) {
  const HypersurfaceEntry* e = catalog().hypersurface("eq3.9");
  Binding params;
  params.set_param("alpha", 1.0);
  uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_point(e->surface, params, ++seed));
}
BENCHMARK(BM_SampleSurfacePoint);

void BM_IdealSearch(benchmark::State& state) {
  RationalAlgebra g = catalog().algebra("m26")->instantiate();
  for (auto _ : state) benchmark::DoNotOptimize(find_abelian_ideals_3d(g));
}
BENCHMARK(BM_IdealSearch);

void BM_VerifyRealization(benchmark::State& state) {
  const Realization* r = catalog().realization("g25");
  for (auto _ : state) benchmark::DoNotOptimize(verify_realization(*r, 20, 42, 1e-8));
}
BENCHMARK(BM_VerifyRealization);

}  // namespace

BENCHMARK_MAIN();

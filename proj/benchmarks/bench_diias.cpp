#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "corpus.hpp"
#include "diias/diias.hpp"
#include "diias/export.hpp"

namespace {

using namespace diias;

// Wavy pair without parallel edges or shared vertices, n vertices each.
std::pair<Polyline2, Polyline2> wavy_pair(int n) {
  std::vector<Vec2> a, b;
  for (int i = 0; i < n; ++i) {
    a.push_back({double(i), 0.2 * std::sin(0.7 * i)});
    b.push_back({0.5 + 0.2 * std::sin(0.9 * i), i + 0.5});
  }
  return {Polyline2(0, a), Polyline2(0, b)};
}

void BM_BuildDiias(benchmark::State& state) {
  const auto [alpha, beta] = wavy_pair(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_diias(alpha, beta));
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_BuildDiias)->RangeMultiplier(4)->Range(8, 512)->Complexity(benchmark::oN);

void BM_VerifyDiias(benchmark::State& state) {
  const auto [alpha, beta] = wavy_pair(static_cast<int>(state.range(0)));
  const QuadNet net = build_diias(alpha, beta);
  for (auto _ : state) benchmark::DoNotOptimize(verify_diias(net.q));
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_VerifyDiias)->RangeMultiplier(4)->Range(8, 512)->Complexity(benchmark::oN);

const std::vector<testing::CorpusCase>& singular_corpus() {
  static const auto cases = testing::corpus(4242, 100, {3, 8, true});
  return cases;
}

void BM_AnalyzeSingularities(benchmark::State& state) {
  const auto& cases = singular_corpus();
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& c = cases[i++ % cases.size()];
    benchmark::DoNotOptimize(analyze_singularities(c.alpha, c.beta, c.net));
  }
}
BENCHMARK(BM_AnalyzeSingularities);

// Diagonal patch pairs around swallowtail vertices (range 0) or around vertices with no singular edge (range 1).
std::vector<std::pair<BilinearPatch, BilinearPatch>> diagonal_pairs(bool swallowtail) {
  std::vector<std::pair<BilinearPatch, BilinearPatch>> out;
  for (const auto& c : singular_corpus()) {
    const SingularityReport r = analyze_singularities(c.alpha, c.beta, c.net);
    std::vector<GridAddress> vertices = r.swallowtails;
    if (!swallowtail) {
      vertices.clear();
      for (const auto& [v, cfg] : r.config)
        if (cfg == StarConfig::Config0) vertices.push_back(v);
    }
    for (const GridAddress& v : vertices) {
      const auto P = [&](int du, int dv) { return patch_of(c.net, GridAddress::face(v.u() + du, v.v() + dv)); };
      out.emplace_back(P(0, 0), P(-1, -1));
      out.emplace_back(P(-1, 0), P(0, -1));
    }
  }
  return out;
}

void BM_PatchesIntersect(benchmark::State& state) {
  const auto pairs = diagonal_pairs(state.range(0) == 0);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(patches_intersect(a, b, 1e-6));
  }
  state.SetLabel(state.range(0) == 0 ? "swallowtail" : "regular");
}
BENCHMARK(BM_PatchesIntersect)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_ObjExport(benchmark::State& state) {
  const auto [alpha, beta] = wavy_pair(32);
  const QuadNet net = build_diias(alpha, beta);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(obj_text(net.q, n));
}
BENCHMARK(BM_ObjExport)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

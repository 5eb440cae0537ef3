#include <benchmark/benchmark.h>

#include "coxiota/poincare.hpp"
#include "coxiota/poset.hpp"
#include "coxiota/presets.hpp"
#include "coxiota/topology.hpp"

using namespace coxiota;

namespace {

void BM_EnumerateB4(benchmark::State& state) {
  const CoxeterSystem sys = resolve_group("B4").system;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sys.enumerate(std::nullopt).size());
  }
}
BENCHMARK(BM_EnumerateB4);

void BM_TwistedEnumerationA5Flip(benchmark::State& state) {
  const GroupSpec g = resolve_group("A5:flip");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        TwistedEnumeration::run(g.system, g.theta, std::nullopt).size());
  }
}
BENCHMARK(BM_TwistedEnumerationA5Flip);

void BM_LeqTableA8Flip(benchmark::State& state) {
  const GroupSpec g = resolve_group("A8:flip");
  const TwistedEnumeration ten =
      TwistedEnumeration::run(g.system, g.theta, std::nullopt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_leq_table(ten).size());
  }
}
BENCHMARK(BM_LeqTableA8Flip);

void BM_BruhatLeqTwistedAffine(benchmark::State& state) {
  const GroupSpec g = resolve_group("affineA2");
  const TwistedElement u = make_twisted(
      g.system, g.theta, eval_sexpr(g.system, g.theta, std::vector<int>{1}));
  std::vector<int> expr;
  for (int i = 0; i < 6; ++i) expr.insert(expr.end(), {1, 0, 2});
  const Element big = eval_sexpr(g.system, g.theta,
                                 std::vector<int>(expr.begin(), expr.end()));
  const TwistedElement v = make_twisted(g.system, g.theta, big);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bruhat_leq_twisted(g.system, g.theta, u, v));
  }
}
BENCHMARK(BM_BruhatLeqTwistedAffine);

void BM_IntervalHomologyA5Top(benchmark::State& state) {
  const GroupSpec g = resolve_group("A5:flip");
  const TwistedEnumeration ten =
      TwistedEnumeration::run(g.system, g.theta, std::nullopt);
  const TwistedLeqTable table = compute_leq_table(ten);
  const BruhatPoset bp = make_iota_poset(ten, table);
  const int top = maximal_elements(bp.poset).front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        interval_homology(bp.poset, bp.poset.minimum(), top).cls);
  }
}
BENCHMARK(BM_IntervalHomologyA5Top);

void BM_SmithNormalForm(benchmark::State& state) {
  // sparse signed incidence-style matrix, the shape boundary maps take
  const int n = static_cast<int>(state.range(0));
  DenseIntMat m(n, 2 * n);
  std::uint64_t x = 0x243f6a8885a308d3ull;
  for (int j = 0; j < 2 * n; ++j)
    for (int hits = 0; hits < 3; ++hits) {
      x = x * 6364136223846793005ull + 1442695040888963407ull;
      const int i = static_cast<int>((x >> 33) % n);
      m.at(i, j) = (x & 1) ? 1 : -1;
    }
  for (auto _ : state) {
    DenseIntMat copy = m;
    benchmark::DoNotOptimize(smith_invariant_factors(std::move(copy)).size());
  }
}
BENCHMARK(BM_SmithNormalForm)->Arg(40)->Arg(80);

}  // namespace

BENCHMARK_MAIN();

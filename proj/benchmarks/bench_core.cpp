#include <benchmark/benchmark.h>

#include <random>

#include "magnusforge/embedding.hpp"
#include "magnusforge/finite_group.hpp"
#include "magnusforge/magnus.hpp"
#include "magnusforge/metrics.hpp"
#include "magnusforge/parafree.hpp"

using namespace magnusforge;

namespace {

const std::vector<Lamplighter> kLampGens{LamplighterGroup::lamp_gen(),
                                         LamplighterGroup::shift_gen()};

void BM_LamplighterBall(benchmark::State& state) {
  LamplighterGroup M;
  for (auto _ : state) {
    auto ball = enumerate_ball(M, std::span<const Lamplighter>(kLampGens),
                               static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(ball.elements.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LamplighterBall)->DenseRange(4, 8)->Complexity();

void BM_LamplighterLength(benchmark::State& state) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> pos(-8, 8);
  std::vector<Lamplighter> sample;
  for (int k = 0; k < 256; ++k) {
    Lamplighter e;
    for (int j = 0; j < 4; ++j) e.lamps[pos(gen)] = 1 + (j % 3);
    e.shift = pos(gen);
    sample.push_back(e);
  }
  std::size_t at = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lamplighter_length(sample[at++ & 255]));
  }
}
BENCHMARK(BM_LamplighterLength);

void BM_MagnusWorkedExample(benchmark::State& state) {
  FreeAbelianGroup g("h");
  std::map<int, FreeAbelianGroup::Element> gens{{1, g.basis(1)}, {2, g.basis(2)}};
  MagnusSetup<FreeAbelianGroup> setup(g, gens, [](const FreeAbelianGroup::Element& e) {
    long long acc = 0;
    for (const auto& [i, v] : e) acc += v < 0 ? -v : v;
    return acc;
  });
  const Word f = Word::parse("x1^-3 x2^-1 x1 x2 x1^3 x2 x1 x2");
  for (auto _ : state) {
    auto bound = verify_magnus_bound(setup, magnus_image(setup, f));
    benchmark::DoNotOptimize(bound.arc_weight);
  }
}
BENCHMARK(BM_MagnusWorkedExample);

void BM_GreedyParafree(benchmark::State& state) {
  GreedyOptions options;
  options.radius_cap = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto set = greedy_build(static_cast<int>(state.range(0)), options);
    benchmark::DoNotOptimize(set.members.size());
  }
}
BENCHMARK(BM_GreedyParafree)->DenseRange(3, 5);

void BM_EmbedContextBuild(benchmark::State& state) {
  const FiniteGroup z5 = FiniteGroup::cyclic(5);
  for (auto _ : state) {
    auto ctx = EmbeddingContext::build(z5, z5.default_generators());
    benchmark::DoNotOptimize(ctx.pair_count());
  }
}
BENCHMARK(BM_EmbedContextBuild);

void BM_CertificateRoundTrip(benchmark::State& state) {
  const FiniteGroup z5 = FiniteGroup::cyclic(5);
  const auto ctx = EmbeddingContext::build(z5, z5.default_generators());
  for (auto _ : state) {
    for (const auto h : ctx.group().elements()) {
      auto cert = ctx.embed_h(h);
      auto chain = ctx.lower_bound_chain(cert);
      benchmark::DoNotOptimize(chain.ell);
    }
  }
}
BENCHMARK(BM_CertificateRoundTrip);

}  // namespace

BENCHMARK_MAIN();

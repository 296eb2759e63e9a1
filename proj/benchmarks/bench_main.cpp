// Microbenchmarks for the hot paths: graph scoring and cascade work at the
// default desk scale. Run with --benchmark_min_time=... as usual.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "bridgekit/bridging.hpp"
#include "bridgekit/cascade.hpp"
#include "bridgekit/centrality.hpp"
#include "bridgekit/graph.hpp"

using namespace bridgekit;

namespace {

SocialGraph make_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && coin(rng))
        pairs.emplace_back("u" + std::to_string(a), "u" + std::to_string(b));
  return SocialGraph::from_follow_pairs(pairs);
}

std::vector<CascadeTree> make_cascades(std::size_t count, std::size_t max_nodes,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CascadeTree> cs;
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> size_dist(3, max_nodes);
    const std::size_t n = size_dist(rng);
    CascadeTree c;
    c.message_id = "m" + std::to_string(i);
    c.root = 0;
    c.activation[0] = 0;
    for (UserId u = 1; u < n; ++u) {
      std::uniform_int_distribution<UserId> parent(0, u - 1);
      UserId p = parent(rng);
      c.parent[u] = p;
      c.activation[u] = c.activation[p] + 1;
    }
    cs.push_back(std::move(c));
  }
  return cs;
}

void BM_PageRank(benchmark::State& state) {
  SocialGraph g = make_graph(static_cast<std::size_t>(state.range(0)), 0.01, 7);
  for (auto _ : state) benchmark::DoNotOptimize(pagerank(g).values);
}
BENCHMARK(BM_PageRank)->Arg(1000)->Arg(4000);

void BM_Betweenness(benchmark::State& state) {
  SocialGraph g = make_graph(200, 0.03, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(betweenness(g, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Betweenness)->Arg(1)->Arg(4);

void BM_Ubm(benchmark::State& state) {
  auto cs = make_cascades(static_cast<std::size_t>(state.range(0)), 40, 13);
  for (auto _ : state) benchmark::DoNotOptimize(ubm(cs));
}
BENCHMARK(BM_Ubm)->Arg(500)->Arg(2000);

void BM_CommunityCentrality(benchmark::State& state) {
  SocialGraph g = make_graph(1000, 0.01, 17);
  for (auto _ : state) benchmark::DoNotOptimize(community_centrality(g, 1).scores);
}
BENCHMARK(BM_CommunityCentrality);

}  // namespace

BENCHMARK_MAIN();

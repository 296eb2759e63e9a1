#include "bridgekit/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

#include "bridgekit/parallel.hpp"

namespace bridgekit {

namespace {

// Shared power-iteration driver. weight(v, u) gives the unnormalized
// transition weight from follower v to followee u; row_sum(v) its row total.
template <typename WeightFn, typename RowSumFn>
PageRankResult power_iterate(const SocialGraph& g, const PageRankOptions& opts,
                             WeightFn weight, RowSumFn row_sum) {
  const std::size_t n = g.node_count();
  PageRankResult result;
  if (n == 0) return result;

  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  std::vector<double> rows(n);
  for (UserId v = 0; v < n; ++v) rows[v] = row_sum(v);

  const double d = opts.damping;
  for (unsigned iter = 1; iter <= opts.max_iter; ++iter) {
    double dangling = 0.0;
    for (UserId v = 0; v < n; ++v)
      if (g.followees(v).empty()) dangling += rank[v];

    const double base = (1.0 - d) / static_cast<double>(n) +
                        d * dangling / static_cast<double>(n);
    for (UserId u = 0; u < n; ++u) {
      double sum = 0.0;
      for (UserId v : g.followers(u)) {
        if (rows[v] > 0.0) {
          sum += rank[v] * weight(v, u) / rows[v];
        } else if (!g.followees(v).empty()) {
          // All-zero weight row: uniform step over the followees.
          sum += rank[v] / static_cast<double>(g.followees(v).size());
        }
      }
      next[u] = base + d * sum;
    }

    double change = 0.0;
    for (UserId u = 0; u < n; ++u) change += std::abs(next[u] - rank[u]);
    rank.swap(next);
    result.iterations = iter;
    if (change < opts.tol) {
      result.converged = true;
      break;
    }
  }
  result.values = std::move(rank);
  return result;
}

}  // namespace

PageRankResult pagerank(const SocialGraph& g, const PageRankOptions& opts) {
  if (opts.damping <= 0.0 || opts.damping >= 1.0)
    throw InputError("pagerank: damping must be in (0,1)");
  if (opts.tol <= 0.0) throw InputError("pagerank: tol must be positive");
  return power_iterate(
      g, opts, [](UserId, UserId) { return 1.0; },
      [&](UserId v) { return static_cast<double>(g.followees(v).size()); });
}

PageRankResult twitterrank(const SocialGraph& g, const std::vector<double>& post_counts,
                           const EdgeSimilarity* topic_sim, const PageRankOptions& opts) {
  if (post_counts.size() != g.node_count())
    throw InputError("twitterrank: post_counts size mismatch");
  for (double c : post_counts)
    if (c < 0.0) throw InputError("twitterrank: negative post count");

  auto weight = [&](UserId v, UserId u) {
    double sim = topic_sim ? topic_sim->get(v, u) : 1.0;
    return post_counts[u] * sim;
  };
  auto row_sum = [&](UserId v) {
    double total = 0.0;
    for (UserId u : g.followees(v)) total += weight(v, u);
    return total;
  };
  return power_iterate(g, opts, weight, row_sum);
}

std::vector<double> betweenness(const SocialGraph& g, unsigned threads) {
  const std::size_t n = g.node_count();
  std::vector<double> centrality(n, 0.0);
  if (n == 0) return centrality;

  // Dependency vectors are computed per source in parallel but reduced in
  // source order, block by block, so sums are bitwise independent of the
  // thread count.
  const std::size_t block = std::max<std::size_t>(std::size_t{1} * std::max(threads, 1u) * 8, 16);
  std::vector<std::vector<double>> slots(std::min(block, n));

  for (std::size_t begin = 0; begin < n; begin += block) {
    const std::size_t end = std::min(begin + block, n);
    parallel_for(end - begin, threads, [&](std::size_t k) {
      const UserId s = static_cast<UserId>(begin + k);
      auto& delta = slots[k];
      delta.assign(n, 0.0);

      std::vector<std::int64_t> sigma(n, 0);
      std::vector<int> dist(n, -1);
      std::vector<std::vector<UserId>> preds(n);
      std::vector<UserId> order;
      order.reserve(n);

      sigma[s] = 1;
      dist[s] = 0;
      std::deque<UserId> queue{s};
      while (!queue.empty()) {
        UserId v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (UserId w : g.followers(v)) {
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            queue.push_back(w);
          }
          if (dist[w] == dist[v] + 1) {
            sigma[w] += sigma[v];
            preds[w].push_back(v);
          }
        }
      }
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        UserId w = *it;
        for (UserId v : preds[w])
          delta[v] += static_cast<double>(sigma[v]) / static_cast<double>(sigma[w]) *
                      (1.0 + delta[w]);
      }
    });
    for (std::size_t k = 0; k < end - begin; ++k) {
      const UserId s = static_cast<UserId>(begin + k);
      for (UserId w = 0; w < n; ++w)
        if (w != s) centrality[w] += slots[k][w];
    }
  }
  return centrality;
}

CommunityResult community_centrality(const SocialGraph& g, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  CommunityResult result;
  result.labels.resize(n);
  std::iota(result.labels.begin(), result.labels.end(), 0u);
  if (n == 0) return result;

  std::vector<std::vector<UserId>> neighbors(n);
  for (UserId u = 0; u < n; ++u) {
    auto& nb = neighbors[u];
    nb.insert(nb.end(), g.followers(u).begin(), g.followers(u).end());
    nb.insert(nb.end(), g.followees(u).begin(), g.followees(u).end());
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  std::vector<UserId> sweep(n);
  std::iota(sweep.begin(), sweep.end(), 0u);
  std::mt19937_64 rng(seed);
  std::shuffle(sweep.begin(), sweep.end(), rng);

  // Ties among equally frequent labels are broken by a seeded hash; a
  // deterministic "smallest label" rule would flood low labels through the
  // whole graph from the cold start where every count is 1.
  auto tie_hash = [seed](UserId u, unsigned round, std::uint32_t label) {
    std::uint64_t h = seed ^ (static_cast<std::uint64_t>(u) << 32) ^
                      (static_cast<std::uint64_t>(round) << 20) ^ label;
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
  };

  auto& labels = result.labels;
  std::unordered_map<std::uint32_t, std::size_t> freq;
  for (unsigned round = 0; round < 100; ++round) {
    bool changed = false;
    for (UserId u : sweep) {
      freq.clear();
      freq[labels[u]] = 1;  // self-inclusive
      for (UserId v : neighbors[u]) ++freq[labels[v]];
      std::size_t best_count = 0;
      for (const auto& [label, count] : freq) best_count = std::max(best_count, count);
      std::uint32_t best = labels[u];
      std::uint64_t best_hash = ~0ULL;
      for (const auto& [label, count] : freq) {
        if (count != best_count) continue;
        const std::uint64_t h = tie_hash(u, round, label);
        if (h < best_hash || (h == best_hash && label < best)) {
          best = label;
          best_hash = h;
        }
      }
      if (best != labels[u]) {
        labels[u] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }

  // Compact community ids.
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  for (auto& label : labels) {
    auto [it, inserted] = remap.try_emplace(label, static_cast<std::uint32_t>(remap.size()));
    label = it->second;
  }
  result.community_count = remap.size();

  result.scores.resize(n);
  std::vector<std::uint32_t> seen;
  for (UserId u = 0; u < n; ++u) {
    seen.clear();
    seen.push_back(labels[u]);
    for (UserId v : neighbors[u]) seen.push_back(labels[v]);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    result.scores[u] =
        static_cast<double>(seen.size()) / static_cast<double>(result.community_count);
  }
  return result;
}

std::vector<double> activity(const SocialGraph& g, const std::vector<DiffusionEvent>& events) {
  std::vector<double> counts(g.node_count(), 0.0);
  for (const auto& e : events) {
    UserId u = g.user(e.user);
    if (u != kInvalidUser) counts[u] += 1.0;
  }
  return counts;
}

std::vector<double> in_degree_vector(const SocialGraph& g) {
  std::vector<double> out(g.node_count());
  for (UserId u = 0; u < out.size(); ++u) out[u] = static_cast<double>(g.in_degree(u));
  return out;
}

std::vector<double> out_degree_vector(const SocialGraph& g) {
  std::vector<double> out(g.node_count());
  for (UserId u = 0; u < out.size(); ++u) out[u] = static_cast<double>(g.out_degree(u));
  return out;
}

}  // namespace bridgekit

#ifndef BRIDGEKIT_CENTRALITY_HPP_
#define BRIDGEKIT_CENTRALITY_HPP_

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bridgekit/cascade.hpp"
#include "bridgekit/graph.hpp"

namespace bridgekit {

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-10;
  unsigned max_iter = 200;
};

struct PageRankResult {
  std::vector<double> values;
  bool converged = false;
  unsigned iterations = 0;
};

/// Random-surfer PageRank over follow edges: from a user the walk moves to
/// one of their followees (information sources), so highly followed accounts
/// accumulate rank. Dangling mass is redistributed uniformly. Values sum
/// to 1.
PageRankResult pagerank(const SocialGraph& g, const PageRankOptions& opts = {});

/// Sparse per-follow-edge topic similarity keyed by (follower, followee).
/// Edges absent from the map take similarity 1.
class EdgeSimilarity {
 public:
  void set(UserId follower, UserId followee, double sim) { sim_[key(follower, followee)] = sim; }
  double get(UserId follower, UserId followee) const {
    auto it = sim_.find(key(follower, followee));
    return it == sim_.end() ? 1.0 : it->second;
  }

 private:
  static std::uint64_t key(UserId a, UserId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  std::unordered_map<std::uint64_t, double> sim_;
};

/// TwitterRank-style topic-sensitive PageRank: the transition weight from a
/// follower to a followee is post_counts(followee) * sim(follower, followee),
/// row-normalized. An all-zero row falls back to a uniform step over the
/// followees. With uniform similarity and equal post counts this reduces to
/// pagerank().
PageRankResult twitterrank(const SocialGraph& g, const std::vector<double>& post_counts,
                           const EdgeSimilarity* topic_sim = nullptr,
                           const PageRankOptions& opts = {});

/// Exact directed betweenness over transmission edges (Brandes accumulation),
/// unnormalized, unit edge weights. Source accumulations run on `threads`
/// workers and are reduced in source order, so output is identical for any
/// thread count.
std::vector<double> betweenness(const SocialGraph& g, unsigned threads = 1);

struct CommunityResult {
  std::vector<std::uint32_t> labels;  // per-user community id, contiguous from 0
  std::size_t community_count = 0;
  std::vector<double> scores;  // neighbor-community diversity per user
};

/// Communities by label propagation (seeded sweep order, seeded-hash tie
/// break, self-inclusive counts). score(u) = number of distinct communities
/// among u's neighbors in both directions plus u's own, divided by the total
/// community count.
CommunityResult community_centrality(const SocialGraph& g, std::uint64_t seed);

/// Per-user count of all events (originals and retweets). Events by users
/// absent from the graph are ignored.
std::vector<double> activity(const SocialGraph& g, const std::vector<DiffusionEvent>& events);

/// Degree vectors as doubles for use in score tables and design matrices.
std::vector<double> in_degree_vector(const SocialGraph& g);
std::vector<double> out_degree_vector(const SocialGraph& g);

}  // namespace bridgekit

#endif  // BRIDGEKIT_CENTRALITY_HPP_

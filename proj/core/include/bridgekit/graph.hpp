#ifndef BRIDGEKIT_GRAPH_HPP_
#define BRIDGEKIT_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace bridgekit {

/// Dense, zero-based user handle interned from an external string id.
using UserId = std::uint32_t;

constexpr UserId kInvalidUser = static_cast<UserId>(-1);

/// Raised for malformed or unusable user input (files, config values).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bijective map between external string ids and dense UserIds.
class IdInterner {
 public:
  UserId intern(const std::string& external) {
    auto [it, inserted] = index_.try_emplace(external, static_cast<UserId>(names_.size()));
    if (inserted) names_.push_back(external);
    return it->second;
  }

  /// Returns kInvalidUser when the external id was never interned.
  UserId lookup(const std::string& external) const {
    auto it = index_.find(external);
    return it == index_.end() ? kInvalidUser : it->second;
  }

  const std::string& name(UserId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::unordered_map<std::string, UserId> index_;
  std::vector<std::string> names_;
};

/// Immutable directed social graph in transmission orientation: an edge
/// u -> v means v follows u, so information posted by u can reach v.
/// Read-only after construction; safe for concurrent readers.
class SocialGraph {
 public:
  struct LoadStats {
    std::size_t edges_kept = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
  };

  /// Builds a graph from (follower, followee) pairs of external ids.
  /// The pair order is reversed internally: followee -> follower is the
  /// transmission edge. Self-loops and duplicate edges are dropped and
  /// counted.
  static SocialGraph from_follow_pairs(
      const std::vector<std::pair<std::string, std::string>>& pairs,
      LoadStats* stats = nullptr);

  /// Reads edges.csv (header `follower,followee`). Throws InputError with a
  /// line number on malformed rows and on empty input.
  static SocialGraph load_csv(std::istream& in, LoadStats* stats = nullptr);
  static SocialGraph load_csv_file(const std::string& path, LoadStats* stats = nullptr);

  std::size_t node_count() const { return out_adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// Users who follow u (u's audience); sorted ascending.
  std::span<const UserId> followers(UserId u) const { return out_adj_[u]; }
  /// Users u follows (u's potential activators); sorted ascending.
  std::span<const UserId> followees(UserId u) const { return in_adj_[u]; }

  /// True iff `parent -> child` is a transmission edge (child follows parent).
  bool can_transmit(UserId parent, UserId child) const;

  /// Number of followers of u (audience size).
  std::size_t in_degree(UserId u) const { return out_adj_[u].size(); }
  /// Number of accounts u follows.
  std::size_t out_degree(UserId u) const { return in_adj_[u].size(); }

  const IdInterner& ids() const { return ids_; }
  UserId user(const std::string& external) const { return ids_.lookup(external); }

 private:
  IdInterner ids_;
  // out_adj_[u]: transmission targets of u (u's followers).
  // in_adj_[u]:  transmission sources of u (accounts u follows).
  std::vector<std::vector<UserId>> out_adj_;
  std::vector<std::vector<UserId>> in_adj_;
  std::size_t edge_count_ = 0;
};

}  // namespace bridgekit

#endif  // BRIDGEKIT_GRAPH_HPP_

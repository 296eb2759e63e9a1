#include "bridgekit/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>

#include "bridgekit/csv.hpp"

namespace bridgekit {

SocialGraph SocialGraph::from_follow_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs, LoadStats* stats) {
  SocialGraph g;
  LoadStats local;
  // Transmission edge: followee -> follower.
  std::set<std::pair<UserId, UserId>> seen;
  std::vector<std::pair<UserId, UserId>> edges;
  for (const auto& [follower, followee] : pairs) {
    UserId src = g.ids_.intern(followee);
    UserId dst = g.ids_.intern(follower);
    if (src == dst) {
      ++local.self_loops_dropped;
      continue;
    }
    if (!seen.insert({src, dst}).second) {
      ++local.duplicates_dropped;
      continue;
    }
    edges.emplace_back(src, dst);
  }
  local.edges_kept = edges.size();

  g.out_adj_.resize(g.ids_.size());
  g.in_adj_.resize(g.ids_.size());
  for (auto [src, dst] : edges) {
    g.out_adj_[src].push_back(dst);
    g.in_adj_[dst].push_back(src);
  }
  for (auto& adj : g.out_adj_) std::sort(adj.begin(), adj.end());
  for (auto& adj : g.in_adj_) std::sort(adj.begin(), adj.end());
  g.edge_count_ = edges.size();
  if (stats) *stats = local;
  return g;
}

SocialGraph SocialGraph::load_csv(std::istream& in, LoadStats* stats) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "follower,followee")
        throw InputError("line 1: expected header 'follower,followee', got '" + line + "'");
      continue;
    }
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw InputError("line " + std::to_string(line_no) + ": expected 'follower,followee'");
    pairs.emplace_back(std::string(fields[0]), std::string(fields[1]));
  }
  if (pairs.empty()) throw InputError("edge input contains no edges");
  return from_follow_pairs(pairs, stats);
}

SocialGraph SocialGraph::load_csv_file(const std::string& path, LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge file: " + path);
  return load_csv(in, stats);
}

bool SocialGraph::can_transmit(UserId parent, UserId child) const {
  const auto& adj = out_adj_[parent];
  return std::binary_search(adj.begin(), adj.end(), child);
}

}  // namespace bridgekit

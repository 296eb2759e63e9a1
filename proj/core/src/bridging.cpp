#include "bridgekit/bridging.hpp"

#include <algorithm>
#include <stdexcept>

namespace bridgekit {

namespace {

/// Per-path suffix shares accumulated for every non-root participant in one
/// DFS over the tree, divided by the path count at the end.
std::unordered_map<UserId, double> bridging_values(const CascadeTree& c) {
  auto path_set = paths(c);
  std::unordered_map<UserId, double> sums;
  for (const auto& path : path_set) {
    const double len = static_cast<double>(path.size());
    for (std::size_t i = 1; i < path.size(); ++i)
      sums[path[i]] += static_cast<double>(path.size() - i) / len;
  }
  const double n_paths = static_cast<double>(path_set.size());
  for (auto& [u, v] : sums) v /= n_paths;
  return sums;
}

}  // namespace

double cascade_bridging_value(const CascadeTree& c, UserId u) {
  if (u == c.root)
    throw std::domain_error("cascade bridging value is not applicable to the root user");
  auto values = bridging_values(c);
  auto it = values.find(u);
  return it == values.end() ? 0.0 : it->second;
}

std::unordered_map<UserId, BridgingScore> ubm(const std::vector<CascadeTree>& cs) {
  if (cs.empty()) throw InputError("ubm: empty cascade set");
  std::unordered_map<UserId, BridgingScore> scores;
  for (const auto& c : cs) {
    for (const auto& [u, alpha] : bridging_values(c)) {
      auto& s = scores[u];
      s.ubm += alpha;
      s.cascades_participated += 1;
    }
  }
  std::size_t max_participation = 0;
  for (const auto& [u, s] : scores)
    max_participation = std::max(max_participation, s.cascades_participated);
  if (max_participation == 0)
    throw InputError("ubm: no cascade has a non-root participant");
  for (auto& [u, s] : scores) s.ubm /= static_cast<double>(max_participation);
  return scores;
}

std::vector<double> ubm_vector(const std::vector<CascadeTree>& cs, std::size_t n_users) {
  std::vector<double> out(n_users, 0.0);
  for (const auto& [u, s] : ubm(cs)) out.at(u) = s.ubm;
  return out;
}

}  // namespace bridgekit

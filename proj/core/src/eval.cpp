#include "bridgekit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace bridgekit {

std::pair<std::vector<CascadeTree>, std::vector<CascadeTree>> split_cascades(
    const std::vector<CascadeTree>& cs, double train_fraction, std::uint64_t seed) {
  if (train_fraction <= 0.0 || train_fraction >= 1.0)
    throw InputError("split_cascades: train_fraction must be in (0,1)");
  if (cs.size() < 2) throw InputError("split_cascades: need at least 2 cascades");

  std::vector<std::size_t> idx(cs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);

  const std::size_t n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(cs.size())));
  std::pair<std::vector<CascadeTree>, std::vector<CascadeTree>> out;
  for (std::size_t i = 0; i < idx.size(); ++i)
    (i < n_train ? out.first : out.second).push_back(cs[idx[i]]);
  return out;
}

std::vector<UserId> top_fraction(const std::vector<double>& scores, double fraction) {
  if (scores.empty()) throw InputError("top_fraction: empty score table");
  if (fraction <= 0.0 || fraction > 1.0)
    throw InputError("top_fraction: fraction must be in (0,1]");

  std::vector<UserId> order(scores.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](UserId a, UserId b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  });
  const std::size_t k = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(scores.size())));
  order.resize(std::min(k, order.size()));
  return order;
}

EvalReport evaluate(const std::unordered_set<UserId>& selected,
                    const std::vector<CascadeTree>& test) {
  EvalReport report;
  std::unordered_set<UserId> impacted;
  std::unordered_set<UserId> all_participants;
  double sum_activated = 0.0;
  double sum_rate = 0.0;

  for (const auto& c : test) {
    std::unordered_map<UserId, std::vector<UserId>> children;
    for (const auto& [child, p] : c.parent) children[p].push_back(child);
    for (UserId u : c.participants()) all_participants.insert(u);

    for (const auto& [u, p] : c.parent) {  // non-root participants only
      if (!selected.count(u)) continue;
      // Strict descendants of u and the latest activation among them.
      std::vector<UserId> stack{u};
      std::size_t activated = 0;
      Timestamp last = c.activation.at(u);
      std::vector<UserId> descendants;
      while (!stack.empty()) {
        UserId v = stack.back();
        stack.pop_back();
        auto it = children.find(v);
        if (it == children.end()) continue;
        for (UserId w : it->second) {
          ++activated;
          descendants.push_back(w);
          last = std::max(last, c.activation.at(w));
          stack.push_back(w);
        }
      }
      if (activated == 0) continue;  // leaf retweet, nothing attributed
      ++report.pairs_counted;
      sum_activated += static_cast<double>(activated);
      const double seconds =
          std::max<double>(static_cast<double>(last - c.activation.at(u)), 1.0);
      sum_rate += static_cast<double>(activated) / (seconds / 60.0);
      for (UserId w : descendants) impacted.insert(w);
    }
  }

  if (report.pairs_counted == 0) {
    report.no_overlap_warning = true;
    return report;
  }
  report.avg_activated = sum_activated / static_cast<double>(report.pairs_counted);
  report.avg_activated_per_minute = sum_rate / static_cast<double>(report.pairs_counted);
  report.pct_impacted = all_participants.empty()
                            ? 0.0
                            : 100.0 * static_cast<double>(impacted.size()) /
                                  static_cast<double>(all_participants.size());
  return report;
}

}  // namespace bridgekit

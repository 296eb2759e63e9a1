#ifndef BRIDGEKIT_EVAL_HPP_
#define BRIDGEKIT_EVAL_HPP_

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "bridgekit/cascade.hpp"

namespace bridgekit {

/// Seeded random partition of cascades; |train| = round(fraction * |cs|).
std::pair<std::vector<CascadeTree>, std::vector<CascadeTree>> split_cascades(
    const std::vector<CascadeTree>& cs, double train_fraction, std::uint64_t seed);

/// The ceil(fraction * n) users with the highest scores; ties broken by
/// smaller UserId. Throws InputError on an empty table.
std::vector<UserId> top_fraction(const std::vector<double>& scores, double fraction);

/// Realized-diffusion report for one selected user set.
struct EvalReport {
  std::string metric_name;
  double avg_activated_per_minute = 0.0;
  double avg_activated = 0.0;
  double pct_impacted = 0.0;  // percent of test-cascade participants
  std::size_t pairs_counted = 0;
  bool no_overlap_warning = false;
};

/// For each (selected user u, test cascade C) where u is a non-root
/// participant: counts u's strict descendants and the time from u's
/// activation to the last descendant's (floored at 1 second). Pairs with no
/// descendants are excluded from both averages. pct_impacted is the union of
/// descendant sets over all users appearing in test cascades.
EvalReport evaluate(const std::unordered_set<UserId>& selected,
                    const std::vector<CascadeTree>& test);

}  // namespace bridgekit

#endif  // BRIDGEKIT_EVAL_HPP_

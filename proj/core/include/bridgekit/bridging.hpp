#ifndef BRIDGEKIT_BRIDGING_HPP_
#define BRIDGEKIT_BRIDGING_HPP_

#include <unordered_map>
#include <vector>

#include "bridgekit/cascade.hpp"

namespace bridgekit {

/// Cascade bridging value of a non-root participant u: the mean over all
/// root-to-leaf paths of the fraction of each path occupied by the suffix
/// starting at u (inclusive). Paths not containing u contribute 0.
/// Throws std::domain_error when u is the root.
double cascade_bridging_value(const CascadeTree& c, UserId u);

struct BridgingScore {
  double ubm = 0.0;
  std::size_t cascades_participated = 0;
};

/// User bridging magnitude over a cascade set: per user, the sum of bridging
/// values across participated cascades, normalized by the maximum number of
/// cascades any non-root participant appears in. Roots of a cascade neither
/// earn a bridging value nor count as participants of it.
/// Throws InputError when cs is empty or no cascade has a non-root.
std::unordered_map<UserId, BridgingScore> ubm(const std::vector<CascadeTree>& cs);

/// ubm() flattened to a dense vector over n_users (absent users get 0).
std::vector<double> ubm_vector(const std::vector<CascadeTree>& cs, std::size_t n_users);

}  // namespace bridgekit

#endif  // BRIDGEKIT_BRIDGING_HPP_

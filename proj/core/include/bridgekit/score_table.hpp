#ifndef BRIDGEKIT_SCORE_TABLE_HPP_
#define BRIDGEKIT_SCORE_TABLE_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bridgekit/graph.hpp"

namespace bridgekit {

/// Named per-user metric vectors (ubm, centralities, activity, ...).
/// Values are dense over [0, node_count); absent users score 0.
class ScoreTable {
 public:
  void set(const std::string& metric, std::vector<double> values);
  bool has(const std::string& metric) const { return metrics_.count(metric) > 0; }
  const std::vector<double>& values(const std::string& metric) const;
  std::vector<std::string> metric_names() const;

  /// scores.csv round trip: header `user,metric,value`, users by external id.
  void write_csv(std::ostream& out, const SocialGraph& g) const;
  static ScoreTable read_csv(std::istream& in, const SocialGraph& g);

 private:
  std::map<std::string, std::vector<double>> metrics_;
};

}  // namespace bridgekit

#endif  // BRIDGEKIT_SCORE_TABLE_HPP_

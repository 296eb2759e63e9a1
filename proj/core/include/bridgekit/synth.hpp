#ifndef BRIDGEKIT_SYNTH_HPP_
#define BRIDGEKIT_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace bridgekit {

/// Configuration for the synthetic graph + independent-cascade generator.
/// Everything downstream (cascades, scores, SWB, regression) can be
/// exercised on its output at desk scale with known planted structure.
struct SynthConfig {
  enum class GraphModel { kPreferentialAttachment, kUniformRandom };

  std::size_t n_users = 2000;
  GraphModel graph_model = GraphModel::kPreferentialAttachment;
  double edge_param = 5.0;  // PA: follows per new node; uniform: edge probability
  std::size_t n_messages = 3000;
  double base_activation_prob = 0.05;
  std::size_t bridge_users = 50;
  double bridge_boost = 5.0;  // per-edge probability multiplier for bridge sources
  double swb_effect = 0.0;    // shift of planted positive share for bridges
  std::uint64_t seed = 1;

  void validate() const;
};

struct SynthResult {
  std::vector<std::string> bridge_ids;  // external ids of planted bridges
  std::size_t cascades_emitted = 0;     // messages with >= 2 retweet events
  std::size_t events_written = 0;
  bool empty_cascade_warning = false;
  std::int64_t period_boundary = 0;  // posts before/during split
};

/// Writes edges.csv, events.csv, posts.csv and ground_truth.json into
/// out_dir. Deterministic: a fixed seed yields byte-identical files.
SynthResult generate(const SynthConfig& config, const std::string& out_dir);

}  // namespace bridgekit

#endif  // BRIDGEKIT_SYNTH_HPP_

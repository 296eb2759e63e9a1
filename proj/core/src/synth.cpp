#include "bridgekit/synth.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "bridgekit/csv.hpp"
#include "bridgekit/graph.hpp"

namespace bridgekit {

namespace {

constexpr std::int64_t kPeriodBoundary = 500000000;
constexpr std::int64_t kPeriodLength = 500000000;

std::string uname(std::size_t i) { return "u" + std::to_string(i); }

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stage) {
  std::seed_seq seq{seed, stage};
  return std::mt19937_64(seq);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  return out;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_users < 2) throw InputError("synth: n_users must be >= 2");
  if (base_activation_prob < 0.0 || base_activation_prob >= 1.0)
    throw InputError("synth: base_activation_prob must be in [0,1)");
  if (graph_model == GraphModel::kUniformRandom &&
      (edge_param <= 0.0 || edge_param >= 1.0))
    throw InputError("synth: edge_param must be in (0,1) for uniform_random");
  if (graph_model == GraphModel::kPreferentialAttachment && edge_param < 1.0)
    throw InputError("synth: edge_param must be >= 1 for preferential_attachment");
  if (bridge_boost < 1.0) throw InputError("synth: bridge_boost must be >= 1");
  if (bridge_users >= n_users) throw InputError("synth: bridge_users must be < n_users");
}

SynthResult generate(const SynthConfig& config, const std::string& out_dir) {
  config.validate();
  const std::size_t n = config.n_users;
  SynthResult result;
  result.period_boundary = kPeriodBoundary;

  // ---- follow graph: transmission edges src -> dst (dst follows src) ----
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  auto add_edge = [&](std::size_t src, std::size_t dst) {
    if (src != dst)
      edges.insert({static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(dst)});
  };

  auto graph_rng = substream(config.seed, 1);
  if (config.graph_model == SynthConfig::GraphModel::kPreferentialAttachment) {
    const std::size_t m = static_cast<std::size_t>(config.edge_param);
    // Repeated-target list gives in-degree-proportional attachment.
    std::vector<std::uint32_t> attractor{0};
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t picks = std::min(m, i);
      for (std::size_t k = 0; k < picks; ++k) {
        std::uniform_int_distribution<std::size_t> pick(0, attractor.size() - 1);
        const std::uint32_t target = attractor[pick(graph_rng)];
        add_edge(target, i);  // i follows target
        attractor.push_back(target);
      }
      attractor.push_back(static_cast<std::uint32_t>(i));
    }
  } else {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t src = 0; src < n; ++src)
      for (std::size_t dst = 0; dst < n; ++dst)
        if (src != dst && coin(graph_rng) < config.edge_param) add_edge(src, dst);
  }

  // ---- planted bridges: mid-range ids, well connected both ways ----
  auto bridge_rng = substream(config.seed, 2);
  std::vector<std::size_t> mid_range;
  for (std::size_t i = n / 4; i < (3 * n) / 4; ++i) mid_range.push_back(i);
  std::shuffle(mid_range.begin(), mid_range.end(), bridge_rng);
  std::vector<std::size_t> bridges(mid_range.begin(),
                                   mid_range.begin() +
                                       std::min(config.bridge_users, mid_range.size()));
  std::sort(bridges.begin(), bridges.end());
  std::vector<bool> is_bridge(n, false);
  for (std::size_t b : bridges) is_bridge[b] = true;

  std::uniform_int_distribution<std::size_t> any_user(0, n - 1);
  for (std::size_t b : bridges) {
    for (int k = 0; k < 15; ++k) add_edge(any_user(bridge_rng), b);  // b follows
    for (int k = 0; k < 15; ++k) add_edge(b, any_user(bridge_rng));  // b is followed
  }

  // Adjacency in transmission orientation.
  std::vector<std::vector<std::uint32_t>> followers_of(n);
  std::vector<std::vector<std::uint32_t>> followees_of(n);
  for (auto [src, dst] : edges) {
    followers_of[src].push_back(dst);
    followees_of[dst].push_back(src);
  }

  {
    auto out = open_out(out_dir + "/edges.csv");
    out << "follower,followee\n";
    for (auto [src, dst] : edges) out << uname(dst) << ',' << uname(src) << '\n';
  }

  // ---- independent-cascade event log ----
  auto ic_rng = substream(config.seed, 3);
  auto out_events = open_out(out_dir + "/events.csv");
  out_events << "message_id,user,time,origin_id,kind\n";
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> jitter(0, 29);

  for (std::size_t msg = 0; msg < config.n_messages; ++msg) {
    const std::size_t root = any_user(ic_rng);
    const std::int64_t t0 = static_cast<std::int64_t>(msg) * 10000;
    const std::string root_id = "m" + std::to_string(msg);
    out_events << root_id << ',' << uname(root) << ',' << t0 << ",,original\n";

    struct Activation {
      std::uint32_t user;
      std::int64_t time;
      std::string message_id;
    };
    std::vector<Activation> activations{{static_cast<std::uint32_t>(root), t0, root_id}};
    std::vector<bool> active(n, false);
    active[root] = true;

    std::size_t retweets = 0;
    std::size_t frontier_begin = 0;
    std::size_t round = 0;
    while (frontier_begin < activations.size()) {
      const std::size_t frontier_end = activations.size();
      ++round;
      for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
        const auto source = activations[i];
        double p = config.base_activation_prob;
        if (is_bridge[source.user]) p = std::min(p * config.bridge_boost, 0.95);
        for (std::uint32_t v : followers_of[source.user]) {
          if (active[v] || coin(ic_rng) >= p) continue;
          active[v] = true;
          ++retweets;
          Activation a;
          a.user = v;
          a.time = t0 + static_cast<std::int64_t>(round) * 60 + jitter(ic_rng);
          a.message_id = root_id + "r" + std::to_string(retweets);
          // Retweet of the activator's own (re)tweet: exercises transitive
          // origin resolution downstream.
          out_events << a.message_id << ',' << uname(v) << ',' << a.time << ','
                     << source.message_id << ",retweet\n";
          activations.push_back(std::move(a));
        }
      }
      frontier_begin = frontier_end;
    }
    result.events_written += 1 + retweets;
    if (retweets >= 2) ++result.cascades_emitted;
  }
  if (result.cascades_emitted == 0) result.empty_cascade_warning = true;

  // ---- sentiment-labeled posts with a planted bridge/SWB relationship ----
  auto post_rng = substream(config.seed, 4);
  auto out_posts = open_out(out_dir + "/posts.csv");
  out_posts << "user,time,sentiment,kind\n";
  std::uniform_int_distribution<int> n_posts_dist(8, 16);
  std::normal_distribution<double> share_noise(0.0, 0.05);
  for (std::size_t u = 0; u < n; ++u) {
    const double planted = is_bridge[u] ? config.swb_effect : 0.0;
    for (int period = 0; period < 2; ++period) {
      const double share =
          std::clamp(0.5 + planted + share_noise(post_rng), 0.05, 0.95);
      const int count = n_posts_dist(post_rng);
      const std::int64_t base =
          period == 0 ? 0 : kPeriodBoundary;
      for (int k = 0; k < count; ++k) {
        std::uniform_int_distribution<std::int64_t> when(base, base + kPeriodLength - 1);
        const double roll = coin(post_rng);
        const char* sentiment;
        if (roll < 0.3) sentiment = "neu";
        else sentiment = coin(post_rng) < share ? "pos" : "neg";
        const double kind_roll = coin(post_rng);
        const char* kind = kind_roll < 0.8 ? "original" : (kind_roll < 0.9 ? "quote" : "retweet");
        out_posts << uname(u) << ',' << when(post_rng) << ',' << sentiment << ',' << kind
                  << '\n';
      }
    }
  }

  for (std::size_t b : bridges) result.bridge_ids.push_back(uname(b));
  {
    nlohmann::json j;
    j["bridge_ids"] = result.bridge_ids;
    j["swb_effect"] = config.swb_effect;
    j["bridge_boost"] = config.bridge_boost;
    j["base_activation_prob"] = config.base_activation_prob;
    j["period_boundary"] = kPeriodBoundary;
    j["seed"] = config.seed;
    j["n_users"] = config.n_users;
    j["n_messages"] = config.n_messages;
    j["cascades_emitted"] = result.cascades_emitted;
    auto out = open_out(out_dir + "/ground_truth.json");
    out << j.dump(2) << '\n';
  }
  return result;
}

}  // namespace bridgekit

#include <doctest.h>

#include <random>
#include <sstream>

#include "bridgekit/cascade.hpp"
#include "test_helpers.hpp"

using namespace bridgekit;
namespace bt = bridgekit::testing;

namespace {

std::set<std::vector<std::string>> named_paths(const CascadeTree& c, const SocialGraph& g) {
  std::set<std::vector<std::string>> out;
  for (const auto& path : paths(c)) {
    std::vector<std::string> named;
    for (UserId u : path) named.push_back(g.ids().name(u));
    out.insert(named);
  }
  return out;
}

void check_tree_invariants(const CascadeTree& c, const SocialGraph& g) {
  REQUIRE(c.activation.count(c.root) == 1);
  CHECK(c.parent.count(c.root) == 0);
  for (const auto& [child, p] : c.parent) {
    CHECK(c.contains(p));
    CHECK(c.activation.at(child) > c.activation.at(p));
    CHECK(g.can_transmit(p, child));
    // acyclicity: walking up reaches the root
    UserId cur = child;
    std::size_t hops = 0;
    while (cur != c.root) {
      REQUIRE(c.parent.count(cur) == 1);
      cur = c.parent.at(cur);
      REQUIRE(++hops <= c.parent.size());
    }
  }
}

}  // namespace

TEST_CASE("worked example reconstructs the expected path set") {
  SocialGraph g = bt::example_graph();
  auto cascades = build_cascades(g, bt::example_events());
  REQUIRE(cascades.size() == 1);
  const auto& c = cascades[0];
  CHECK(c.root == g.user("u1"));
  CHECK(c.size() == 7);

  std::set<std::vector<std::string>> expected{
      {"u1", "u2", "u7", "u8"}, {"u1", "u3", "u4"}, {"u1", "u3", "u6"}};
  CHECK(named_paths(c, g) == expected);
  check_tree_invariants(c, g);
}

TEST_CASE("parent is the most recent prior followee") {
  SocialGraph g = bt::example_graph();
  auto cascades = build_cascades(g, bt::example_events());
  REQUIRE(cascades.size() == 1);
  // u4 follows both u1 (t=0) and u3 (t=20); u3 acted later.
  CHECK(cascades[0].parent.at(g.user("u4")) == g.user("u3"));
}

TEST_CASE("cascade with a single retweeter is eliminated") {
  SocialGraph g = bt::example_graph();
  std::vector<DiffusionEvent> events{
      {"m1", "u1", 0, "", EventKind::kOriginal},
      {"m1r1", "u2", 10, "m1", EventKind::kRetweet},
  };
  BuildStats stats;
  CHECK(build_cascades(g, events, &stats).empty());
  CHECK(stats.cascades_too_small == 1);
}

TEST_CASE("retweet with unknown origin is skipped and counted") {
  SocialGraph g = bt::example_graph();
  auto events = bt::example_events();
  events.push_back({"x1", "u5", 99, "no-such-message", EventKind::kRetweet});
  BuildStats stats;
  auto cascades = build_cascades(g, events, &stats);
  CHECK(cascades.size() == 1);
  CHECK(stats.unknown_origin_skipped == 1);
}

TEST_CASE("events by users absent from the graph are skipped") {
  SocialGraph g = bt::example_graph();
  auto events = bt::example_events();
  events.push_back({"m1r9", "stranger", 70, "m1", EventKind::kRetweet});
  BuildStats stats;
  auto cascades = build_cascades(g, events, &stats);
  CHECK(cascades.size() == 1);
  CHECK(stats.unknown_user_skipped == 1);
}

TEST_CASE("retweet chains resolve transitively to the original") {
  SocialGraph g = bt::example_graph();
  std::vector<DiffusionEvent> events{
      {"m1", "u1", 0, "", EventKind::kOriginal},
      {"r1", "u2", 10, "m1", EventKind::kRetweet},
      {"r2", "u7", 20, "r1", EventKind::kRetweet},  // retweet of a retweet
      {"r3", "u8", 30, "r2", EventKind::kRetweet},
  };
  auto cascades = build_cascades(g, events);
  REQUIRE(cascades.size() == 1);
  CHECK(cascades[0].message_id == "m1");
  CHECK(cascades[0].size() == 4);
}

TEST_CASE("retweeter following no prior participant is dropped") {
  // u5 follows u3, u2, u4; none of them participate before u5.
  SocialGraph g = bt::example_graph();
  std::vector<DiffusionEvent> events{
      {"m1", "u1", 0, "", EventKind::kOriginal},
      {"r1", "u5", 10, "m1", EventKind::kRetweet},
      {"r2", "u2", 20, "m1", EventKind::kRetweet},
      {"r3", "u3", 30, "m1", EventKind::kRetweet},
  };
  BuildStats stats;
  auto cascades = build_cascades(g, events, &stats);
  REQUIRE(cascades.size() == 1);
  CHECK(stats.unattachable_dropped == 1);
  CHECK_FALSE(cascades[0].contains(g.user("u5")));
}

TEST_CASE("same-timestamp parents tie-break to the smaller UserId") {
  std::vector<std::pair<std::string, std::string>> pairs{
      {"a", "root"}, {"b", "root"}, {"c", "a"}, {"c", "b"}};
  SocialGraph g = SocialGraph::from_follow_pairs(pairs);
  std::vector<DiffusionEvent> events{
      {"m", "root", 0, "", EventKind::kOriginal},
      {"r1", "a", 10, "m", EventKind::kRetweet},
      {"r2", "b", 10, "m", EventKind::kRetweet},
      {"r3", "c", 20, "m", EventKind::kRetweet},
  };
  auto cascades = build_cascades(g, events);
  REQUIRE(cascades.size() == 1);
  UserId expected = std::min(g.user("a"), g.user("b"));
  CHECK(cascades[0].parent.at(g.user("c")) == expected);
}

TEST_CASE("duplicate retweets by the same user are ignored") {
  SocialGraph g = bt::example_graph();
  auto events = bt::example_events();
  events.push_back({"dup", "u2", 65, "m1", EventKind::kRetweet});
  BuildStats stats;
  auto cascades = build_cascades(g, events, &stats);
  REQUIRE(cascades.size() == 1);
  CHECK(stats.duplicate_participant_skipped == 1);
  CHECK(cascades[0].size() == 7);
}

TEST_CASE("paths on star and chain trees") {
  CascadeTree star;
  star.root = 0;
  star.activation[0] = 0;
  star.parent[1] = 0;
  star.parent[2] = 0;
  star.activation[1] = 1;
  star.activation[2] = 2;
  auto star_paths = paths(star);
  CHECK(star_paths.size() == 2);
  for (const auto& p : star_paths) CHECK(p.size() == 2);

  CascadeTree chain;
  chain.root = 0;
  chain.activation[0] = 0;
  for (UserId u = 1; u < 4; ++u) {
    chain.parent[u] = u - 1;
    chain.activation[u] = u;
  }
  auto chain_paths = paths(chain);
  REQUIRE(chain_paths.size() == 1);
  CHECK(chain_paths[0].size() == 4);
}

TEST_CASE("paths yields exactly one path per leaf") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    CascadeTree c = bt::random_tree(rng, 20);
    auto got = paths(c);
    auto expected = bt::oracle_paths(c);
    CHECK(got.size() == expected.size());
    std::set<std::vector<UserId>> got_set(got.begin(), got.end());
    std::set<std::vector<UserId>> expected_set(expected.begin(), expected.end());
    CHECK(got_set == expected_set);
  }
}

TEST_CASE("cascade_stats") {
  CHECK(cascade_stats({}).count == 0);
  CHECK_FALSE(cascade_stats({}).mean_defined);

  CascadeTree three, five;
  three.root = 0;
  three.activation[0] = 0;
  three.parent[1] = 0;
  three.parent[2] = 0;
  three.activation[1] = 1;
  three.activation[2] = 2;
  five = three;
  five.parent[3] = 1;
  five.parent[4] = 1;
  five.activation[3] = 3;
  five.activation[4] = 4;
  auto s = cascade_stats({three, five});
  CHECK(s.count == 2);
  CHECK(s.mean_size == doctest::Approx(4.0));
  CHECK(s.mean_defined);
}

TEST_CASE("invariant sweep over random simulated logs") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    SocialGraph g = bt::random_graph(rng, 25, 0.12);
    // Discrete-time independent cascade over transmission edges.
    std::vector<DiffusionEvent> events;
    std::uniform_int_distribution<UserId> root_dist(0, static_cast<UserId>(g.node_count() - 1));
    UserId root = root_dist(rng);
    events.push_back({"m", g.ids().name(root), 0, "", EventKind::kOriginal});
    std::vector<bool> active(g.node_count(), false);
    active[root] = true;
    std::vector<UserId> frontier{root};
    Timestamp t = 0;
    int rt = 0;
    while (!frontier.empty()) {
      std::vector<UserId> next;
      t += 60;
      for (UserId u : frontier) {
        for (UserId v : g.followers(u)) {
          if (active[v] || coin(rng) >= 0.4) continue;
          active[v] = true;
          next.push_back(v);
          events.push_back({"r" + std::to_string(++rt), g.ids().name(v),
                            t + static_cast<Timestamp>(coin(rng) * 30), "m",
                            EventKind::kRetweet});
        }
      }
      frontier = std::move(next);
    }
    for (const auto& c : build_cascades(g, events)) check_tree_invariants(c, g);
  }
}

TEST_CASE("determinism and thread-count independence") {
  std::mt19937_64 rng(5);
  SocialGraph g = bt::random_graph(rng, 40, 0.1);
  std::vector<DiffusionEvent> events;
  std::uniform_int_distribution<int> user_dist(0, 39);
  for (int m = 0; m < 10; ++m) {
    std::string mid = "m" + std::to_string(m);
    events.push_back({mid, g.ids().name(user_dist(rng)), m * 1000, "", EventKind::kOriginal});
    for (int r = 0; r < 15; ++r) {
      events.push_back({mid + "r" + std::to_string(r), g.ids().name(user_dist(rng)),
                        m * 1000 + (r + 1) * 10, mid, EventKind::kRetweet});
    }
  }
  auto a = build_cascades(g, events, nullptr, 1);
  auto b = build_cascades(g, events, nullptr, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].message_id == b[i].message_id);
    CHECK(a[i].root == b[i].root);
    CHECK(a[i].parent == b[i].parent);
    CHECK(a[i].activation == b[i].activation);
  }
}

TEST_CASE("jsonl round trip") {
  SocialGraph g = bt::example_graph();
  auto cascades = build_cascades(g, bt::example_events());
  std::stringstream buffer;
  write_cascades_jsonl(buffer, cascades, g);
  auto loaded = read_cascades_jsonl(buffer, g);
  REQUIRE(loaded.size() == cascades.size());
  CHECK(loaded[0].root == cascades[0].root);
  CHECK(loaded[0].parent == cascades[0].parent);
  CHECK(loaded[0].activation == cascades[0].activation);
}

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "bridgekit/swb.hpp"
#include "test_helpers.hpp"

using namespace bridgekit;

namespace {

constexpr Timestamp kBoundary = 1000000;

LabeledPost post(UserId u, Timestamp t, Sentiment s,
                 PostKind k = PostKind::kOriginal) {
  return LabeledPost{u, t, s, k};
}

// Appends `n_pos`/`n_neg`/`n_neu` originals for `user` in the given period.
void fill_period(std::vector<LabeledPost>& posts, UserId user, bool during,
                 std::size_t n_pos, std::size_t n_neg, std::size_t n_neu) {
  Timestamp t = during ? kBoundary : 0;
  for (std::size_t i = 0; i < n_pos; ++i) posts.push_back(post(user, t++, Sentiment::kPositive));
  for (std::size_t i = 0; i < n_neg; ++i) posts.push_back(post(user, t++, Sentiment::kNegative));
  for (std::size_t i = 0; i < n_neu; ++i) posts.push_back(post(user, t++, Sentiment::kNeutral));
}

const SwbRecord* find_record(const std::vector<SwbRecord>& rs, UserId u, Period p) {
  for (const auto& r : rs)
    if (r.user == u && r.period == p) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("swb_value: all-neutral posts give zero") {
  for (std::size_t k : {1u, 7u, 100u}) CHECK(swb_value(0, 0, k) == 0.0);
}

TEST_CASE("swb_value: all-positive posts give one") {
  for (std::size_t p : {1u, 5u, 42u}) CHECK(swb_value(p, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("swb_value: (3,1,4) worked example") {
  CHECK(swb_value(3, 1, 4) == doctest::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("swb_value: antisymmetric in positive/negative counts") {
  for (std::size_t a = 0; a < 20; ++a)
    for (std::size_t b = 0; b < 20; ++b)
      for (std::size_t c = 0; c < 20; ++c) {
        if (a + b + c == 0) continue;
        CHECK(swb_value(a, b, c) == doctest::Approx(-swb_value(b, a, c)).epsilon(1e-12));
      }
}

TEST_CASE("swb_value: neutral posts dilute the non-neutral signal") {
  CHECK(swb_value(4, 0, 4) < swb_value(4, 0, 0));
  CHECK(swb_value(4, 0, 4) > 0.0);
  CHECK_THROWS_AS(swb_value(0, 0, 0), InputError);
}

TEST_CASE("user_swb: period threshold requires strictly more than min_posts") {
  std::vector<LabeledPost> posts;
  fill_period(posts, 0, false, 6, 0, 0);  // 6 before -> record
  fill_period(posts, 0, true, 2, 0, 0);   // 2 during -> no record
  auto records = user_swb(posts, kBoundary, 5);
  REQUIRE(records.size() == 1);
  CHECK(records[0].user == 0);
  CHECK(records[0].period == Period::kBefore);
  CHECK(records[0].n_pos == 6);

  // Exactly min_posts is still too few.
  posts.clear();
  fill_period(posts, 1, false, 5, 0, 0);
  CHECK(user_swb(posts, kBoundary, 5).empty());
}

TEST_CASE("user_swb: retweets never count, quotes do") {
  std::vector<LabeledPost> posts;
  for (int i = 0; i < 10; ++i)
    posts.push_back(post(0, i, Sentiment::kPositive, PostKind::kRetweet));
  CHECK(user_swb(posts, kBoundary, 5).empty());

  for (int i = 0; i < 10; ++i)
    posts.push_back(post(0, 100 + i, Sentiment::kPositive, PostKind::kQuote));
  auto records = user_swb(posts, kBoundary, 5);
  REQUIRE(records.size() == 1);
  CHECK(records[0].n_pos == 10);
}

TEST_CASE("user_swb: boundary post falls into the during period") {
  std::vector<LabeledPost> posts;
  fill_period(posts, 0, false, 7, 0, 0);
  posts.push_back(post(0, kBoundary, Sentiment::kNegative));
  auto records = user_swb(posts, kBoundary, 0);
  const SwbRecord* during = find_record(records, 0, Period::kDuring);
  REQUIRE(during != nullptr);
  CHECK(during->n_neg == 1);
  const SwbRecord* before = find_record(records, 0, Period::kBefore);
  REQUIRE(before != nullptr);
  CHECK(before->n_pos == 7);
}

TEST_CASE("user_swb: counts match a filtered recount oracle") {
  std::mt19937_64 rng(555);
  std::uniform_int_distribution<UserId> user(0, 30);
  std::uniform_int_distribution<Timestamp> time(0, 2 * kBoundary);
  std::uniform_int_distribution<int> sent(0, 2), kind(0, 2);
  std::vector<LabeledPost> posts;
  for (int i = 0; i < 5000; ++i) {
    posts.push_back({user(rng), time(rng), static_cast<Sentiment>(sent(rng)),
                     static_cast<PostKind>(kind(rng))});
  }
  auto records = user_swb(posts, kBoundary, 5);

  // Independent recount keyed by (user, period).
  std::map<std::pair<UserId, int>, std::array<std::size_t, 3>> counts;
  for (const auto& p : posts) {
    if (p.kind == PostKind::kRetweet) continue;
    int period = p.time >= kBoundary ? 1 : 0;
    counts[{p.user, period}][static_cast<int>(p.sentiment)] += 1;
  }
  std::size_t expected_records = 0;
  for (const auto& [key, c] : counts)
    if (c[0] + c[1] + c[2] > 5) ++expected_records;
  CHECK(records.size() == expected_records);

  for (const auto& r : records) {
    const auto& c = counts.at({r.user, r.period == Period::kDuring ? 1 : 0});
    CHECK(r.n_pos == c[0]);
    CHECK(r.n_neg == c[1]);
    CHECK(r.n_neu == c[2]);
    CHECK(r.swb == doctest::Approx(swb_value(c[0], c[1], c[2])).epsilon(1e-12));
  }
}

TEST_CASE("group_swb_change: planted top-group positive-share drop is negative") {
  // 100 users scored by id; the top quarter's positive share falls from 60%
  // to 30% while everyone else stays at 50/50.
  const std::size_t n = 100;
  std::vector<double> scores(n);
  std::vector<LabeledPost> posts;
  for (UserId u = 0; u < n; ++u) {
    scores[u] = static_cast<double>(u);
    if (u >= 75) {
      fill_period(posts, u, false, 24, 16, 0);  // 60% positive
      fill_period(posts, u, true, 12, 28, 0);   // 30% positive
    } else {
      fill_period(posts, u, false, 20, 20, 0);
      fill_period(posts, u, true, 20, 20, 0);
    }
  }
  auto records = user_swb(posts, kBoundary, 5);
  auto [top, bottom] = group_swb_change(records, scores, 0.25);
  CHECK(top.before.n_users == 25);
  CHECK(top.mean_change < -0.1);
  CHECK(top.before.mean == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(top.during.mean == doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(bottom.mean_change == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("group_swb_change: identical period distributions give near-zero change") {
  std::mt19937_64 rng(808);
  const std::size_t n = 300;
  std::vector<double> scores(n);
  std::vector<LabeledPost> posts;
  std::bernoulli_distribution positive(0.55);
  for (UserId u = 0; u < n; ++u) {
    scores[u] = static_cast<double>(rng() % 1000);
    for (int period = 0; period < 2; ++period)
      for (int i = 0; i < 40; ++i)
        posts.push_back(post(u, (period ? kBoundary : 0) + i,
                             positive(rng) ? Sentiment::kPositive : Sentiment::kNegative));
  }
  auto records = user_swb(posts, kBoundary, 5);
  auto [top, bottom] = group_swb_change(records, scores, 0.2);
  CHECK(std::abs(top.mean_change) < 0.06);
  CHECK(std::abs(bottom.mean_change) < 0.06);
}

TEST_CASE("group_swb_change: planted 2x top-vs-bottom drop ratio is recovered") {
  // Top group's positive share falls 0.60 -> 0.30 (SWB 0.2 -> -0.4), bottom
  // group's 0.55 -> 0.40 (SWB 0.1 -> -0.2): planted drop ratio exactly 2.
  std::mt19937_64 rng(2024);
  const std::size_t n = 400;
  const int posts_per_period = 80;
  std::vector<double> scores(n);
  std::vector<LabeledPost> posts;
  for (UserId u = 0; u < n; ++u) {
    scores[u] = static_cast<double>(u);
    const bool top_group = u >= n - n / 5;
    const double p_before = top_group ? 0.60 : 0.55;
    const double p_during = top_group ? 0.30 : 0.40;
    std::bernoulli_distribution before(p_before), during(p_during);
    for (int i = 0; i < posts_per_period; ++i) {
      posts.push_back(post(u, i, before(rng) ? Sentiment::kPositive : Sentiment::kNegative));
      posts.push_back(post(u, kBoundary + i,
                           during(rng) ? Sentiment::kPositive : Sentiment::kNegative));
    }
  }
  auto records = user_swb(posts, kBoundary, 5);
  auto [top, bottom] = group_swb_change(records, scores, 0.2);
  CHECK(top.mean_change < 0.0);
  CHECK(bottom.mean_change < 0.0);
  const double ratio = top.mean_change / bottom.mean_change;
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("group_swb_change: empty group is an input error naming the group") {
  std::vector<LabeledPost> posts;
  fill_period(posts, 0, false, 10, 0, 0);  // user 0 only has a before record
  std::vector<double> scores{1.0, 0.5};
  auto records = user_swb(posts, kBoundary, 5);
  CHECK_THROWS_AS(group_swb_change(records, scores, 0.5), InputError);
}

TEST_CASE("load_posts: parses sentiments and drops unknown users") {
  SocialGraph g = SocialGraph::from_follow_pairs({{"alice", "bob"}});
  std::istringstream in(
      "user,time,sentiment,kind\n"
      "alice,10,pos,original\n"
      "bob,20,neg,retweet\n"
      "alice,30,neu,quote\n"
      "stranger,40,pos,original\n");
  std::size_t dropped = 0;
  auto posts = load_posts(in, g, &dropped);
  REQUIRE(posts.size() == 3);
  CHECK(dropped == 1);
  CHECK(posts[0].sentiment == Sentiment::kPositive);
  CHECK(posts[0].kind == PostKind::kOriginal);
  CHECK(posts[1].kind == PostKind::kRetweet);
  CHECK(posts[2].kind == PostKind::kQuote);
  CHECK(posts[2].sentiment == Sentiment::kNeutral);
}

TEST_CASE("load_posts: malformed rows report line numbers") {
  SocialGraph g = SocialGraph::from_follow_pairs({{"a", "b"}});
  std::istringstream bad_header("user,when\n");
  CHECK_THROWS_AS(load_posts(bad_header, g), InputError);
  std::istringstream bad_sent("user,time,sentiment,kind\na,1,happy,original\n");
  CHECK_THROWS_WITH_AS(load_posts(bad_sent, g), doctest::Contains("line 2"), InputError);
}

TEST_CASE("write_swb_csv emits one row per record with external ids") {
  SocialGraph g = SocialGraph::from_follow_pairs({{"alice", "bob"}});
  std::vector<LabeledPost> posts;
  fill_period(posts, g.user("alice"), false, 6, 2, 0);
  auto records = user_swb(posts, kBoundary, 5);
  std::ostringstream out;
  write_swb_csv(out, records, g);
  CHECK(out.str().find("user,period,n_pos,n_neg,n_neu,swb") == 0);
  CHECK(out.str().find("alice,before,6,2,0,") != std::string::npos);
}

#ifndef BRIDGEKIT_SWB_HPP_
#define BRIDGEKIT_SWB_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bridgekit/cascade.hpp"
#include "bridgekit/graph.hpp"

namespace bridgekit {

enum class Sentiment { kPositive, kNegative, kNeutral };
enum class PostKind { kOriginal, kQuote, kRetweet };

/// One sentiment-labeled post; labels are inputs, not computed here.
struct LabeledPost {
  UserId user = kInvalidUser;
  Timestamp time = 0;
  Sentiment sentiment = Sentiment::kNeutral;
  PostKind kind = PostKind::kOriginal;
};

/// Reads posts.csv (header `user,time,sentiment,kind`; sentiment in
/// {pos,neg,neu}, kind in {original,quote,retweet}). Posts by unknown users
/// are dropped and counted in *dropped when given.
std::vector<LabeledPost> load_posts(std::istream& in, const SocialGraph& g,
                                    std::size_t* dropped = nullptr);
std::vector<LabeledPost> load_posts_file(const std::string& path, const SocialGraph& g,
                                         std::size_t* dropped = nullptr);

enum class Period { kBefore, kDuring };

struct SwbRecord {
  UserId user = kInvalidUser;
  Period period = Period::kBefore;
  std::size_t n_pos = 0, n_neg = 0, n_neu = 0;
  double swb = 0.0;
};

/// Tri-polarity subjective well-being: the positive/negative balance scaled
/// by the square root of the non-neutral share. 0 when all posts are
/// neutral. Throws InputError when all counts are zero.
double swb_value(std::size_t n_pos, std::size_t n_neg, std::size_t n_neu);

/// Per-user, per-period SWB. Retweets are excluded; originals and quotes
/// count. A user gets a record for a period only with strictly more than
/// min_posts qualifying posts in it. Posts at `boundary` or later fall into
/// the during period.
std::vector<SwbRecord> user_swb(const std::vector<LabeledPost>& posts, Timestamp boundary,
                                std::size_t min_posts = 5);

struct GroupPeriodStats {
  std::size_t n_users = 0;
  double mean = 0.0, median = 0.0, q1 = 0.0, q3 = 0.0;
};

struct GroupStats {
  GroupPeriodStats before, during;
  double mean_change = 0.0;  // mean(during) - mean(before), dual-period users
};

/// Splits users into top/bottom `fraction` by score and summarizes SWB per
/// period over users present in both periods. Throws InputError naming the
/// group when it has no dual-period users.
std::pair<GroupStats, GroupStats> group_swb_change(const std::vector<SwbRecord>& records,
                                                   const std::vector<double>& scores,
                                                   double fraction);

void write_swb_csv(std::ostream& out, const std::vector<SwbRecord>& records,
                   const SocialGraph& g);
void write_group_report_json(std::ostream& out, const GroupStats& top, const GroupStats& bottom);

}  // namespace bridgekit

#endif  // BRIDGEKIT_SWB_HPP_

#include "bridgekit/swb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "bridgekit/csv.hpp"
#include "bridgekit/eval.hpp"

namespace bridgekit {

std::vector<LabeledPost> load_posts(std::istream& in, const SocialGraph& g,
                                    std::size_t* dropped) {
  std::vector<LabeledPost> posts;
  std::size_t skipped = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "user,time,sentiment,kind")
        throw InputError("line 1: expected header 'user,time,sentiment,kind'");
      continue;
    }
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (fields.size() != 4)
      throw InputError("line " + std::to_string(line_no) + ": expected 4 fields");
    LabeledPost p;
    p.user = g.user(std::string(fields[0]));
    if (p.user == kInvalidUser) {
      ++skipped;
      continue;
    }
    p.time = csv::parse_int(fields[1], line_no, "time");
    if (fields[2] == "pos") p.sentiment = Sentiment::kPositive;
    else if (fields[2] == "neg") p.sentiment = Sentiment::kNegative;
    else if (fields[2] == "neu") p.sentiment = Sentiment::kNeutral;
    else throw InputError("line " + std::to_string(line_no) + ": bad sentiment");
    if (fields[3] == "original") p.kind = PostKind::kOriginal;
    else if (fields[3] == "quote") p.kind = PostKind::kQuote;
    else if (fields[3] == "retweet") p.kind = PostKind::kRetweet;
    else throw InputError("line " + std::to_string(line_no) + ": bad kind");
    posts.push_back(p);
  }
  if (dropped) *dropped = skipped;
  return posts;
}

std::vector<LabeledPost> load_posts_file(const std::string& path, const SocialGraph& g,
                                         std::size_t* dropped) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open posts file: " + path);
  return load_posts(in, g, dropped);
}

double swb_value(std::size_t n_pos, std::size_t n_neg, std::size_t n_neu) {
  if (n_pos + n_neg + n_neu == 0) throw InputError("swb_value: no posts");
  const double polar = static_cast<double>(n_pos + n_neg);
  if (polar == 0.0) return 0.0;
  const double total = polar + static_cast<double>(n_neu);
  const double balance = (static_cast<double>(n_pos) - static_cast<double>(n_neg)) / polar;
  return balance * std::sqrt(polar / total);
}

std::vector<SwbRecord> user_swb(const std::vector<LabeledPost>& posts, Timestamp boundary,
                                std::size_t min_posts) {
  struct Counts {
    std::size_t pos = 0, neg = 0, neu = 0;
    std::size_t total() const { return pos + neg + neu; }
  };
  std::map<UserId, std::array<Counts, 2>> per_user;
  for (const auto& p : posts) {
    if (p.kind == PostKind::kRetweet) continue;
    auto& c = per_user[p.user][p.time < boundary ? 0 : 1];
    switch (p.sentiment) {
      case Sentiment::kPositive: ++c.pos; break;
      case Sentiment::kNegative: ++c.neg; break;
      case Sentiment::kNeutral: ++c.neu; break;
    }
  }
  std::vector<SwbRecord> records;
  for (const auto& [user, periods] : per_user) {
    for (int i = 0; i < 2; ++i) {
      const auto& c = periods[i];
      if (c.total() <= min_posts) continue;
      SwbRecord r;
      r.user = user;
      r.period = i == 0 ? Period::kBefore : Period::kDuring;
      r.n_pos = c.pos;
      r.n_neg = c.neg;
      r.n_neu = c.neu;
      r.swb = swb_value(c.pos, c.neg, c.neu);
      records.push_back(r);
    }
  }
  return records;
}

namespace {

double quantile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

GroupPeriodStats summarize(std::vector<double> values) {
  GroupPeriodStats s;
  s.n_users = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  s.median = quantile(values, 0.5);
  s.q1 = quantile(values, 0.25);
  s.q3 = quantile(values, 0.75);
  return s;
}

GroupStats group_stats(const std::vector<UserId>& members,
                       const std::map<UserId, std::pair<const SwbRecord*, const SwbRecord*>>&
                           by_user,
                       const char* group_name) {
  std::vector<double> before, during;
  double change_sum = 0.0;
  std::size_t dual = 0;
  for (UserId u : members) {
    auto it = by_user.find(u);
    if (it == by_user.end()) continue;
    const auto& [b, d] = it->second;
    if (!b || !d) continue;  // change is over dual-period users only
    before.push_back(b->swb);
    during.push_back(d->swb);
    change_sum += d->swb - b->swb;
    ++dual;
  }
  if (dual == 0)
    throw InputError(std::string("group_swb_change: ") + group_name +
                     " group has no users with records in both periods");
  GroupStats g;
  g.before = summarize(std::move(before));
  g.during = summarize(std::move(during));
  g.mean_change = change_sum / static_cast<double>(dual);
  return g;
}

}  // namespace

std::pair<GroupStats, GroupStats> group_swb_change(const std::vector<SwbRecord>& records,
                                                   const std::vector<double>& scores,
                                                   double fraction) {
  if (fraction <= 0.0 || fraction > 0.5)
    throw InputError("group_swb_change: fraction must be in (0, 0.5]");
  std::map<UserId, std::pair<const SwbRecord*, const SwbRecord*>> by_user;
  for (const auto& r : records) {
    auto& slot = by_user[r.user];
    (r.period == Period::kBefore ? slot.first : slot.second) = &r;
  }

  std::vector<UserId> top = top_fraction(scores, fraction);
  std::vector<double> inverted(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) inverted[i] = -scores[i];
  std::vector<UserId> bottom = top_fraction(inverted, fraction);

  return {group_stats(top, by_user, "top"), group_stats(bottom, by_user, "bottom")};
}

void write_swb_csv(std::ostream& out, const std::vector<SwbRecord>& records,
                   const SocialGraph& g) {
  out << "user,period,n_pos,n_neg,n_neu,swb\n";
  for (const auto& r : records) {
    out << g.ids().name(r.user) << ',' << (r.period == Period::kBefore ? "before" : "during")
        << ',' << r.n_pos << ',' << r.n_neg << ',' << r.n_neu << ','
        << csv::format_double(r.swb) << '\n';
  }
}

namespace {

nlohmann::json period_json(const GroupPeriodStats& s) {
  return {{"n_users", s.n_users}, {"mean", s.mean},
          {"median", s.median},  {"q1", s.q1},
          {"q3", s.q3}};
}

nlohmann::json group_json(const GroupStats& g) {
  return {{"before", period_json(g.before)},
          {"during", period_json(g.during)},
          {"mean_change", g.mean_change}};
}

}  // namespace

void write_group_report_json(std::ostream& out, const GroupStats& top,
                             const GroupStats& bottom) {
  nlohmann::json j{{"top", group_json(top)}, {"bottom", group_json(bottom)}};
  out << j.dump(2) << '\n';
}

}  // namespace bridgekit

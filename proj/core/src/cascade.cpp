#include "bridgekit/cascade.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <map>

#include <json.hpp>

#include "bridgekit/csv.hpp"
#include "bridgekit/parallel.hpp"

namespace bridgekit {

std::vector<DiffusionEvent> load_events(std::istream& in) {
  std::vector<DiffusionEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "message_id,user,time,origin_id,kind")
        throw InputError("line 1: expected header 'message_id,user,time,origin_id,kind'");
      continue;
    }
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (fields.size() != 5)
      throw InputError("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                       std::to_string(fields.size()));
    DiffusionEvent e;
    e.message_id = std::string(fields[0]);
    e.user = std::string(fields[1]);
    e.time = csv::parse_int(fields[2], line_no, "time");
    e.origin_id = std::string(fields[3]);
    if (fields[4] == "original") {
      e.kind = EventKind::kOriginal;
    } else if (fields[4] == "retweet" || fields[4] == "quote") {
      e.kind = EventKind::kRetweet;
    } else {
      throw InputError("line " + std::to_string(line_no) + ": bad kind '" +
                       std::string(fields[4]) + "'");
    }
    if ((e.kind == EventKind::kRetweet) != !e.origin_id.empty())
      throw InputError("line " + std::to_string(line_no) +
                       ": origin_id must be present iff kind=retweet");
    if (e.message_id.empty() || e.user.empty())
      throw InputError("line " + std::to_string(line_no) + ": empty message_id or user");
    events.push_back(std::move(e));
  }
  return events;
}

std::vector<DiffusionEvent> load_events_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open event file: " + path);
  return load_events(in);
}

std::vector<UserId> CascadeTree::children_of(UserId u) const {
  std::vector<UserId> out;
  for (const auto& [child, p] : parent)
    if (p == u) out.push_back(child);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<UserId> CascadeTree::participants() const {
  std::vector<UserId> out;
  out.reserve(parent.size() + 1);
  for (const auto& [child, p] : parent) out.push_back(child);
  std::sort(out.begin(), out.end());
  out.insert(out.begin(), root);
  return out;
}

namespace {

struct MessageGroup {
  const DiffusionEvent* original = nullptr;
  std::vector<const DiffusionEvent*> retweets;
};

// Follows origin_id links until an original message is reached. Returns the
// empty string when the chain leaves the observed log.
std::string resolve_origin(const std::string& start,
                           const std::unordered_map<std::string, const DiffusionEvent*>& by_id) {
  std::string current = start;
  std::size_t hops = 0;
  while (true) {
    auto it = by_id.find(current);
    if (it == by_id.end()) return {};
    if (it->second->kind == EventKind::kOriginal) return current;
    current = it->second->origin_id;
    if (++hops > by_id.size()) return {};  // cycle in a malformed log
  }
}

}  // namespace

std::vector<CascadeTree> build_cascades(const SocialGraph& g,
                                        const std::vector<DiffusionEvent>& events,
                                        BuildStats* stats, unsigned threads) {
  BuildStats local;
  local.events_total = events.size();

  std::unordered_map<std::string, const DiffusionEvent*> by_id;
  for (const auto& e : events) by_id.emplace(e.message_id, &e);

  // Group retweets under their resolved original message. std::map keeps
  // output ordering independent of hash layout.
  std::map<std::string, MessageGroup> groups;
  for (const auto& e : events) {
    if (e.kind == EventKind::kOriginal) {
      groups[e.message_id].original = &e;
      continue;
    }
    std::string root_id = resolve_origin(e.origin_id, by_id);
    if (root_id.empty()) {
      ++local.unknown_origin_skipped;
      continue;
    }
    groups[root_id].retweets.push_back(&e);
  }

  std::vector<const MessageGroup*> work;
  std::vector<std::string> work_ids;
  for (auto& [id, grp] : groups) {
    if (!grp.original) {
      // Retweets of a message whose original never appears in the log.
      local.unknown_origin_skipped += grp.retweets.size();
      continue;
    }
    if (g.user(grp.original->user) == kInvalidUser) {
      ++local.unknown_user_skipped;
      local.unknown_origin_skipped += grp.retweets.size();
      continue;
    }
    work.push_back(&grp);
    work_ids.push_back(id);
  }

  struct Slot {
    CascadeTree tree;
    bool keep = false;
    BuildStats stats;
  };
  std::vector<Slot> slots(work.size());

  parallel_for(work.size(), threads, [&](std::size_t i) {
    const MessageGroup& grp = *work[i];
    Slot& slot = slots[i];
    CascadeTree& tree = slot.tree;
    tree.message_id = work_ids[i];
    tree.root = g.user(grp.original->user);
    tree.activation[tree.root] = grp.original->time;

    struct Attempt {
      Timestamp time;
      UserId user;
      bool operator<(const Attempt& o) const {
        return time != o.time ? time < o.time : user < o.user;
      }
    };
    std::vector<Attempt> attempts;
    attempts.reserve(grp.retweets.size());
    for (const DiffusionEvent* e : grp.retweets) {
      UserId u = g.user(e->user);
      if (u == kInvalidUser) {
        ++slot.stats.unknown_user_skipped;
        continue;
      }
      attempts.push_back({e->time, u});
    }
    std::sort(attempts.begin(), attempts.end());

    // Participants in activation order; a candidate parent must have acted
    // strictly before the child and be followed by the child.
    std::vector<UserId> order{tree.root};
    for (const Attempt& a : attempts) {
      if (tree.contains(a.user)) {
        ++slot.stats.duplicate_participant_skipped;
        continue;
      }
      UserId best = kInvalidUser;
      Timestamp best_time = 0;
      for (UserId p : order) {
        Timestamp pt = tree.activation[p];
        if (pt >= a.time) continue;
        if (!g.can_transmit(p, a.user)) continue;
        if (best == kInvalidUser || pt > best_time || (pt == best_time && p < best)) {
          best = p;
          best_time = pt;
        }
      }
      if (best == kInvalidUser) {
        ++slot.stats.unattachable_dropped;
        continue;
      }
      tree.parent[a.user] = best;
      tree.activation[a.user] = a.time;
      order.push_back(a.user);
    }

    if (tree.parent.size() >= 2) {
      slot.keep = true;
    } else {
      ++slot.stats.cascades_too_small;
    }
  });

  std::vector<CascadeTree> result;
  for (Slot& slot : slots) {
    local.unknown_user_skipped += slot.stats.unknown_user_skipped;
    local.duplicate_participant_skipped += slot.stats.duplicate_participant_skipped;
    local.unattachable_dropped += slot.stats.unattachable_dropped;
    local.cascades_too_small += slot.stats.cascades_too_small;
    if (slot.keep) result.push_back(std::move(slot.tree));
  }
  if (stats) *stats = local;
  return result;
}

std::vector<CascadePath> paths(const CascadeTree& c) {
  std::unordered_map<UserId, std::vector<UserId>> children;
  for (const auto& [child, p] : c.parent) children[p].push_back(child);
  for (auto& [u, kids] : children)
    std::sort(kids.begin(), kids.end(), [&](UserId a, UserId b) {
      Timestamp ta = c.activation.at(a), tb = c.activation.at(b);
      return ta != tb ? ta < tb : a < b;
    });

  std::vector<CascadePath> out;
  CascadePath current;
  auto dfs = [&](auto&& self, UserId u) -> void {
    current.push_back(u);
    auto it = children.find(u);
    if (it == children.end()) {
      out.push_back(current);
    } else {
      for (UserId child : it->second) self(self, child);
    }
    current.pop_back();
  };
  dfs(dfs, c.root);
  return out;
}

CascadeStats cascade_stats(const std::vector<CascadeTree>& cs) {
  CascadeStats s;
  s.count = cs.size();
  if (cs.empty()) return s;
  std::size_t total = 0;
  for (const auto& c : cs) total += c.size();
  s.mean_size = static_cast<double>(total) / static_cast<double>(cs.size());
  s.mean_defined = true;
  return s;
}

void write_cascades_jsonl(std::ostream& out, const std::vector<CascadeTree>& cs,
                          const SocialGraph& g) {
  for (const auto& c : cs) {
    nlohmann::json j;
    j["message_id"] = c.message_id;
    j["root"] = g.ids().name(c.root);
    nlohmann::json parents = nlohmann::json::object();
    nlohmann::json times = nlohmann::json::object();
    for (UserId u : c.participants()) {
      times[g.ids().name(u)] = c.activation.at(u);
      if (u != c.root) parents[g.ids().name(u)] = g.ids().name(c.parent.at(u));
    }
    j["parent"] = std::move(parents);
    j["activation"] = std::move(times);
    out << j.dump() << '\n';
  }
}

std::vector<CascadeTree> read_cascades_jsonl(std::istream& in, const SocialGraph& g) {
  std::vector<CascadeTree> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw InputError("cascades line " + std::to_string(line_no) + ": bad JSON");
    CascadeTree c;
    c.message_id = j.at("message_id").get<std::string>();
    c.root = g.user(j.at("root").get<std::string>());
    if (c.root == kInvalidUser)
      throw InputError("cascades line " + std::to_string(line_no) + ": unknown root user");
    for (const auto& [child, p] : j.at("parent").items()) {
      UserId cu = g.user(child), pu = g.user(p.get<std::string>());
      if (cu == kInvalidUser || pu == kInvalidUser)
        throw InputError("cascades line " + std::to_string(line_no) + ": unknown user");
      c.parent[cu] = pu;
    }
    for (const auto& [user, t] : j.at("activation").items()) {
      UserId u = g.user(user);
      if (u == kInvalidUser)
        throw InputError("cascades line " + std::to_string(line_no) + ": unknown user");
      c.activation[u] = t.get<Timestamp>();
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace bridgekit

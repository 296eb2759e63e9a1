#ifndef BRIDGEKIT_CASCADE_HPP_
#define BRIDGEKIT_CASCADE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bridgekit/graph.hpp"

namespace bridgekit {

using Timestamp = std::int64_t;  // UNIX seconds

enum class EventKind { kOriginal, kRetweet };

/// One post/retweet record from the event log. Users and messages are
/// referenced by external string ids; interning against the graph happens
/// during cascade construction.
struct DiffusionEvent {
  std::string message_id;
  std::string user;
  Timestamp time = 0;
  std::string origin_id;  // empty iff kind == kOriginal
  EventKind kind = EventKind::kOriginal;
};

/// Reads events.csv (header `message_id,user,time,origin_id,kind`).
/// kind is `original` or `retweet`; quotes are ingested as retweets.
std::vector<DiffusionEvent> load_events(std::istream& in);
std::vector<DiffusionEvent> load_events_file(const std::string& path);

/// Rooted activation tree of one original message.
struct CascadeTree {
  std::string message_id;
  UserId root = kInvalidUser;
  std::unordered_map<UserId, UserId> parent;         // child -> parent, root absent
  std::unordered_map<UserId, Timestamp> activation;  // every participant incl. root

  std::size_t size() const { return parent.size() + 1; }
  bool contains(UserId u) const { return u == root || parent.count(u) > 0; }
  std::vector<UserId> children_of(UserId u) const;
  std::vector<UserId> participants() const;  // sorted, root first then ascending
};

/// Root-to-leaf node sequence ordered by activation time.
using CascadePath = std::vector<UserId>;

struct BuildStats {
  std::size_t events_total = 0;
  std::size_t unknown_user_skipped = 0;
  std::size_t unknown_origin_skipped = 0;
  std::size_t duplicate_participant_skipped = 0;
  std::size_t unattachable_dropped = 0;
  std::size_t cascades_too_small = 0;  // fewer than 2 attached retweeters
};

/// Reconstructs one cascade tree per original message with at least two
/// attached retweeters. A retweeter is attached under the followee who
/// (re)tweeted the message most recently before them; ties on activation
/// time go to the smaller UserId. Retweeters following no prior participant
/// are dropped and counted. origin ids are resolved transitively to the
/// original message. `threads` > 1 builds independent messages concurrently;
/// output is identical for any thread count.
std::vector<CascadeTree> build_cascades(const SocialGraph& g,
                                        const std::vector<DiffusionEvent>& events,
                                        BuildStats* stats = nullptr, unsigned threads = 1);

/// One path per leaf, each starting at the root.
std::vector<CascadePath> paths(const CascadeTree& c);

struct CascadeStats {
  std::size_t count = 0;
  double mean_size = 0.0;
  bool mean_defined = false;
};

CascadeStats cascade_stats(const std::vector<CascadeTree>& cs);

/// cascades.jsonl round trip: one tree per line with root, parent map and
/// activation times keyed by external user id.
void write_cascades_jsonl(std::ostream& out, const std::vector<CascadeTree>& cs,
                          const SocialGraph& g);
std::vector<CascadeTree> read_cascades_jsonl(std::istream& in, const SocialGraph& g);

}  // namespace bridgekit

#endif  // BRIDGEKIT_CASCADE_HPP_

#pragma once

#include "repsim/node_id.hpp"
#include "repsim/rep_wire.hpp"
#include "repsim/reputation.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace repsim {

enum class Outcome { Forwarded, Dropped };

struct TableUpdate {
    NodeId subject;
    Reputation value;
};

struct WindowCloseResult {
    std::vector<TableUpdate> updates;
    std::vector<RepMessage> broadcasts; // one-hop accusations, in subject order
};

struct HandleResult {
    std::vector<RepMessage> replies; // unicast back to the message sender
    std::optional<TableUpdate> update;
};

// Per-node trust state: watches neighbor forwarding inside fixed windows,
// folds witness reports into the reputation table, and raises one-hop
// accusations when a neighbor's drop rate crosses the threshold.
class TrustManager {
  public:
    TrustManager(NodeId self, TrustParams params, double start_time = 0.0);
    // Seeded variant for scenarios that start with pre-existing opinions.
    TrustManager(NodeId self, TrustParams params, ReputationTable initial,
                 double start_time = 0.0);

    // Records one forwarding opportunity handed to `neighbor` this window.
    void observe(NodeId neighbor, Outcome outcome, double now);

    // Folds the elapsed window into the table and resets all counters.
    // Accusation broadcasts fire on the raw window drop ratio, but carry the
    // freshly blended table value.
    WindowCloseResult close_window(double now);

    // Applies one incoming frame. Replies (if any) are unicast to `sender`.
    HandleResult handle_message(const RepMessage& msg, NodeId sender, double now);

    // First contact with a node: opens a pending query and asks the
    // neighborhood for prior history. Repeat contact in the same
    // connectivity epoch is a no-op.
    std::vector<RepMessage> on_new_neighbor(NodeId node, double now);

    // Node left radio range: drop it from the neighbor set and discard the
    // partial window counters (a truncated window is noise, not a rate).
    void forget_neighbor(NodeId node);

    // Closes every pending query past its deadline, aggregating whatever
    // responses arrived. A query nobody answered leaves the table untouched.
    std::vector<TableUpdate> expire_requests(double now);

    // Nodes currently classified malicious, in id order.
    std::vector<NodeId> flagged() const;

    const ReputationTable& table() const { return table_; }
    const TrustParams& params() const { return params_; }
    NodeId self() const { return self_; }
    double window_start() const { return window_start_; }

  private:
    struct Window {
        std::uint64_t sent = 0;
        std::uint64_t forwarded = 0;
    };
    struct Pending {
        double issued_at = 0.0;
        std::map<NodeId, Reputation> collected; // responder -> last report wins
    };

    NodeId self_;
    TrustParams params_;
    double window_start_;
    ReputationTable table_;
    std::map<NodeId, Window> windows_;
    std::map<NodeId, Pending> pending_;
    std::set<NodeId> known_neighbors_;
};

} // namespace repsim

#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "repsim/node_id.hpp"

namespace repsim {

// Unit-interval trust score. Construction outside [0,1] is rejected;
// clamped() absorbs float round-off from arithmetic that is convex exactly.
class Reputation {
  public:
    Reputation() : value_(1.0) {}

    explicit Reputation(double v) : value_(v) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::out_of_range("reputation value outside [0,1]");
    }

    static Reputation clamped(double v) {
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
        return Reputation(v);
    }

    double value() const { return value_; }

    auto operator<=>(const Reputation&) const = default;

  private:
    double value_;
};

enum class Trust { Trusted, Malicious };

// Tunable knobs of the per-node trust machinery.
struct TrustParams {
    double alpha = 0.8;            // blend weight on the current observation
    double theta_drop = 0.2;       // window drop ratio that triggers an accusation
    double theta_malicious = 0.5;  // classification threshold (strictly below = malicious)
    double window_secs = 10.0;     // monitoring window length
    double response_wait_secs = 2.0;  // on-demand reply collection timeout
    // Minimum observations before a window is folded into the blend.
    // A ratio estimated from a handful of packets is noise, not a rate.
    unsigned min_window_obs = 10;

    void validate() const {
        auto ratio = [](double v) { return v >= 0.0 && v <= 1.0; };
        if (!ratio(alpha)) throw std::invalid_argument("alpha outside [0,1]");
        if (!ratio(theta_drop)) throw std::invalid_argument("theta_drop outside [0,1]");
        if (!ratio(theta_malicious))
            throw std::invalid_argument("theta_malicious outside [0,1]");
        if (!(window_secs > 0.0)) throw std::invalid_argument("window_secs must be > 0");
        if (!(response_wait_secs > 0.0))
            throw std::invalid_argument("response_wait_secs must be > 0");
    }
};

// Per-node store of what this node currently believes about the others.
// Nodes it has never heard of default to full trust.
class ReputationTable {
  public:
    Reputation get(NodeId node) const {
        auto it = entries_.find(node);
        return it == entries_.end() ? Reputation(1.0) : it->second;
    }

    bool stored(NodeId node) const { return entries_.count(node) != 0; }

    void set(NodeId node, Reputation value) {
        entries_.insert_or_assign(node, value);
    }

    const std::map<NodeId, Reputation>& entries() const { return entries_; }

    bool operator==(const ReputationTable&) const = default;

  private:
    std::map<NodeId, Reputation> entries_;
};

struct ResponseSample {
    Reputation responder_trust;  // requester's current trust in the responder
    Reputation reported;         // value the responder reported for the subject
};

// Thrown by aggregate_on_demand when alpha and every responder weight are zero.
struct ZeroWeightError : std::domain_error {
    ZeroWeightError() : std::domain_error("aggregate weights sum to zero") {}
};

// Forwarding ratio over one window. No packets handed over means no evidence
// either way, so the caller gets nothing to blend.
std::optional<Reputation> direct_ratio(std::uint64_t forwarded, std::uint64_t sent);

// Weighted history/current combination. Written as prior + alpha*(current-prior)
// so a neighbor that keeps a perfect record keeps reputation exactly 1.0.
Reputation blend(Reputation prior, Reputation current, double alpha);

// Fold a one-hop accusation (or praise) into the local view, weighted by how
// much the receiver trusts the broadcaster.
Reputation merge_broadcast(Reputation trust_in_broadcaster, Reputation broadcast_value,
                           Reputation own_prior);

// Combine on-demand replies about one subject, each weighted by the
// requester's trust in the responder. Empty reply set keeps the prior.
Reputation aggregate_on_demand(Reputation own_prior, double alpha,
                               std::span<const ResponseSample> responses);

inline Trust classify(Reputation value, double theta_malicious) {
    return value.value() < theta_malicious ? Trust::Malicious : Trust::Trusted;
}

} // namespace repsim

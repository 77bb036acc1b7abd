#include "repsim/trust_manager.hpp"

#include <stdexcept>

namespace repsim {

TrustManager::TrustManager(NodeId self, TrustParams params, double start_time)
    : self_(self), params_(params), window_start_(start_time) {
    params_.validate();
}

TrustManager::TrustManager(NodeId self, TrustParams params, ReputationTable initial,
                           double start_time)
    : self_(self), params_(params), window_start_(start_time), table_(std::move(initial)) {
    params_.validate();
}

void TrustManager::observe(NodeId neighbor, Outcome outcome, double) {
    if (neighbor == self_) throw std::invalid_argument("cannot observe own forwarding");
    Window& w = windows_[neighbor];
    ++w.sent;
    if (outcome == Outcome::Forwarded) ++w.forwarded;
}

WindowCloseResult TrustManager::close_window(double now) {
    // 1e-9 slack: window boundaries arrive as k*window_secs, which may sit an
    // ulp below the incrementally accumulated start + length
    if (now + 1e-9 < window_start_ + params_.window_secs)
        throw std::invalid_argument("window not yet elapsed");

    WindowCloseResult out;
    for (const auto& [neighbor, w] : windows_) {
        if (w.sent == 0) continue;
        // A handful of packets does not estimate a drop rate; skip thin windows.
        if (w.sent < params_.min_window_obs) continue;
        Reputation current = *direct_ratio(w.forwarded, w.sent);
        Reputation blended = blend(table_.get(neighbor), current, params_.alpha);
        table_.set(neighbor, blended);
        out.updates.push_back({neighbor, blended});
        if (1.0 - current.value() > params_.theta_drop)
            out.broadcasts.push_back(RepMessage::broadcast(neighbor, blended));
    }
    windows_.clear();
    window_start_ = now;
    return out;
}

HandleResult TrustManager::handle_message(const RepMessage& msg, NodeId sender, double) {
    HandleResult out;
    // Nothing a node says about itself (or we about ourselves) is actionable.
    if (msg.subject == self_ || msg.subject == sender) return out;

    switch (msg.type) {
    case MsgType::Request:
        // Only answer from real history; the bootstrap default carries no
        // information and would bias the requester's aggregate.
        if (table_.stored(msg.subject))
            out.replies.push_back(RepMessage::response(msg.subject, table_.get(msg.subject)));
        break;
    case MsgType::Response:
        if (msg.rep) {
            auto it = pending_.find(msg.subject);
            if (it != pending_.end()) it->second.collected.insert_or_assign(sender, *msg.rep);
            // no open request: stale reply, dropped on the floor
        }
        break;
    case MsgType::Broadcast:
        if (msg.rep) {
            Reputation merged =
                merge_broadcast(table_.get(sender), *msg.rep, table_.get(msg.subject));
            table_.set(msg.subject, merged);
            out.update = TableUpdate{msg.subject, merged};
        }
        break;
    }
    return out;
}

std::vector<RepMessage> TrustManager::on_new_neighbor(NodeId node, double now) {
    if (node == self_) throw std::invalid_argument("cannot neighbor self");
    if (!known_neighbors_.insert(node).second) return {};
    if (pending_.contains(node)) return {}; // one open query per subject
    pending_.emplace(node, Pending{now, {}});
    return {RepMessage::request(node)};
}

void TrustManager::forget_neighbor(NodeId node) {
    known_neighbors_.erase(node);
    windows_.erase(node);
}

std::vector<TableUpdate> TrustManager::expire_requests(double now) {
    std::vector<TableUpdate> out;
    for (auto it = pending_.begin(); it != pending_.end();) {
        if (now < it->second.issued_at + params_.response_wait_secs) {
            ++it;
            continue;
        }
        if (!it->second.collected.empty()) {
            std::vector<ResponseSample> samples;
            samples.reserve(it->second.collected.size());
            for (const auto& [responder, reported] : it->second.collected)
                samples.push_back({table_.get(responder), reported});
            try {
                Reputation value =
                    aggregate_on_demand(table_.get(it->first), params_.alpha, samples);
                table_.set(it->first, value);
                out.push_back({it->first, value});
            } catch (const ZeroWeightError&) {
                // every responder is fully distrusted and alpha is zero:
                // no usable evidence, keep the prior
            }
        }
        it = pending_.erase(it);
    }
    return out;
}

std::vector<NodeId> TrustManager::flagged() const {
    std::vector<NodeId> out;
    for (const auto& [id, rep] : table_.entries())
        if (classify(rep, params_.theta_malicious) == Trust::Malicious) out.push_back(id);
    return out;
}

} // namespace repsim

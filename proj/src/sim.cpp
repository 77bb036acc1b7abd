#include "repsim/sim.hpp"

#include "repsim/markov_dropper.hpp"
#include "repsim/mobility.hpp"
#include "repsim/node_buffer.hpp"
#include "repsim/rep_wire.hpp"
#include "repsim/rng.hpp"
#include "repsim/routing.hpp"
#include "repsim/trust_manager.hpp"

#include <algorithm>
#include <queue>

namespace repsim {

NodeId node_address(int index) {
    return NodeId{0x0A000000u + static_cast<std::uint32_t>(index)}; // 10.0.0.x
}

namespace {

constexpr double kTxTime = 0.002;    // per-packet service time at a relay
constexpr double kMgmtDelay = 0.001; // reputation frame latency

// Tie-break order for simultaneous events: topology first, then window
// bookkeeping, then reputation traffic, then data traffic.
enum class EvKind : int {
    Mobility = 0,
    WindowClose = 1,
    RequestExpiry = 2,
    Injected = 3,
    RepDelivery = 4,
    CbrEmit = 5,
    ServiceDone = 6,
};

struct Event {
    double time = 0.0;
    EvKind kind = EvKind::Mobility;
    int node = -1; // receiver for deliveries, owner otherwise
    std::uint64_t seq = 0;
    RepMessage msg{}; // RepDelivery payload
    int sender = -1;  // RepDelivery source
    int aux = -1;     // CbrEmit: flow index; Injected: script index
};

struct LaterEvent {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.kind != b.kind) return a.kind > b.kind;
        if (a.node != b.node) return a.node > b.node;
        return a.seq > b.seq;
    }
};

struct Packet {
    std::uint64_t id = 0;
    std::vector<int> path; // source route frozen at emission
    std::size_t at = 0;    // current holder's index into path
};

class Sim {
  public:
    explicit Sim(const Scenario& sc) : sc_(sc) { setup(); }

    RunResult take() && {
        loop();
        for (int i = 0; i < n_; ++i) out_.final_tables.push_back(mgr_[i].table());
        return std::move(out_);
    }

  private:
    // ------------------------------------------------------------- setup

    void setup() {
        sc_.validate();
        n_ = sc_.nodes;
        flows_ = sc_.effective_flows();

        auto placement = make_stream(sc_.seed, rng_tag::placement);
        std::uniform_real_distribution<double> ux(0.0, sc_.area_w_m), uy(0.0, sc_.area_h_m);
        for (int i = 0; i < n_; ++i) {
            Vec2 p = sc_.positions.empty() ? Vec2{ux(placement), uy(placement)}
                                           : sc_.positions[i];
            mob_.push_back({p, p, 0.0, sc_.pause_s});
            chan_rng_.push_back(make_stream(sc_.seed, rng_tag::channel, i));
            mob_rng_.push_back(make_stream(sc_.seed, rng_tag::mobility, i));

            ReputationTable table;
            for (const auto& e : sc_.seed_entries)
                if (e.observer == i) table.set(node_address(e.subject), Reputation(e.value));
            mgr_.emplace_back(node_address(i), sc_.trust, std::move(table));

            if (sc_.malicious_ids.count(i)) {
                auto stream = make_stream(sc_.seed, rng_tag::dropper, i);
                droppers_.emplace_back(sc_.phase_script
                                           ? MarkovDropper(sc_.dropper, *sc_.phase_script,
                                                           std::move(stream))
                                           : MarkovDropper(sc_.dropper, std::move(stream)));
            } else {
                droppers_.emplace_back(std::nullopt);
            }
            buffers_.emplace_back(64);
            serving_.push_back(false);
            neighbors_.emplace_back();
            flags_.emplace_back();
        }

        adj_ = connectivity(positions(), sc_.tx_range_m);
        refresh_neighbors(0.0);
        for (std::size_t f = 0; f < flows_.size(); ++f) routes_.push_back(compute_route(f));

        for (double t = 1.0; t <= sc_.duration_s; t += 1.0) push({t, EvKind::Mobility});
        double w = sc_.trust.window_secs;
        for (int k = 1; k * w <= sc_.duration_s + 1e-9; ++k)
            for (int i = 0; i < n_; ++i) push({k * w, EvKind::WindowClose, i});
        if (sc_.cbr_pps > 0)
            for (std::size_t f = 0; f < flows_.size(); ++f)
                for (std::uint64_t k = 0; k / sc_.cbr_pps < sc_.duration_s; ++k)
                    push({k / sc_.cbr_pps, EvKind::CbrEmit, flows_[f].src, 0, {}, -1,
                          static_cast<int>(f)});
        for (std::size_t k = 0; k < sc_.injected.size(); ++k)
            push({sc_.injected[k].time, EvKind::Injected, sc_.injected[k].from, 0, {}, -1,
                  static_cast<int>(k)});
    }

    std::vector<Vec2> positions() const {
        std::vector<Vec2> out;
        out.reserve(n_);
        for (const auto& m : mob_) out.push_back(m.position);
        return out;
    }

    // -------------------------------------------------------------- loop

    void loop() {
        while (!queue_.empty() && queue_.top().time <= sc_.duration_s + 1e-9) {
            Event ev = queue_.top();
            queue_.pop();
            switch (ev.kind) {
            case EvKind::Mobility: on_mobility(ev.time); break;
            case EvKind::WindowClose: on_window_close(ev.node, ev.time); break;
            case EvKind::RequestExpiry: on_request_expiry(ev.node, ev.time); break;
            case EvKind::Injected: on_injected(ev.aux, ev.time); break;
            case EvKind::RepDelivery: on_rep_delivery(ev, ev.time); break;
            case EvKind::CbrEmit: on_cbr_emit(ev.aux, ev.time); break;
            case EvKind::ServiceDone: on_service_done(ev.node, ev.time); break;
            }
        }
    }

    void push(Event ev) {
        ev.seq = seq_++;
        queue_.push(std::move(ev));
    }

    // ------------------------------------------------------------ events

    void on_mobility(double t) {
        for (int i = 0; i < n_; ++i)
            mob_[i] = waypoint_step(mob_[i], t - 1.0, 1.0, mob_params(), mob_rng_[i]);
        adj_ = connectivity(positions(), sc_.tx_range_m);
        refresh_neighbors(t);
        revalidate_routes();
    }

    MobilityParams mob_params() const {
        return {sc_.area_w_m, sc_.area_h_m, sc_.max_speed_mps, sc_.pause_s};
    }

    void refresh_neighbors(double t) {
        for (int i = 0; i < n_; ++i) {
            std::set<int> now(adj_[i].begin(), adj_[i].end());
            for (int old : neighbors_[i])
                if (!now.count(old)) mgr_[i].forget_neighbor(node_address(old));
            for (int fresh : now)
                if (!neighbors_[i].count(fresh)) {
                    auto msgs = mgr_[i].on_new_neighbor(node_address(fresh), t);
                    if (!msgs.empty()) {
                        fanout(i, msgs, t, -1);
                        push({t + sc_.trust.response_wait_secs, EvKind::RequestExpiry, i});
                    }
                }
            neighbors_[i] = std::move(now);
        }
    }

    void on_window_close(int i, double t) {
        auto res = mgr_[i].close_window(t);
        for (const auto& u : res.updates)
            trace(t, i, u.subject, u.value.value(), TraceEvent::WindowClose);
        if (!res.broadcasts.empty()) fanout(i, res.broadcasts, t, -1);
        if (!res.updates.empty()) refresh_flags(i, t);
    }

    void on_request_expiry(int i, double t) {
        auto updates = mgr_[i].expire_requests(t);
        for (const auto& u : updates)
            trace(t, i, u.subject, u.value.value(), TraceEvent::OndemandMerge);
        if (!updates.empty()) refresh_flags(i, t);
    }

    void on_injected(int k, double t) {
        const auto& b = sc_.injected[k];
        fanout(b.from, {RepMessage::broadcast(node_address(b.subject), Reputation(b.value))},
               t, -1);
    }

    void on_rep_delivery(const Event& ev, double t) {
        auto res = mgr_[ev.node].handle_message(ev.msg, node_address(ev.sender), t);
        if (res.update) {
            trace(t, ev.node, res.update->subject, res.update->value.value(),
                  TraceEvent::BroadcastMerge);
            refresh_flags(ev.node, t);
        }
        if (!res.replies.empty()) fanout(ev.node, res.replies, t, ev.sender);
    }

    void on_cbr_emit(int flow, double t) {
        ++out_.generated;
        const auto& r = routes_[flow];
        std::uint64_t pid = next_packet_id_++;
        if (!r || r->size() < 2) {
            packets_.push_back({pid, {}, 0}); // keep pid == vector index
            int src = flows_[flow].src;
            hop_event(t, src, pid, src, HopOutcome::NoRoute);
            ++out_.no_routes;
            return;
        }
        packets_.push_back({pid, *r, 0});
        transmit(packets_.back(), t);
    }

    void on_service_done(int i, double t) {
        std::uint64_t pid = buffers_[i].pop();
        Packet& pkt = packets_[pid];
        int next = pkt.path[pkt.at + 1];
        if (std::count(adj_[i].begin(), adj_[i].end(), next) == 0) {
            // the link evaporated while the packet sat in the queue; nobody
            // transmitted, so nobody is judged
            hop_event(t, i, pid, next, HopOutcome::RouteBreak);
            ++out_.route_breaks;
        } else {
            transmit(pkt, t);
        }
        if (!buffers_[i].empty())
            push({t + kTxTime, EvKind::ServiceDone, i});
        else
            serving_[i] = false;
    }

    // -------------------------------------------------------- forwarding

    // One radio transmission from pkt.path[pkt.at] to the next hop, with the
    // transmitter watching what becomes of it.
    void transmit(Packet& pkt, double t) {
        int from = pkt.path[pkt.at];
        int to = pkt.path[pkt.at + 1];
        bool is_last = pkt.at + 2 == pkt.path.size();

        if (channel_lost(from)) {
            hop_event(t, from, pkt.id, to, HopOutcome::ChannelDrop);
            ++out_.channel_drops;
            observe(from, to, Outcome::Dropped, t);
            return;
        }
        if (is_last) {
            hop_event(t, from, pkt.id, to, HopOutcome::Delivered);
            ++out_.delivered;
            observe(from, to, Outcome::Forwarded, t);
            return;
        }
        if (droppers_[to] && droppers_[to]->drops(t)) {
            hop_event(t, from, pkt.id, to, HopOutcome::MaliciousDrop);
            ++out_.malicious_drops;
            observe(from, to, Outcome::Dropped, t);
            return;
        }
        if (!buffers_[to].push(pkt.id)) {
            hop_event(t, from, pkt.id, to, HopOutcome::BufferDrop);
            ++out_.buffer_drops;
            observe(from, to, Outcome::Dropped, t);
            return;
        }
        hop_event(t, from, pkt.id, to, HopOutcome::Forwarded);
        observe(from, to, Outcome::Forwarded, t);
        out_.max_queue = std::max(out_.max_queue, buffers_[to].size());
        ++pkt.at;
        if (!serving_[to]) {
            serving_[to] = true;
            push({t + kTxTime, EvKind::ServiceDone, to});
        }
    }

    void observe(int watcher, int hop, Outcome o, double t) {
        mgr_[watcher].observe(node_address(hop), o, t);
    }

    bool channel_lost(int transmitter) {
        if (sc_.channel_loss_prob <= 0.0) return false;
        return std::uniform_real_distribution<double>(0.0, 1.0)(chan_rng_[transmitter]) <
               sc_.channel_loss_prob;
    }

    // -------------------------------------------------- reputation plane

    // Sends frames from node i: one-hop broadcast when unicast_to < 0. Every
    // frame crosses the wire codec, so receivers see quantized values.
    void fanout(int i, const std::vector<RepMessage>& msgs, double t, int unicast_to) {
        for (const auto& m : msgs) {
            auto frame = encode(m);
            auto decoded = decode(frame);
            const auto& wire_msg = std::get<RepMessage>(decoded);
            if (unicast_to >= 0) {
                if (neighbors_[i].count(unicast_to) && !channel_lost(i))
                    push({t + kMgmtDelay, EvKind::RepDelivery, unicast_to, 0, wire_msg, i});
            } else {
                for (int r : adj_[i])
                    if (!channel_lost(i))
                        push({t + kMgmtDelay, EvKind::RepDelivery, r, 0, wire_msg, i});
            }
        }
    }

    // ---------------------------------------------------- trace plumbing

    void trace(double t, int observer, NodeId subject, double value, TraceEvent e) {
        out_.trace.push_back({t, node_address(observer), subject, value, e});
    }

    void hop_event(double t, int node, std::uint64_t pid, int hop, HopOutcome o) {
        out_.events.push_back({t, node_address(node), pid, node_address(hop), o});
    }

    // Emits `flagged` records on every transition into the flagged state and
    // reroutes the observer's flows when its verdict set changed at all.
    void refresh_flags(int i, double t) {
        auto now = mgr_[i].flagged();
        if (now == flags_[i]) return;
        for (const auto& id : now)
            if (!std::count(flags_[i].begin(), flags_[i].end(), id))
                trace(t, i, id, mgr_[i].table().get(id).value(), TraceEvent::Flagged);
        flags_[i] = std::move(now);
        for (std::size_t f = 0; f < flows_.size(); ++f)
            if (flows_[f].src == i) routes_[f] = compute_route(f);
    }

    // ----------------------------------------------------------- routing

    std::optional<std::vector<int>> compute_route(std::size_t f) const {
        int src = flows_[f].src, dst = flows_[f].dst;
        std::set<int> excluded;
        for (const auto& id : flags_[src])
            excluded.insert(static_cast<int>(id.addr - 0x0A000000u));
        auto r = route(adj_, src, dst, excluded);
        // accusations may cut the only corridor; better a suspect route than
        // silence (and traffic is what lets a reformed node recover)
        if (!r && !excluded.empty()) r = route(adj_, src, dst, {});
        return r;
    }

    // A cached route survives until a link on it breaks or the source's
    // verdicts change; shortest-path churn would fragment the observation
    // windows for no behavioral reason.
    void revalidate_routes() {
        for (std::size_t f = 0; f < flows_.size(); ++f) {
            const auto& r = routes_[f];
            bool broken = !r;
            if (r)
                for (std::size_t k = 0; !broken && k + 1 < r->size(); ++k)
                    broken = std::count(adj_[(*r)[k]].begin(), adj_[(*r)[k]].end(),
                                        (*r)[k + 1]) == 0;
            if (broken) routes_[f] = compute_route(f);
        }
    }

    // ------------------------------------------------------------- state

    Scenario sc_;
    int n_ = 0;
    std::vector<Flow> flows_;
    std::vector<MobilityState> mob_;
    std::vector<std::mt19937_64> mob_rng_, chan_rng_;
    std::vector<std::optional<MarkovDropper>> droppers_;
    std::vector<TrustManager> mgr_;
    std::vector<NodeBuffer<std::uint64_t>> buffers_;
    std::vector<bool> serving_;
    std::vector<std::set<int>> neighbors_;
    std::vector<std::vector<NodeId>> flags_;
    Adjacency adj_;
    std::vector<std::optional<std::vector<int>>> routes_;
    std::vector<Packet> packets_;
    std::priority_queue<Event, std::vector<Event>, LaterEvent> queue_;
    std::uint64_t seq_ = 0;
    std::uint64_t next_packet_id_ = 0;
    RunResult out_;
};

} // namespace

RunResult run(const Scenario& sc) { return Sim(sc).take(); }

} // namespace repsim

#pragma once

#include "repsim/node_id.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace repsim {

enum class TraceEvent { WindowClose, BroadcastMerge, OndemandMerge, Flagged };

// One reputation movement as seen by one observer.
struct TraceRecord {
    double time;
    NodeId observer;
    NodeId subject;
    double reputation;
    TraceEvent event;

    bool operator==(const TraceRecord&) const = default;
};

enum class HopOutcome {
    Forwarded,
    MaliciousDrop,
    BufferDrop,
    ChannelDrop,
    Delivered,
    RouteBreak,
    NoRoute
};

// One per-hop packet fate, for debugging and conservation checks.
struct HopRecord {
    double time;
    NodeId node; // transmitter (or the packet holder, for route failures)
    std::uint64_t packet_id;
    NodeId hop; // next hop being judged; == node when there was none
    HopOutcome outcome;

    bool operator==(const HopRecord&) const = default;
};

const char* to_string(TraceEvent e);
const char* to_string(HopOutcome o);

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& records);
void write_events_csv(const std::string& path, const std::vector<HopRecord>& records);

} // namespace repsim

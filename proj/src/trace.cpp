#include "repsim/trace.hpp"

#include <cstdio>
#include <memory>
#include <stdexcept>

namespace repsim {

const char* to_string(TraceEvent e) {
    switch (e) {
    case TraceEvent::WindowClose: return "window_close";
    case TraceEvent::BroadcastMerge: return "broadcast_merge";
    case TraceEvent::OndemandMerge: return "ondemand_merge";
    case TraceEvent::Flagged: return "flagged";
    }
    return "?";
}

const char* to_string(HopOutcome o) {
    switch (o) {
    case HopOutcome::Forwarded: return "forwarded";
    case HopOutcome::MaliciousDrop: return "malicious_drop";
    case HopOutcome::BufferDrop: return "buffer_drop";
    case HopOutcome::ChannelDrop: return "channel_drop";
    case HopOutcome::Delivered: return "delivered";
    case HopOutcome::RouteBreak: return "route_break";
    case HopOutcome::NoRoute: return "no_route";
    }
    return "?";
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};

std::unique_ptr<std::FILE, FileCloser> open_out(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    return std::unique_ptr<std::FILE, FileCloser>(f);
}

} // namespace

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& records) {
    auto f = open_out(path);
    std::fputs("time,observer,subject,reputation,event\n", f.get());
    for (const auto& r : records)
        std::fprintf(f.get(), "%.3f,%s,%s,%.6f,%s\n", r.time, r.observer.str().c_str(),
                     r.subject.str().c_str(), r.reputation, to_string(r.event));
}

void write_events_csv(const std::string& path, const std::vector<HopRecord>& records) {
    auto f = open_out(path);
    std::fputs("time,node,packet_id,hop,outcome\n", f.get());
    for (const auto& r : records)
        std::fprintf(f.get(), "%.3f,%s,%llu,%s,%s\n", r.time, r.node.str().c_str(),
                     static_cast<unsigned long long>(r.packet_id), r.hop.str().c_str(),
                     to_string(r.outcome));
}

} // namespace repsim

#pragma once

#include "repsim/reputation.hpp"
#include "repsim/scenario.hpp"
#include "repsim/trace.hpp"

#include <cstdint>
#include <vector>

namespace repsim {

struct RunResult {
    std::vector<TraceRecord> trace;
    std::vector<HopRecord> events;
    std::vector<ReputationTable> final_tables; // indexed by node

    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t malicious_drops = 0;
    std::uint64_t buffer_drops = 0;
    std::uint64_t channel_drops = 0;
    std::uint64_t route_breaks = 0;
    std::uint64_t no_routes = 0;
    std::size_t max_queue = 0;
};

// Executes the scenario event loop; identical scenario + seed gives a
// bit-identical result. Throws ConfigError before any event runs if the
// scenario is malformed.
RunResult run(const Scenario& sc);

// Node index <-> wire address mapping used by the simulator.
NodeId node_address(int index);

} // namespace repsim

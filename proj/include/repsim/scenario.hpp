#pragma once

#include "repsim/markov_dropper.hpp"
#include "repsim/mobility.hpp"
#include "repsim/reputation.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace repsim {

// Configuration problem tied to a key (and, for file input, a line).
struct ConfigError : std::runtime_error {
    std::string key;
    int line; // 0 when the value did not come from a file

    ConfigError(std::string k, int l, const std::string& what)
        : std::runtime_error(what), key(std::move(k)), line(l) {}
};

struct Flow {
    int src;
    int dst;
};

// A scripted accusation frame pushed into the network at a fixed time.
struct InjectedBroadcast {
    double time;
    int from;
    int subject;
    double value;
};

// A pre-existing opinion loaded into one node's table before the run.
struct SeedEntry {
    int observer;
    int subject;
    double value;
};

struct Scenario {
    double duration_s = 450.0;
    double area_w_m = 1000.0;
    double area_h_m = 500.0;
    int nodes = 22;
    double tx_range_m = 250.0;
    double max_speed_mps = 10.0;
    double pause_s = 300.0;
    int sources = 5;
    double cbr_pps = 4.0;
    std::set<int> malicious_ids = {5, 7, 9, 11, 13};
    DropperParams dropper{1, 8, 100.0, 200.0};
    TrustParams trust{};
    double channel_loss_prob = 0.02;
    std::uint64_t seed = 1;

    // Preset-only machinery, not reachable from config files.
    std::vector<Vec2> positions;             // fixed placement when non-empty
    std::vector<Flow> flows;                 // fixed traffic when non-empty
    std::optional<PhaseScript> phase_script; // scripted adversary timeline
    std::vector<SeedEntry> seed_entries;
    std::vector<InjectedBroadcast> injected;

    // Throws ConfigError naming the offending key.
    void validate() const;

    // Explicit flows when given, otherwise source i talks to node n-1-i.
    std::vector<Flow> effective_flows() const;
};

// Flat key=value file, '#' comments. Missing keys keep the defaults above.
Scenario load_scenario(const std::string& path);

// fig2_3, fig4, fig5, fig6, fig7, table1 — throws ConfigError on anything else.
Scenario preset(const std::string& name);

} // namespace repsim

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "repsim/metrics.hpp"
#include "repsim/sim.hpp"

#include <algorithm>
#include <map>

using namespace repsim;

namespace {

Scenario diamond_scenario() {
    Scenario sc;
    sc.nodes = 4;
    sc.positions = {{0, 0}, {200, 0}, {0, 200}, {200, 200}};
    sc.flows = {{0, 3}};
    sc.sources = 1;
    sc.malicious_ids = {1};
    sc.dropper = {8, 8, 1e9, 1e9}; // permanently bad, quota above the offered load
    sc.channel_loss_prob = 0.0;
    sc.duration_s = 30;
    sc.pause_s = 30;
    return sc;
}

bool is_terminal(HopOutcome o) { return o != HopOutcome::Forwarded; }

} // namespace

TEST_CASE("identical seeds give bit-identical runs") {
    Scenario sc = preset("fig2_3");
    sc.seed = 5;
    auto a = run(sc);
    auto b = run(sc);
    CHECK(a.trace == b.trace);
    CHECK(a.events == b.events);
    CHECK(a.final_tables == b.final_tables);

    sc.seed = 6;
    auto c = run(sc);
    CHECK(!(a.events == c.events)); // the check can actually fail
}

TEST_CASE("zero duration produces an empty world") {
    Scenario sc = preset("fig2_3");
    sc.duration_s = 0;
    auto res = run(sc);
    CHECK(res.trace.empty());
    CHECK(res.generated == 0);
    for (const auto& t : res.final_tables)
        for (const auto& [id, rep] : t.entries()) CHECK(rep.value() == 1.0);
}

TEST_CASE("an honest lossless network is a fixed point at full trust") {
    Scenario sc = preset("table1");
    sc.malicious_ids.clear();
    sc.channel_loss_prob = 0.0;
    sc.duration_s = 120;
    auto res = run(sc);
    CHECK(res.generated > 0);
    CHECK(res.delivered > 0);
    int stored_entries = 0;
    for (const auto& t : res.final_tables)
        for (const auto& [id, rep] : t.entries()) {
            ++stored_entries;
            CHECK(rep.value() == 1.0); // exactly, not approximately
        }
    CHECK(stored_entries > 0);
    for (const auto& r : res.trace) CHECK(r.reputation == 1.0);
}

TEST_CASE("CBR generation is exact") {
    Scenario sc = preset("fig2_3");
    sc.duration_s = 50;
    auto res = run(sc);
    CHECK(res.generated == 200); // 4 pps * 50 s * 1 flow, end exclusive
}

TEST_CASE("every packet meets exactly one fate per transmission") {
    Scenario sc = preset("fig2_3");
    sc.seed = 3;
    auto res = run(sc);

    std::map<std::uint64_t, int> terminals;
    for (const auto& e : res.events)
        if (is_terminal(e.outcome)) ++terminals[e.packet_id];
    for (const auto& [pid, count] : terminals) CHECK(count == 1);

    std::uint64_t settled = res.delivered + res.malicious_drops + res.buffer_drops +
                            res.channel_drops + res.route_breaks + res.no_routes;
    CHECK(settled == terminals.size());
    CHECK(settled <= res.generated);
    CHECK(res.generated - settled <= 3); // only the final in-flight packets may be cut off
    CHECK(res.malicious_drops > 0);
    CHECK(res.delivered > 0);
}

TEST_CASE("the queue respects its bound under overload") {
    Scenario sc;
    sc.nodes = 3;
    sc.positions = {{100, 250}, {320, 250}, {540, 250}};
    sc.flows = {{0, 2}};
    sc.sources = 1;
    sc.malicious_ids = {};
    sc.cbr_pps = 800; // service caps at 500 pps, so the relay must shed load
    sc.channel_loss_prob = 0.0;
    sc.duration_s = 10; // one full observation window
    sc.pause_s = 10;
    auto res = run(sc);
    CHECK(res.buffer_drops > 0);
    CHECK(res.max_queue == 64);
    // overload is indistinguishable from malice to the watchdog
    CHECK(res.final_tables[0].get(node_address(1)).value() < 1.0);
}

TEST_CASE("a flagged relay is routed around") {
    auto res = run(diamond_scenario());

    // the first window kills the direct route's reputation
    bool flagged = false;
    for (const auto& r : res.trace)
        flagged = flagged || (r.event == TraceEvent::Flagged &&
                              r.observer == node_address(0) && r.subject == node_address(1) &&
                              r.time == 10.0);
    CHECK(flagged);

    std::uint64_t via_adversary = 0, via_clean = 0, delivered_late = 0;
    for (const auto& e : res.events) {
        if (e.outcome == HopOutcome::Forwarded && e.hop == node_address(1)) ++via_adversary;
        if (e.outcome == HopOutcome::Forwarded && e.hop == node_address(2) && e.time > 10.0)
            ++via_clean;
        if (e.outcome == HopOutcome::Delivered && e.time > 10.0) ++delivered_late;
    }
    CHECK(via_adversary == 0); // adversary dropped everything pre-flag
    CHECK(via_clean > 0);
    CHECK(delivered_late > 0);
    CHECK(res.delivered == delivered_late); // nothing got through before the reroute
}

TEST_CASE("scripted accusations walk the victim's reputation down") {
    auto res = run(preset("fig7"));

    std::vector<double> merged;
    for (const auto& r : res.trace)
        if (r.event == TraceEvent::BroadcastMerge && r.observer == node_address(0) &&
            r.subject == node_address(1))
            merged.push_back(r.reputation);
    const double expect[6] = {0.6, 0.5, 0.4, 0.35, 0.3, 0.25};
    REQUIRE(merged.size() == 6);
    for (int k = 0; k < 6; ++k) CHECK(merged[k] == doctest::Approx(expect[k]).epsilon(1e-4));

    // the third accusation pushes the entry below the classification bar
    bool flagged_at_180 = false;
    for (const auto& r : res.trace)
        if (r.event == TraceEvent::Flagged && r.observer == node_address(0) &&
            r.subject == node_address(1))
            flagged_at_180 = doctest::Approx(180.001) == r.time;
    CHECK(flagged_at_180);

    CHECK(res.final_tables[0].get(node_address(1)).value() ==
          doctest::Approx(0.25).epsilon(1e-4));
    // the uninvolved node heard nothing (out of the gossip's radio range)
    CHECK(!res.final_tables[1].stored(node_address(0)));
}

TEST_CASE("a request is answered from a neighbor's stored history") {
    Scenario sc;
    sc.nodes = 3;
    sc.positions = {{0, 0}, {200, 0}, {0, 200}}; // 1 and 2 are out of mutual range
    sc.flows = {};
    sc.sources = 0;
    sc.malicious_ids = {};
    sc.channel_loss_prob = 0.0;
    sc.duration_s = 5;
    sc.pause_s = 5;
    sc.seed_entries = {{2, 1, 0.6}}; // node 2 has prior history on node 1
    auto res = run(sc);

    std::vector<TraceRecord> merges;
    for (const auto& r : res.trace)
        if (r.event == TraceEvent::OndemandMerge) merges.push_back(r);
    REQUIRE(merges.size() == 1); // only node 0's query about node 1 got an answer
    CHECK(merges[0].observer == node_address(0));
    CHECK(merges[0].subject == node_address(1));
    CHECK(merges[0].time == doctest::Approx(2.0));
    // (alpha * 1.0 + 1.0 * 0.6) / (alpha + 1.0)
    CHECK(merges[0].reputation == doctest::Approx(1.4 / 1.8).epsilon(1e-4));
    CHECK(res.final_tables[0].get(node_address(1)).value() ==
          doctest::Approx(1.4 / 1.8).epsilon(1e-4));
}

TEST_CASE("detection metrics summarize the flag records") {
    auto sc = diamond_scenario();
    auto res = run(sc);
    auto m = compute_metrics(res.trace, sc);
    CHECK(m.detected_count == 1);
    CHECK(m.false_positive_count == 0);
    REQUIRE(m.mean_time_to_detection.has_value());
    CHECK(*m.mean_time_to_detection == 10.0);
    REQUIRE(m.per_node.size() == 4);
    CHECK(m.per_node[1].is_malicious);
    REQUIRE(m.per_node[1].first_flag_time.has_value());
    CHECK(*m.per_node[1].first_flag_time == 10.0);
    CHECK(!m.per_node[0].first_flag_time.has_value());
    CHECK(m.per_node[0].false_flags == 0);

    auto empty = compute_metrics({}, sc);
    CHECK(empty.detected_count == 0);
    CHECK(!empty.mean_time_to_detection.has_value());

    // one honest flag = one false positive pair
    std::vector<TraceRecord> fake{{12.0, node_address(3), node_address(2), 0.4,
                                   TraceEvent::Flagged}};
    auto fp = compute_metrics(fake, sc);
    CHECK(fp.false_positive_count == 1);
    CHECK(fp.per_node[2].false_flags == 1);
    REQUIRE(fp.per_node[2].first_flag_time.has_value());
}

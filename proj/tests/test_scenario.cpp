#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "repsim/routing.hpp"
#include "repsim/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

using namespace repsim;

namespace {

struct TempConfig {
    std::string path;
    explicit TempConfig(const std::string& body) {
        static int counter = 0;
        path = "tmp_scenario_" + std::to_string(counter++) + ".cfg";
        std::ofstream(path) << body;
    }
    ~TempConfig() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("an empty config file keeps the full parameter defaults") {
    TempConfig cfg("");
    Scenario sc = load_scenario(cfg.path);
    CHECK(sc.duration_s == 450.0);
    CHECK(sc.area_w_m == 1000.0);
    CHECK(sc.area_h_m == 500.0);
    CHECK(sc.nodes == 22);
    CHECK(sc.tx_range_m == 250.0);
    CHECK(sc.max_speed_mps == 10.0);
    CHECK(sc.pause_s == 300.0);
    CHECK(sc.sources == 5);
    CHECK(sc.cbr_pps == 4.0);
    CHECK(sc.malicious_ids == std::set<int>{5, 7, 9, 11, 13});
    CHECK(sc.dropper.min_rate == 1);
    CHECK(sc.dropper.max_rate == 8);
    CHECK(sc.dropper.t_trans_lo == 100.0);
    CHECK(sc.dropper.t_trans_hi == 200.0);
    CHECK(sc.trust.alpha == 0.8);
    CHECK(sc.channel_loss_prob == 0.02);
    CHECK(sc.positions.empty()); // placement comes from the seed
}

TEST_CASE("config values land on the right fields") {
    TempConfig cfg("# comment line\n"
                   "nodes = 3\n"
                   "malicious_ids = 1\n"
                   "duration_s = 60  # trailing comment\n"
                   "cbr_pps=8\n"
                   "seed=99\n"
                   "\n"
                   "channel_loss_prob = 0\n");
    Scenario sc = load_scenario(cfg.path);
    CHECK(sc.nodes == 3);
    CHECK(sc.malicious_ids == std::set<int>{1});
    CHECK(sc.duration_s == 60.0);
    CHECK(sc.cbr_pps == 8.0);
    CHECK(sc.seed == 99);
    CHECK(sc.channel_loss_prob == 0.0);
}

TEST_CASE("config errors name the key and the line") {
    SUBCASE("unknown key") {
        TempConfig cfg("nodes=5\nbogus_key=1\n");
        try {
            load_scenario(cfg.path);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.key == "bogus_key");
            CHECK(e.line == 2);
        }
    }
    SUBCASE("value out of range") {
        TempConfig cfg("alpha=1.5\n");
        try {
            load_scenario(cfg.path);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.key == "alpha");
        }
    }
    SUBCASE("not a number") {
        TempConfig cfg("cbr_pps=fast\n");
        try {
            load_scenario(cfg.path);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.key == "cbr_pps");
            CHECK(e.line == 1);
        }
    }
    SUBCASE("malicious id outside the node set") {
        TempConfig cfg("nodes=3\n"); // default adversaries 5..13 no longer exist
        CHECK_THROWS_AS(load_scenario(cfg.path), ConfigError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_scenario("no_such_file.cfg"), ConfigError);
    }
    SUBCASE("missing equals sign") {
        TempConfig cfg("nodes 5\n");
        CHECK_THROWS_AS(load_scenario(cfg.path), ConfigError);
    }
}

TEST_CASE("default traffic pattern pairs the ends of the id range") {
    Scenario sc;
    sc.positions.clear();
    auto flows = sc.effective_flows();
    REQUIRE(flows.size() == 5);
    CHECK(flows[0].src == 0);
    CHECK(flows[0].dst == 21);
    CHECK(flows[4].src == 4);
    CHECK(flows[4].dst == 17);

    sc.nodes = 4;
    sc.sources = 9;
    sc.malicious_ids = {1};
    auto clamped = sc.effective_flows();
    CHECK(clamped.size() == 2); // no more flows than disjoint pairs
}

TEST_CASE("table1 preset wires every flow through an adversary") {
    Scenario sc = preset("table1");
    sc.validate();
    REQUIRE(sc.positions.size() == 22);
    REQUIRE(sc.flows.size() == 5);

    auto adj = connectivity(sc.positions, sc.tx_range_m);
    for (const auto& f : sc.flows) {
        auto path = route(adj, f.src, f.dst, {});
        REQUIRE(path.has_value());
        bool crosses = false;
        for (std::size_t k = 1; k + 1 < path->size(); ++k)
            crosses = crosses || sc.malicious_ids.count((*path)[k]);
        CHECK(crosses);
    }
}

TEST_CASE("figure presets carry their published knobs") {
    Scenario f23 = preset("fig2_3");
    REQUIRE(f23.phase_script.has_value());
    CHECK(f23.phase_script->segments.size() == 4);
    CHECK(f23.phase_script->segments[0].until == 140.0);
    CHECK(f23.phase_script->segments[0].phase == DropPhase::Bad);
    CHECK(f23.phase_script->segments[1].phase == DropPhase::Good);
    CHECK(f23.dropper.min_rate == 5);
    CHECK(f23.dropper.max_rate == 30);
    CHECK(f23.malicious_ids == std::set<int>{1});
    CHECK(f23.pause_s == f23.duration_s);

    Scenario f4 = preset("fig4");
    CHECK(f4.dropper.min_rate == 0);
    CHECK(f4.dropper.max_rate == 5);
    CHECK(f4.dropper.t_trans_lo == 0.0);
    CHECK(f4.dropper.t_trans_hi == 5.0);
    CHECK(!f4.phase_script.has_value());

    Scenario f5 = preset("fig5");
    CHECK(f5.dropper.min_rate == 3);
    CHECK(f5.dropper.max_rate == 15);
    CHECK(f5.dropper.t_trans_hi == 5.0);

    Scenario f7 = preset("fig7");
    CHECK(f7.malicious_ids.empty());
    CHECK(f7.effective_flows().empty());
    REQUIRE(f7.seed_entries.size() == 1);
    CHECK(f7.seed_entries[0].value == 0.7);
    REQUIRE(f7.injected.size() == 6);
    CHECK(f7.injected[0].time == 60.0);
    CHECK(f7.injected[5].value == 0.25);
    CHECK(f7.channel_loss_prob == 0.0);

    CHECK(preset("fig6").positions == preset("table1").positions);
    CHECK_THROWS_AS(preset("nope"), ConfigError);
}

TEST_CASE("scenario validation names the offending key") {
    Scenario sc;
    sc.trust.theta_drop = 2.0;
    try {
        sc.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key == "theta_drop");
    }
}

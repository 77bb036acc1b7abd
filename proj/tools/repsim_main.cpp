// repsim — runs one scenario (or a seed sweep) and leaves CSVs behind.

#include "repsim/metrics.hpp"
#include "repsim/sim.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace repsim;

namespace {

struct SeedRange {
    std::uint64_t lo;
    std::uint64_t hi;
};

SeedRange parse_seed_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw ConfigError("seeds", 0, "seeds: expected 'a..b', got '" + text + "'");
    SeedRange r{};
    try {
        std::size_t used = 0;
        r.lo = std::stoull(text.substr(0, dots), &used);
        if (used != dots) throw std::invalid_argument("");
        std::string tail = text.substr(dots + 2);
        r.hi = std::stoull(tail, &used);
        if (used != tail.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ConfigError("seeds", 0, "seeds: expected 'a..b', got '" + text + "'");
    }
    if (r.lo > r.hi)
        throw ConfigError("seeds", 0, "seeds: empty range '" + text + "'");
    return r;
}

// One complete run into `dir`; returns the summary instead of printing so
// sweep workers stay quiet until everything is ordered again.
std::string run_into(const Scenario& sc, const fs::path& dir) {
    fs::create_directories(dir);
    RunResult res = run(sc);
    write_trace_csv((dir / "trace.csv").string(), res.trace);
    write_events_csv((dir / "events.csv").string(), res.events);
    DetectionMetrics m = compute_metrics(res.trace, sc);
    write_metrics_csv((dir / "metrics.csv").string(), m);
    return metrics_summary(m);
}

int sweep(const Scenario& base, SeedRange range, const fs::path& out_root) {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = range.lo;; ++s) {
        seeds.push_back(s);
        if (s == range.hi) break; // inclusive, and safe at UINT64_MAX
    }

    std::vector<std::string> summaries(seeds.size());
    std::atomic<std::size_t> next{0};
    std::mutex fail_mu;
    std::string fail;

    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < seeds.size();) {
            Scenario sc = base;
            sc.seed = seeds[i];
            try {
                summaries[i] = run_into(sc, out_root / ("seed-" + std::to_string(seeds[i])));
            } catch (const std::exception& e) {
                std::lock_guard lock(fail_mu);
                if (fail.empty()) fail = e.what();
            }
        }
    };

    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (n > seeds.size()) n = static_cast<unsigned>(seeds.size());
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (!fail.empty()) {
        std::fprintf(stderr, "repsim: %s\n", fail.c_str());
        return 1;
    }
    for (std::size_t i = 0; i < seeds.size(); ++i)
        std::printf("[seed %llu]\n%s", static_cast<unsigned long long>(seeds[i]),
                    summaries[i].c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reputation-driven packet-drop simulator for mobile ad hoc networks"};

    std::string scenario_path;
    std::string preset_name;
    std::string out_dir = ".";
    std::string seeds_text;
    std::uint64_t seed = 0;
    double duration = 0.0;

    auto* opt_scenario =
        app.add_option("--scenario", scenario_path, "scenario file (key=value lines)");
    auto* opt_preset =
        app.add_option("--preset", preset_name, "fig2_3, fig4, fig5, fig6, fig7 or table1");
    opt_scenario->excludes(opt_preset);
    opt_preset->excludes(opt_scenario);
    auto* opt_seed = app.add_option("--seed", seed, "RNG seed override");
    auto* opt_seeds =
        app.add_option("--seeds", seeds_text, "inclusive seed sweep a..b, one subdirectory each");
    opt_seeds->excludes(opt_seed);
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    auto* opt_duration = app.add_option("--duration", duration, "simulated seconds override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad flags are configuration errors too
    }

    try {
        if (!*opt_scenario && !*opt_preset)
            throw ConfigError("preset", 0, "need --preset or --scenario");

        Scenario sc = *opt_preset ? preset(preset_name) : load_scenario(scenario_path);
        if (*opt_seed) sc.seed = seed;
        if (*opt_duration) sc.duration_s = duration;
        sc.validate(); // overrides go through the same range checks as file values

        if (*opt_seeds) return sweep(sc, parse_seed_range(seeds_text), out_dir);

        std::string summary = run_into(sc, out_dir);
        std::fputs(summary.c_str(), stdout);
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "repsim: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "repsim: %s\n", e.what());
        return 1;
    }
}

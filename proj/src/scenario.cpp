#include "repsim/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

namespace repsim {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, int line, const std::string& v) {
    char* end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError(key, line, key + ": not a number: '" + v + "'");
    return d;
}

long long parse_int(const std::string& key, int line, const std::string& v) {
    char* end = nullptr;
    long long n = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError(key, line, key + ": not an integer: '" + v + "'");
    return n;
}

std::uint64_t parse_u64(const std::string& key, int line, const std::string& v) {
    char* end = nullptr;
    unsigned long long n = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || v[0] == '-')
        throw ConfigError(key, line, key + ": not an unsigned integer: '" + v + "'");
    return n;
}

std::set<int> parse_id_list(const std::string& key, int line, const std::string& v) {
    std::set<int> out;
    std::string rest = v;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string item = trim(rest.substr(0, comma));
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        if (item.empty()) continue;
        out.insert(static_cast<int>(parse_int(key, line, item)));
    }
    return out;
}

void apply_key(Scenario& sc, const std::string& key, const std::string& value, int line) {
    if (key == "duration_s") sc.duration_s = parse_double(key, line, value);
    else if (key == "area_w_m") sc.area_w_m = parse_double(key, line, value);
    else if (key == "area_h_m") sc.area_h_m = parse_double(key, line, value);
    else if (key == "nodes") sc.nodes = static_cast<int>(parse_int(key, line, value));
    else if (key == "tx_range_m") sc.tx_range_m = parse_double(key, line, value);
    else if (key == "max_speed_mps") sc.max_speed_mps = parse_double(key, line, value);
    else if (key == "pause_s") sc.pause_s = parse_double(key, line, value);
    else if (key == "sources") sc.sources = static_cast<int>(parse_int(key, line, value));
    else if (key == "cbr_pps") sc.cbr_pps = parse_double(key, line, value);
    else if (key == "malicious_ids") sc.malicious_ids = parse_id_list(key, line, value);
    else if (key == "drop_min_pps") sc.dropper.min_rate = static_cast<int>(parse_int(key, line, value));
    else if (key == "drop_max_pps") sc.dropper.max_rate = static_cast<int>(parse_int(key, line, value));
    else if (key == "t_trans_lo_s") sc.dropper.t_trans_lo = parse_double(key, line, value);
    else if (key == "t_trans_hi_s") sc.dropper.t_trans_hi = parse_double(key, line, value);
    else if (key == "alpha") sc.trust.alpha = parse_double(key, line, value);
    else if (key == "theta_drop") sc.trust.theta_drop = parse_double(key, line, value);
    else if (key == "theta_malicious") sc.trust.theta_malicious = parse_double(key, line, value);
    else if (key == "window_s") sc.trust.window_secs = parse_double(key, line, value);
    else if (key == "response_wait_s") sc.trust.response_wait_secs = parse_double(key, line, value);
    else if (key == "channel_loss_prob") sc.channel_loss_prob = parse_double(key, line, value);
    else if (key == "seed") sc.seed = parse_u64(key, line, value);
    else throw ConfigError(key, line, "unknown key '" + key + "' (line " + std::to_string(line) + ")");
}

} // namespace

void Scenario::validate() const {
    auto bad = [](const std::string& key, const std::string& why) {
        throw ConfigError(key, 0, key + ": " + why);
    };
    if (duration_s < 0) bad("duration_s", "must be >= 0");
    if (area_w_m <= 0 || area_h_m <= 0) bad(area_w_m <= 0 ? "area_w_m" : "area_h_m", "must be > 0");
    if (nodes < 1) bad("nodes", "must be >= 1");
    if (tx_range_m <= 0) bad("tx_range_m", "must be > 0");
    if (max_speed_mps < 0) bad("max_speed_mps", "must be >= 0");
    if (pause_s < 0) bad("pause_s", "must be >= 0");
    if (sources < 0) bad("sources", "must be >= 0");
    if (cbr_pps < 0) bad("cbr_pps", "must be >= 0");
    for (int id : malicious_ids)
        if (id < 0 || id >= nodes) bad("malicious_ids", "id " + std::to_string(id) + " outside node set");
    if (dropper.min_rate < 0) bad("drop_min_pps", "must be >= 0");
    if (dropper.max_rate < dropper.min_rate) bad("drop_max_pps", "must be >= drop_min_pps");
    if (dropper.t_trans_lo < 0) bad("t_trans_lo_s", "must be >= 0");
    if (dropper.t_trans_hi < dropper.t_trans_lo) bad("t_trans_hi_s", "must be >= t_trans_lo_s");
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(trust.alpha)) bad("alpha", "must be in [0,1]");
    if (!unit(trust.theta_drop)) bad("theta_drop", "must be in [0,1]");
    if (!unit(trust.theta_malicious)) bad("theta_malicious", "must be in [0,1]");
    if (trust.window_secs <= 0) bad("window_s", "must be > 0");
    if (trust.response_wait_secs <= 0) bad("response_wait_s", "must be > 0");
    if (!unit(channel_loss_prob)) bad("channel_loss_prob", "must be in [0,1]");
    if (!positions.empty() && static_cast<int>(positions.size()) != nodes)
        bad("nodes", "fixed placement size disagrees with node count");
    for (const auto& f : flows)
        if (f.src < 0 || f.src >= nodes || f.dst < 0 || f.dst >= nodes || f.src == f.dst)
            bad("sources", "flow endpoints invalid");
    for (const auto& e : seed_entries)
        if (e.observer < 0 || e.observer >= nodes || e.subject < 0 || e.subject >= nodes ||
            e.value < 0 || e.value > 1)
            bad("seed_entries", "entry out of range");
    for (const auto& b : injected)
        if (b.from < 0 || b.from >= nodes || b.subject < 0 || b.subject >= nodes ||
            b.value < 0 || b.value > 1 || b.time < 0)
            bad("injected", "broadcast out of range");
}

std::vector<Flow> Scenario::effective_flows() const {
    if (!flows.empty()) return flows;
    std::vector<Flow> out;
    int count = std::min(sources, nodes / 2);
    for (int i = 0; i < count; ++i) out.push_back({i, nodes - 1 - i});
    return out;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("scenario", 0, "cannot open scenario file '" + path + "'");
    Scenario sc;
    sc.positions.clear(); // file scenarios place nodes from the seed
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("scenario", line_no,
                              "expected key=value (line " + std::to_string(line_no) + ")");
        apply_key(sc, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no);
    }
    sc.validate();
    return sc;
}

namespace {

// Four columns of relays 240 m apart, rows 100 m apart: sources on the left,
// destinations on the right, two spare hosts off the right edge. Every flow's
// three-hop row route crosses one of the adversaries {5,7,9,11,13}.
Scenario table1_layout() {
    Scenario sc; // scalar defaults are the table1 parameters already
    const double col[4] = {50, 290, 530, 770};
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 5; ++r) sc.positions.push_back({col[c], 50.0 + 100.0 * r});
    sc.positions.push_back({890, 150});
    sc.positions.push_back({890, 350});
    for (int i = 0; i < 5; ++i) sc.flows.push_back({i, 15 + i});
    return sc;
}

// Static three-node chain: source, adversary in the middle, sink.
Scenario chain3() {
    Scenario sc;
    sc.nodes = 3;
    sc.positions = {{100, 250}, {320, 250}, {540, 250}};
    sc.flows = {{0, 2}};
    sc.sources = 1;
    sc.malicious_ids = {1};
    sc.pause_s = sc.duration_s; // nobody moves
    return sc;
}

} // namespace

Scenario preset(const std::string& name) {
    if (name == "table1" || name == "fig6") return table1_layout();
    if (name == "fig2_3") {
        Scenario sc = chain3();
        sc.dropper.min_rate = 5;
        sc.dropper.max_rate = 30;
        sc.phase_script = PhaseScript{{{140, DropPhase::Bad},
                                       {240, DropPhase::Good},
                                       {400, DropPhase::Bad},
                                       {450, DropPhase::Good}}};
        return sc;
    }
    if (name == "fig4") {
        Scenario sc = chain3();
        sc.dropper = {0, 5, 0.0, 5.0};
        return sc;
    }
    if (name == "fig5") {
        Scenario sc = chain3();
        sc.dropper = {3, 15, 0.0, 5.0};
        return sc;
    }
    if (name == "fig7") {
        Scenario sc;
        sc.nodes = 3;
        sc.positions = {{100, 100}, {300, 100}, {100, 300}};
        sc.flows.clear();
        sc.sources = 0;
        sc.malicious_ids.clear();
        sc.pause_s = sc.duration_s;
        sc.channel_loss_prob = 0.0;
        sc.seed_entries = {{0, 1, 0.7}};
        const double values[6] = {0.6, 0.5, 0.4, 0.35, 0.3, 0.25};
        for (int k = 0; k < 6; ++k)
            sc.injected.push_back({60.0 * (k + 1), 2, 1, values[k]});
        return sc;
    }
    throw ConfigError("preset", 0, "unknown preset '" + name + "'");
}

} // namespace repsim

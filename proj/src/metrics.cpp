#include "repsim/metrics.hpp"

#include "repsim/sim.hpp"

#include <cstdio>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>

namespace repsim {

DetectionMetrics compute_metrics(const std::vector<TraceRecord>& trace, const Scenario& sc) {
    std::map<NodeId, double> first_flag;
    std::map<NodeId, std::set<NodeId>> accusers;
    for (const auto& r : trace) {
        if (r.event != TraceEvent::Flagged) continue;
        if (!first_flag.count(r.subject)) first_flag[r.subject] = r.time;
        accusers[r.subject].insert(r.observer);
    }

    DetectionMetrics m;
    double detection_time_sum = 0.0;
    for (int i = 0; i < sc.nodes; ++i) {
        NodeMetrics nm;
        nm.subject = node_address(i);
        nm.is_malicious = sc.malicious_ids.count(i) != 0;
        if (auto it = first_flag.find(nm.subject); it != first_flag.end())
            nm.first_flag_time = it->second;
        if (!nm.is_malicious && accusers.count(nm.subject))
            nm.false_flags = static_cast<int>(accusers[nm.subject].size());

        if (nm.is_malicious && nm.first_flag_time) {
            ++m.detected_count;
            detection_time_sum += *nm.first_flag_time;
        }
        m.false_positive_count += nm.false_flags;
        m.per_node.push_back(nm);
    }
    if (m.detected_count > 0)
        m.mean_time_to_detection = detection_time_sum / m.detected_count;
    return m;
}

void write_metrics_csv(const std::string& path, const DetectionMetrics& m) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "w"),
                                                      std::fclose);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    std::fputs("subject,is_malicious,first_flag_time_s,false_flags\n", f.get());
    for (const auto& nm : m.per_node) {
        if (nm.first_flag_time)
            std::fprintf(f.get(), "%s,%d,%.3f,%d\n", nm.subject.str().c_str(),
                         nm.is_malicious ? 1 : 0, *nm.first_flag_time, nm.false_flags);
        else
            std::fprintf(f.get(), "%s,%d,never,%d\n", nm.subject.str().c_str(),
                         nm.is_malicious ? 1 : 0, nm.false_flags);
    }
}

std::string metrics_summary(const DetectionMetrics& m) {
    char buf[160];
    if (m.mean_time_to_detection)
        std::snprintf(buf, sizeof(buf),
                      "detected_count=%d\nfalse_positive_count=%d\nmean_time_to_detection=%.3f\n",
                      m.detected_count, m.false_positive_count, *m.mean_time_to_detection);
    else
        std::snprintf(buf, sizeof(buf),
                      "detected_count=%d\nfalse_positive_count=%d\nmean_time_to_detection=never\n",
                      m.detected_count, m.false_positive_count);
    return buf;
}

} // namespace repsim

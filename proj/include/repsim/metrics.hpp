#pragma once

#include "repsim/scenario.hpp"
#include "repsim/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace repsim {

struct NodeMetrics {
    NodeId subject;
    bool is_malicious = false;
    std::optional<double> first_flag_time; // earliest flag by any observer
    int false_flags = 0;                   // distinct observers, honest subjects only
};

struct DetectionMetrics {
    std::vector<NodeMetrics> per_node; // one row per node, id order
    int detected_count = 0;
    int false_positive_count = 0; // (observer, honest subject) pairs
    std::optional<double> mean_time_to_detection;
};

// Pure function of the trace: summarizes the `flagged` records.
DetectionMetrics compute_metrics(const std::vector<TraceRecord>& trace, const Scenario& sc);

void write_metrics_csv(const std::string& path, const DetectionMetrics& m);

// The aggregate lines printed after a run.
std::string metrics_summary(const DetectionMetrics& m);

} // namespace repsim

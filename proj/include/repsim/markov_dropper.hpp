#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace repsim {

enum class DropPhase { Good, Bad };

struct DropperParams {
    int min_rate = 1; // per-second drop quota bounds while Bad
    int max_rate = 8;
    double t_trans_lo = 100.0; // phase-length draw range, seconds
    double t_trans_hi = 200.0;
};

// Fixed phase timeline for scripted experiments: consecutive segments, each
// lasting until its `until` timestamp; time past the last segment keeps its
// phase.
struct PhaseScript {
    struct Segment {
        double until;
        DropPhase phase;
    };
    std::vector<Segment> segments;
};

// Two-phase adversary. Good forwards everything; Bad drops up to a per-second
// quota drawn uniformly from [min_rate, max_rate]. Phase flips after a random
// interval from t_trans (or on the scripted timeline when one is given), and
// the machine wakes up misbehaving.
class MarkovDropper {
  public:
    MarkovDropper(DropperParams p, std::mt19937_64 rng);
    MarkovDropper(DropperParams p, PhaseScript script, std::mt19937_64 rng);

    // Fate of one packet arriving now. Timestamps must be non-decreasing.
    bool drops(double now);

    DropPhase phase_at(double now);

  private:
    void advance_to(double now);

    DropperParams params_;
    std::optional<PhaseScript> script_;
    std::mt19937_64 rng_;
    DropPhase phase_ = DropPhase::Bad;
    double next_transition_ = 0.0;
    std::int64_t quota_second_ = -1; // simulated second the quota was drawn for
    int quota_left_ = 0;
};

} // namespace repsim

#pragma once

#include <cmath>
#include <random>

namespace repsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Vec2&) const = default;
};

inline double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct MobilityParams {
    double area_w = 0.0;
    double area_h = 0.0;
    double max_speed = 0.0; // m/s
    double pause_s = 0.0;
};

// Random waypoint walker. A node is either parked (until pause_until) or
// traveling toward its waypoint at a fixed speed; on arrival it parks, and
// when the pause runs out it draws a fresh waypoint and speed.
struct MobilityState {
    Vec2 position;
    Vec2 waypoint;
    double speed = 0.0;
    double pause_until = 0.0;
};

MobilityState waypoint_step(MobilityState st, double now, double dt, const MobilityParams& p,
                            std::mt19937_64& rng);

} // namespace repsim

#include "repsim/mobility.hpp"

namespace repsim {

MobilityState waypoint_step(MobilityState st, double now, double dt, const MobilityParams& p,
                            std::mt19937_64& rng) {
    if (now < st.pause_until) return st; // parked

    if (st.position == st.waypoint) {
        // pause over: draw the next leg
        std::uniform_real_distribution<double> ux(0.0, p.area_w), uy(0.0, p.area_h);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        st.waypoint = {ux(rng), uy(rng)};
        st.speed = (1.0 - unit(rng)) * p.max_speed; // uniform in (0, max]
        if (st.position == st.waypoint) return st;  // measure-zero re-draw next tick
    }

    double gap = dist(st.position, st.waypoint);
    double step = st.speed * dt;
    if (step >= gap) {
        st.position = st.waypoint;
        st.pause_until = now + dt + p.pause_s; // arrive within this tick, then park
    } else {
        st.position.x += (st.waypoint.x - st.position.x) * step / gap;
        st.position.y += (st.waypoint.y - st.position.y) * step / gap;
    }
    return st;
}

} // namespace repsim

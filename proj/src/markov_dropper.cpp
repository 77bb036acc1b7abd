#include "repsim/markov_dropper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace repsim {

namespace {

double draw_interval(const DropperParams& p, std::mt19937_64& rng) {
    double d = std::uniform_real_distribution<double>(p.t_trans_lo, p.t_trans_hi)(rng);
    return std::max(d, 1e-6); // a zero-length phase would never advance
}

} // namespace

MarkovDropper::MarkovDropper(DropperParams p, std::mt19937_64 rng)
    : params_(p), rng_(std::move(rng)) {
    if (p.min_rate < 0 || p.max_rate < p.min_rate)
        throw std::invalid_argument("drop rate bounds out of order");
    if (p.t_trans_hi < p.t_trans_lo)
        throw std::invalid_argument("t_trans bounds out of order");
    next_transition_ = draw_interval(params_, rng_);
}

MarkovDropper::MarkovDropper(DropperParams p, PhaseScript script, std::mt19937_64 rng)
    : params_(p), script_(std::move(script)), rng_(std::move(rng)) {
    if (p.min_rate < 0 || p.max_rate < p.min_rate)
        throw std::invalid_argument("drop rate bounds out of order");
}

void MarkovDropper::advance_to(double now) {
    if (script_) {
        phase_ = script_->segments.empty() ? DropPhase::Good : script_->segments.back().phase;
        for (const auto& seg : script_->segments) {
            if (now < seg.until) {
                phase_ = seg.phase;
                break;
            }
        }
        return;
    }
    while (now >= next_transition_) {
        phase_ = phase_ == DropPhase::Bad ? DropPhase::Good : DropPhase::Bad;
        next_transition_ += draw_interval(params_, rng_);
    }
}

DropPhase MarkovDropper::phase_at(double now) {
    advance_to(now);
    return phase_;
}

bool MarkovDropper::drops(double now) {
    advance_to(now);
    if (phase_ == DropPhase::Good) return false;
    auto second = static_cast<std::int64_t>(std::floor(now));
    if (second != quota_second_) {
        quota_second_ = second;
        quota_left_ =
            std::uniform_int_distribution<int>(params_.min_rate, params_.max_rate)(rng_);
    }
    if (quota_left_ > 0) {
        --quota_left_;
        return true;
    }
    return false;
}

} // namespace repsim

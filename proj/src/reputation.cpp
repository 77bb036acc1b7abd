#include "repsim/reputation.hpp"

namespace repsim {

std::optional<Reputation> direct_ratio(std::uint64_t forwarded, std::uint64_t sent) {
    if (forwarded > sent)
        throw std::invalid_argument("forwarded count exceeds sent count");
    if (sent == 0) return std::nullopt;
    return Reputation(static_cast<double>(forwarded) / static_cast<double>(sent));
}

Reputation blend(Reputation prior, Reputation current, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha outside [0,1]");
    double p = prior.value();
    return Reputation::clamped(p + alpha * (current.value() - p));
}

Reputation merge_broadcast(Reputation trust_in_broadcaster, Reputation broadcast_value,
                           Reputation own_prior) {
    double t = trust_in_broadcaster.value();
    return Reputation::clamped(t * broadcast_value.value() + (1.0 - t) * own_prior.value());
}

Reputation aggregate_on_demand(Reputation own_prior, double alpha,
                               std::span<const ResponseSample> responses) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha outside [0,1]");
    if (responses.empty()) return own_prior;

    double weight_sum = 0.0;
    double weighted_reports = 0.0;
    for (const auto& r : responses) {
        weight_sum += r.responder_trust.value();
        weighted_reports += r.responder_trust.value() * r.reported.value();
    }
    double denom = alpha + weight_sum;
    if (denom == 0.0) throw ZeroWeightError{};
    return Reputation::clamped((alpha * own_prior.value() + weighted_reports) / denom);
}

} // namespace repsim

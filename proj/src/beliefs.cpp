#include "aggregatio/beliefs.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace aggregatio::beliefs {

namespace {
constexpr double kNormalizationTol = 1e-12;
}

FiniteMeasure::FiniteMeasure(std::vector<std::string> outcomes,
                             std::vector<double> weights)
    : outcomes_(std::move(outcomes)), weights_(std::move(weights)) {
    if (outcomes_.empty())
        throw InvalidParameter("outcome set must be nonempty");
    if (outcomes_.size() != weights_.size())
        throw InvalidParameter("outcome and weight lists differ in length");

    std::unordered_set<std::string> seen;
    for (const auto& label : outcomes_)
        if (!seen.insert(label).second)
            throw InvalidParameter("duplicate outcome label: " + label);

    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0))
            throw InvalidParameter("weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > kNormalizationTol)
        throw InvalidParameter("weights sum to " + std::to_string(total) +
                               ", not 1 within 1e-12");
    for (double& w : weights_) w /= total;
}

FiniteMeasure FiniteMeasure::uniform(std::vector<std::string> outcomes) {
    std::vector<double> w(outcomes.size(),
                          1.0 / static_cast<double>(outcomes.size()));
    return FiniteMeasure(std::move(outcomes), std::move(w));
}

FiniteMeasure FiniteMeasure::point_mass(std::vector<std::string> outcomes,
                                        const std::string& at) {
    std::vector<double> w(outcomes.size(), 0.0);
    auto it = std::find(outcomes.begin(), outcomes.end(), at);
    if (it == outcomes.end())
        throw InvalidParameter("point mass outcome not in list: " + at);
    w[static_cast<std::size_t>(it - outcomes.begin())] = 1.0;
    return FiniteMeasure(std::move(outcomes), std::move(w));
}

std::size_t FiniteMeasure::index_of(const std::string& label) const {
    auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
    if (it == outcomes_.end())
        throw InvalidParameter("unknown outcome label: " + label);
    return static_cast<std::size_t>(it - outcomes_.begin());
}

double FiniteMeasure::event_prob(std::span<const std::string> event) const {
    double total = 0.0;
    for (const auto& label : event) total += weights_[index_of(label)];
    return total;
}

FiniteMeasure bayes_condition(const FiniteMeasure& p,
                              std::span<const std::string> event) {
    if (event.empty()) throw InvalidParameter("conditioning event is empty");
    const double mass = p.event_prob(event);
    if (mass <= 0.0)
        throw ZeroProbabilityEvent(
            "conditioning event has probability zero; supply the conditional "
            "measure as a primitive instead");

    std::vector<double> w(p.size(), 0.0);
    for (const auto& label : event) {
        const std::size_t i = p.index_of(label);
        w[i] = p.weight(i) / mass;
    }
    return FiniteMeasure(p.outcomes(), std::move(w));
}

FiniteMeasure motivated_mix(const FiniteMeasure& p, const FiniteMeasure& p_z,
                            MotivationWeight w) {
    if (!p.same_outcomes(p_z))
        throw MismatchedOutcomeSpaces(
            "motivated_mix requires measures on the same outcome list");
    const double wv = w.value();
    std::vector<double> mixed(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        mixed[i] = wv * p_z.weight(i) + (1.0 - wv) * p.weight(i);
    return FiniteMeasure(p.outcomes(), std::move(mixed));
}

double dissonance(const FiniteMeasure& h, const FiniteMeasure& p,
                  const FiniteMeasure& p_z, MotivationWeight w) {
    if (!h.same_outcomes(p) || !p.same_outcomes(p_z))
        throw MismatchedOutcomeSpaces(
            "dissonance requires measures on the same outcome list");
    const double wv = w.value();
    double total = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double q = p.weight(i) + p_z.weight(i);
        if (q <= 0.0) {
            if (h.weight(i) > 0.0)
                throw NotAbsolutelyContinuous(
                    "candidate belief puts mass outside the support of p + p_z");
            continue;
        }
        const double dz = h.weight(i) - p_z.weight(i);
        const double dp = h.weight(i) - p.weight(i);
        total += (wv * dz * dz + (1.0 - wv) * dp * dp) / q;
    }
    return total;
}

}  // namespace aggregatio::beliefs

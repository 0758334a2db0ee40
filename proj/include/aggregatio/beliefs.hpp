#pragma once

#include <span>
#include <string>
#include <vector>

#include "aggregatio/types.hpp"

namespace aggregatio::beliefs {

/// A probability distribution on an explicit finite outcome set.
///
/// Outcome labels are opaque and must be distinct. Weights must be
/// nonnegative and sum to one within 1e-12; the constructor renormalizes
/// so that long pipelines do not accumulate drift.
class FiniteMeasure {
public:
    FiniteMeasure(std::vector<std::string> outcomes, std::vector<double> weights);

    static FiniteMeasure uniform(std::vector<std::string> outcomes);
    static FiniteMeasure point_mass(std::vector<std::string> outcomes,
                                    const std::string& at);

    std::size_t size() const { return outcomes_.size(); }
    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::vector<double>& weights() const { return weights_; }
    double weight(std::size_t i) const { return weights_.at(i); }

    /// Index of a label; throws InvalidParameter if absent.
    std::size_t index_of(const std::string& label) const;

    /// Total mass of a set of outcome labels.
    double event_prob(std::span<const std::string> event) const;

    bool same_outcomes(const FiniteMeasure& other) const {
        return outcomes_ == other.outcomes_;
    }

private:
    std::vector<std::string> outcomes_;
    std::vector<double> weights_;
};

/// Bayesian conditioning on an event with positive probability.
/// Throws ZeroProbabilityEvent when the event has no mass, in which case
/// the caller must supply the conditional measure as a primitive.
FiniteMeasure bayes_condition(const FiniteMeasure& p,
                              std::span<const std::string> event);

/// Convex mixture w * p_z + (1 - w) * p of two measures on the same
/// outcome list. This is the unique minimizer of dissonance() over all
/// measures dominated by p + p_z.
FiniteMeasure motivated_mix(const FiniteMeasure& p, const FiniteMeasure& p_z,
                            MotivationWeight w);

/// Weighted sum of squared density distances from a candidate belief h to
/// the motivating belief p_z and to the objective belief p, measured in
/// L2 of the dominating measure q = p + p_z:
///
///   sum over outcomes with q > 0 of
///     [w * (h - p_z)^2 + (1 - w) * (h - p)^2] / q
///
/// h must vanish wherever q does (NotAbsolutelyContinuous otherwise).
double dissonance(const FiniteMeasure& h, const FiniteMeasure& p,
                  const FiniteMeasure& p_z, MotivationWeight w);

}  // namespace aggregatio::beliefs

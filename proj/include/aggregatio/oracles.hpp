#pragma once

#include <cstdint>

#include "aggregatio/beliefs.hpp"
#include "aggregatio/condorcet.hpp"
#include "aggregatio/social_learning.hpp"

namespace aggregatio::oracles {

/// Monte Carlo estimate with its standard error; bit-reproducible given
/// (seed, n_samples, shard count).
struct McEstimate {
    double mean;
    double std_error;
    std::uint64_t n_samples;
    std::uint64_t seed;
};

/// Exact probability that the majority elects the true state, by iterating
/// every signal profile of the 2n+1 voters and, within each, the exact
/// vote-count distribution implied by (sigma_a, sigma_b). Capped at n <= 10.
double enumerate_cjt(const condorcet::JuryParams& params,
                     const condorcet::JuryStrategy& strategy, State state);

/// Exact welfare and cascade probabilities for the first n agents, by
/// replaying the equilibrium decision rule over all 2^n signal sequences
/// (state A). Capped at n <= 20.
struct SlmEnumeration {
    double welfare;
    double cascade_up;
    double cascade_down;
};
SlmEnumeration enumerate_slm(double p, MotivationWeight w, long n);

/// Monte Carlo welfare of the sequential model over n agents.
McEstimate mc_slm(double p, MotivationWeight w, long n, std::uint64_t n_samples,
                  std::uint64_t seed, unsigned shards = 1, unsigned max_threads = 0);

/// Monte Carlo probability that the majority elects the true state.
McEstimate mc_cjt(const condorcet::JuryParams& params,
                  const condorcet::JuryStrategy& strategy, State state,
                  std::uint64_t n_samples, std::uint64_t seed, unsigned shards = 1,
                  unsigned max_threads = 0);

/// Exhaustive simplex-grid minimizer of the dissonance objective; lands
/// within one grid cell of the convex-mixture solution. Outcome sets of
/// size <= 4 and grid step <= 0.01.
beliefs::FiniteMeasure grid_minimize_dissonance(const beliefs::FiniteMeasure& p,
                                                const beliefs::FiniteMeasure& p_z,
                                                MotivationWeight w,
                                                double resolution);

/// First-step-analysis solve of the interior hitting system via the
/// tridiagonal (Thomas) algorithm: probability of absorbing at +k and
/// expected absorption time, both from lead 0.
struct AbsorptionSolve {
    double prob_up;
    double expected_time;
};
AbsorptionSolve absorption_linear_solve(double p,
                                        const social_learning::CascadeThreshold& k_star);

}  // namespace aggregatio::oracles

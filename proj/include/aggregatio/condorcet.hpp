#pragma once

#include <optional>
#include <span>

#include "aggregatio/diagnostics.hpp"
#include "aggregatio/types.hpp"

namespace aggregatio::condorcet {

/// Parameters of the jury voting model with 2n+1 voters. Signal accuracy
/// is q_a in state A and q_b in state B, normalized to 1/2 < q_b <= q_a < 1.
struct JuryParams {
    double q_a;
    double q_b;
    MotivationWeight w;
    long n;

    JuryParams(double q_a, double q_b, MotivationWeight w, long n);
    JuryParams with_n(long new_n) const { return JuryParams(q_a, q_b, w, new_n); }
};

/// Type-symmetric strategy: probability an a-signal voter votes A and a
/// b-signal voter votes B. Sincere voting is (1, 1).
struct JuryStrategy {
    double sigma_a;
    double sigma_b;

    JuryStrategy(double sigma_a, double sigma_b);
    static JuryStrategy sincere() { return JuryStrategy(1.0, 1.0); }
};

/// Probabilities, conditional on each state, that the other 2n votes split
/// exactly n-n.
struct PivotalPair {
    double phi_a;
    double phi_b;
    double ratio() const { return phi_a / phi_b; }
};

/// Lower and upper best-response thresholds on the pivotal ratio.
/// upper is +infinity at w = 1 (degenerate threshold).
struct ResponseThresholds {
    double lower;
    double upper;
};

/// Result of a best-response comparison against the pivotal thresholds.
enum class VoteResponse { VoteA, VoteB, Indifferent };

/// Lower threshold psi(w) = (1-w)(1-q_b) / (q_a + w(1-q_b)); equals the
/// pivotal ratio at which an a-signal voter is exactly indifferent.
double psi(const JuryParams& params);

/// Smallest population parameter at which the mixing equilibrium exists.
/// nullopt means mixing never occurs (q_a == q_b, or w == 1): sincere
/// voting is the unique equilibrium for every n.
std::optional<long> n_star(const JuryParams& params);

/// The unique type-symmetric responsive equilibrium for the given n:
/// sincere (1,1) below the mixing onset, otherwise the a-type mixes.
JuryStrategy equilibrium(const JuryParams& params);

/// Limit of the equilibrium strategies as n grows.
JuryStrategy limit_strategy(const JuryParams& params);

/// Pivotal probabilities under a strategy, evaluated in log space.
PivotalPair pivotal_probs(const JuryParams& params, const JuryStrategy& strategy);

ResponseThresholds response_thresholds(const JuryParams& params);

/// Best response of a voter with the given signal against the others'
/// strategy, comparing the pivotal ratio to the relevant threshold with
/// tolerance 1e-9 for indifference.
VoteResponse best_response(const JuryParams& params, const JuryStrategy& strategy,
                           Signal signal);

/// Ex ante probability that a random voter votes for the true state.
double effective_vote_prob(const JuryParams& params, const JuryStrategy& strategy,
                           State state);

/// Limit of effective_vote_prob along the equilibrium sequence.
double limit_effective_vote_prob(const JuryParams& params, State state);

/// Probability the majority elects the true state under the equilibrium
/// strategy: the upper tail Pr[X > n] for X ~ Binomial(2n+1, sigma_tilde),
/// summed in log space from the smallest terms.
double welfare_exact(const JuryParams& params, State state);

/// log(1 - welfare): the exact miss probability, usable far below the
/// underflow threshold of (1 - welfare_exact).
double log_miss_probability(const JuryParams& params, State state);

/// Two-sided bound on the lower tail Pr[X <= alpha * n] of a
/// Binomial(n, p) variable, evaluated at the effective quantile
/// floor(alpha * n) / n so it brackets the exact tail:
///
///   prefactor = exp(-n KL(a || p)) / sqrt(2 pi a (1-a) n)
///   lower = prefactor * (1 - c_a(rho)/n) / (1 - rho)
///   upper = prefactor / (1 - rho)
///
/// with a = floor(alpha * n)/n, rho = a(1-p)/((1-a)p) < 1 and
/// c_a(rho) = [1 + rho(1+rho)/(1-rho)^2] / (a(1-a)).
struct TailBracket {
    double lower;
    double upper;
};
TailBracket binomial_tail_bracket(long n_trials, double p, double alpha);

/// Normalized miss-probability sequence (1 - W_n) sqrt(n) / g^n with
/// g = 4 s (1-s) at the limiting effective vote probability s; bounded
/// sequences certify the welfare convergence rate.
RateDiagnostic rate_diagnostic(const JuryParams& base, State state,
                               std::span<const long> n_values);

/// The rate-diagnostic entry for a given log miss probability; exposed so
/// the degenerate welfare == 1 guard is directly testable.
double rate_ratio_entry(double log_miss, long n, double geometric_base);

}  // namespace aggregatio::condorcet

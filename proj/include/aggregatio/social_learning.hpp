#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "aggregatio/types.hpp"

namespace aggregatio::social_learning {

/// Parameters of the sequential learning model: common signal accuracy p,
/// weight on motivation, and an optional finite population size.
struct LearningParams {
    double p;
    MotivationWeight w;
    std::optional<long> n;

    LearningParams(double p, MotivationWeight w,
                   std::optional<long> n = std::nullopt);
};

/// The net-signal lead at which even an agent motivated to believe in the
/// trailing state conforms; the absorbing barrier of the lead process.
/// Finite values are >= 2; infinite means no herd ever forms.
class CascadeThreshold {
public:
    explicit CascadeThreshold(int k);
    static CascadeThreshold infinite() { return CascadeThreshold(); }

    bool is_finite() const { return finite_; }
    int value() const;

    friend bool operator==(const CascadeThreshold&, const CascadeThreshold&) = default;

private:
    CascadeThreshold() : finite_(false), k_(0) {}
    bool finite_;
    int k_;
};

/// Barrier for the given accuracy and motivation weight: infinite iff
/// w >= 1/2, otherwise floor(-log(1-2w) / log(p/(1-p))) + 2, never below 2
/// and nondecreasing in w. Arguments within 1e-12 of an integer are
/// snapped before the floor (boundary agents follow their signal).
CascadeThreshold cascade_threshold(double p, MotivationWeight w);

/// Motivated probability that state A is better, for an agent holding the
/// given signal after inferring a net lead k of a-signals among
/// predecessors:  w 1{s=a} + (1-w) / (1 + ((1-p)/p)^(k + 1{s=a} - 1{s=b})).
double motivated_posterior(double p, MotivationWeight w, long k, Signal signal);

/// Equilibrium action: follow the private signal strictly inside the
/// barriers, herd at them; indifferent agents follow their signal.
Choice decision(double p, MotivationWeight w, long k, Signal signal);

/// Probability the lead process hits +k before -k when up-steps have
/// probability p:  p^k / (p^k + (1-p)^k). Strictly increasing in k and
/// above p for every finite k >= 2.
double absorption_prob(double p, const CascadeThreshold& k_star);

/// Distribution of the lead process with absorbing barriers, conditioned
/// on state A, together with the accumulated expected number of correct
/// choices. Value type: advancing returns a new distribution.
class WalkDistribution {
public:
    WalkDistribution(double p, const CascadeThreshold& k_star);

    double p() const { return p_; }
    const CascadeThreshold& k_star() const { return k_star_; }
    long step() const { return step_; }
    double absorbed_plus() const { return absorbed_plus_; }
    double absorbed_minus() const { return absorbed_minus_; }
    double expected_correct() const { return expected_correct_; }

    /// Interior mass at lead k (zero off the current parity).
    double mass(long k) const;
    double interior_mass() const;
    double total_mass() const;

private:
    friend WalkDistribution walk_step(const WalkDistribution& dist);
    double p_;
    CascadeThreshold k_star_;
    long step_ = 0;
    double absorbed_plus_ = 0.0;
    double absorbed_minus_ = 0.0;
    double expected_correct_ = 0.0;
    std::vector<double> mass_;  // index k + k_star
};

WalkDistribution walk_init(double p, const CascadeThreshold& k_star);

/// Process one agent: the agent chooses first (interior agents are correct
/// with probability p, plus-absorbed agents with probability 1), then the
/// lead moves one step, with mass reaching a barrier absorbed there.
WalkDistribution walk_step(const WalkDistribution& dist);

/// Limiting welfare: the cascade probability for w < 1/2, p for w >= 1/2.
double welfare_infinite(double p, MotivationWeight w);

/// Exact expected fraction of correct choices among the first n agents,
/// by iterating the walk n steps. For w >= 1/2 every agent follows their
/// own signal and welfare is exactly p.
double welfare_finite_exact(double p, MotivationWeight w, long n);

/// Same computation parameterized by the barrier directly (welfare depends
/// on w only through it); infinite threshold gives p.
double welfare_finite_for_threshold(double p, const CascadeThreshold& k_star, long n);

/// Half-open interval [lo, hi) of motivation weights mapping to a given
/// finite barrier k; consecutive intervals partition [0, 1/2).
struct WInterval {
    double lo;
    double hi;
};
WInterval w_interval_for_threshold(double p, int k);

/// Welfare-maximizing barrier for a finite population, searched over
/// k in {2..k_max} plus the no-cascade regime. Ties are broken toward the
/// smaller k and every tied k is reported; w_inf/w_sup delimit the union
/// of the tied intervals.
struct OptimalW {
    CascadeThreshold best_k;
    WInterval interval;
    double welfare;
    std::vector<int> tied_ks;
    double w_inf;
    double w_sup;
};

/// Default search cap: the smallest k whose weight interval reaches past
/// 0.4999, so every practically attainable barrier is covered.
int default_k_max(double p);

OptimalW optimal_w(double p, long n, int k_max);
OptimalW optimal_w(double p, long n);

/// Pr[cascade starts after agent n], via powers of the two-step transition
/// matrix on matching-parity states.
double stopping_time_tail(double p, const CascadeThreshold& k_star, long n);

/// (n, Pr[cascade starts exactly at agent n]) for n = 1..n_max; entries sum
/// to 1 - stopping_time_tail(n_max).
std::vector<std::pair<long, double>> stopping_time_pmf(double p,
                                                       const CascadeThreshold& k_star,
                                                       long n_max);

/// Closed-form eigensystem of the two-step transition matrix T of the lead
/// process: eigenvalues 4p(1-p) cos^2(pi j / 2k) for j = 1..k-1 plus two
/// zeros, with explicit sine-basis eigenvector matrices. Construction is
/// validated by the reconstruction residual ||T - V Lambda V^-1||_max.
struct SpectralData {
    CascadeThreshold k_star;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd v_matrix;
    Eigen::MatrixXd v_inverse;
    Eigen::MatrixXd transition;
    double residual;
};

/// Throws ReconstructionFailure (with a numerically computed comparison in
/// the message) if the residual exceeds 1e-8.
SpectralData spectral_decomposition(double p, const CascadeThreshold& k_star);

/// Tail via the eigensystem geometric sum; cross-check for
/// stopping_time_tail.
double stopping_time_tail_spectral(double p, const CascadeThreshold& k_star, long n);

/// Expected cascade onset time via the fundamental matrix of the one-step
/// interior chain; finite for every finite barrier.
double expected_stopping_time(double p, const CascadeThreshold& k_star);

}  // namespace aggregatio::social_learning

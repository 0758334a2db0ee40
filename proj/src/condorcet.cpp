#include "aggregatio/condorcet.hpp"

#include <cmath>
#include <limits>

#include "aggregatio/binomial.hpp"

namespace aggregatio::condorcet {

namespace {
constexpr double kIndifferenceTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
}

JuryParams::JuryParams(double q_a_, double q_b_, MotivationWeight w_, long n_)
    : q_a(q_a_), q_b(q_b_), w(w_), n(n_) {
    if (!(q_b > 0.5 && q_a >= q_b && q_a < 1.0))
        throw InvalidParameter("jury accuracies must satisfy 1/2 < q_b <= q_a < 1");
    if (n < 0) throw InvalidParameter("population parameter n must be >= 0");
}

JuryStrategy::JuryStrategy(double sigma_a_, double sigma_b_)
    : sigma_a(sigma_a_), sigma_b(sigma_b_) {
    if (!(sigma_a >= 0.0 && sigma_a <= 1.0 && sigma_b >= 0.0 && sigma_b <= 1.0))
        throw InvalidParameter("strategy components must lie in [0, 1]");
}

double psi(const JuryParams& params) {
    const double w = params.w.value();
    return (1.0 - w) * (1.0 - params.q_b) / (params.q_a + w * (1.0 - params.q_b));
}

std::optional<long> n_star(const JuryParams& params) {
    if (params.q_a == params.q_b || params.w.value() == 1.0) return std::nullopt;
    const double ratio = params.q_a * (1.0 - params.q_a) /
                         (params.q_b * (1.0 - params.q_b));
    const double raw = std::log(psi(params)) / std::log(ratio);
    // Mixing activates at the weak inequality n >= n_star, so an argument
    // that is an integer up to floating-point noise must not be pushed up.
    const double snapped = std::round(raw);
    const double arg = std::abs(raw - snapped) <= 1e-9 ? snapped : std::ceil(raw);
    const long result = static_cast<long>(arg);
    return result < 1 ? 1 : result;
}

JuryStrategy equilibrium(const JuryParams& params) {
    const auto onset = n_star(params);
    if (!onset || params.n < *onset) return JuryStrategy::sincere();
    const double t = std::pow(psi(params), 1.0 / static_cast<double>(params.n));
    const double one_minus_qb = 1.0 - params.q_b;
    double sigma_a = (params.q_a - t * one_minus_qb) /
                     (params.q_a * params.q_a - t * one_minus_qb * one_minus_qb);
    if (sigma_a > 1.0) sigma_a = 1.0;
    if (sigma_a < 0.0) sigma_a = 0.0;
    return JuryStrategy(sigma_a, 1.0);
}

JuryStrategy limit_strategy(const JuryParams& params) {
    if (params.q_a == params.q_b || params.w.value() == 1.0)
        return JuryStrategy::sincere();
    return JuryStrategy(1.0 / (params.q_a + 1.0 - params.q_b), 1.0);
}

PivotalPair pivotal_probs(const JuryParams& params, const JuryStrategy& strategy) {
    const long n = params.n;
    const double nd = static_cast<double>(n);
    const stats::LogFactorials lf(2 * n);
    const double log_choose = lf(2 * n) - 2.0 * lf(n);

    const auto log_or_neg_inf = [](double x) {
        return x > 0.0 ? std::log(x) : -kInf;
    };

    const double a_up = params.q_a * strategy.sigma_a +
                        (1.0 - params.q_a) * (1.0 - strategy.sigma_b);
    const double a_dn = params.q_a * (1.0 - strategy.sigma_a) +
                        (1.0 - params.q_a) * strategy.sigma_b;
    const double b_up = params.q_b * strategy.sigma_b +
                        (1.0 - params.q_b) * (1.0 - strategy.sigma_a);
    const double b_dn = params.q_b * (1.0 - strategy.sigma_b) +
                        (1.0 - params.q_b) * strategy.sigma_a;

    const double log_phi_a = log_choose + nd * log_or_neg_inf(a_up) + nd * log_or_neg_inf(a_dn);
    const double log_phi_b = log_choose + nd * log_or_neg_inf(b_up) + nd * log_or_neg_inf(b_dn);
    return PivotalPair{std::exp(log_phi_a), std::exp(log_phi_b)};
}

ResponseThresholds response_thresholds(const JuryParams& params) {
    const double w = params.w.value();
    const double lower = psi(params);
    if (w >= 1.0) return ResponseThresholds{lower, kInf};
    const double upper =
        (params.q_b + w * (1.0 - params.q_a)) / ((1.0 - w) * (1.0 - params.q_a));
    return ResponseThresholds{lower, upper};
}

VoteResponse best_response(const JuryParams& params, const JuryStrategy& strategy,
                           Signal signal) {
    const PivotalPair piv = pivotal_probs(params, strategy);
    if (piv.phi_a == 0.0 && piv.phi_b == 0.0) return VoteResponse::Indifferent;
    const double ratio = piv.ratio();
    const ResponseThresholds th = response_thresholds(params);

    if (signal == Signal::A) {
        if (std::isfinite(ratio) && std::abs(ratio - th.lower) <= kIndifferenceTol)
            return VoteResponse::Indifferent;
        return ratio > th.lower ? VoteResponse::VoteA : VoteResponse::VoteB;
    }
    if (std::isinf(th.upper))
        return std::isinf(ratio) ? VoteResponse::Indifferent : VoteResponse::VoteB;
    if (std::isfinite(ratio) && std::abs(ratio - th.upper) <= kIndifferenceTol)
        return VoteResponse::Indifferent;
    return ratio < th.upper ? VoteResponse::VoteB : VoteResponse::VoteA;
}

double effective_vote_prob(const JuryParams& params, const JuryStrategy& strategy,
                           State state) {
    if (state == State::A)
        return params.q_a * strategy.sigma_a +
               (1.0 - params.q_a) * (1.0 - strategy.sigma_b);
    return params.q_b * strategy.sigma_b +
           (1.0 - params.q_b) * (1.0 - strategy.sigma_a);
}

double limit_effective_vote_prob(const JuryParams& params, State state) {
    return effective_vote_prob(params, limit_strategy(params), state);
}

double welfare_exact(const JuryParams& params, State state) {
    const JuryStrategy strategy = equilibrium(params);
    const double s = effective_vote_prob(params, strategy, state);
    return stats::binomial_upper_tail(2 * params.n + 1, params.n, s);
}

double log_miss_probability(const JuryParams& params, State state) {
    const JuryStrategy strategy = equilibrium(params);
    const double s = effective_vote_prob(params, strategy, state);
    return stats::log_binomial_lower_tail(2 * params.n + 1, params.n, s);
}

TailBracket binomial_tail_bracket(long n_trials, double p, double alpha) {
    if (n_trials < 1) throw InvalidParameter("bracket requires n_trials >= 1");
    if (!(p > 0.0 && p < 1.0 && alpha > 0.0 && alpha < 1.0))
        throw InvalidParameter("bracket requires interior p and alpha");
    if (alpha >= p)
        throw InvalidBracket("bracket degenerates when alpha >= p");

    const double nd = static_cast<double>(n_trials);
    const long k = static_cast<long>(std::floor(alpha * nd));
    if (k < 1)
        throw InvalidBracket("alpha * n below 1 leaves no lower tail to bracket");

    // The event {X <= alpha n} is {X <= k}; evaluate the bound at the
    // effective quantile k/n so it brackets the summed tail exactly.
    const double a = static_cast<double>(k) / nd;
    const double rho = a * (1.0 - p) / ((1.0 - a) * p);
    const double prefactor = std::exp(-nd * stats::bernoulli_kl(a, p)) /
                             std::sqrt(2.0 * M_PI * a * (1.0 - a) * nd);
    const double c = (1.0 + rho * (1.0 + rho) / ((1.0 - rho) * (1.0 - rho))) /
                     (a * (1.0 - a));
    const double upper = prefactor / (1.0 - rho);
    const double lower = prefactor * (1.0 - c / nd) / (1.0 - rho);
    return TailBracket{lower, upper};
}

double rate_ratio_entry(double log_miss, long n, double geometric_base) {
    if (!(geometric_base > 0.0 && geometric_base < 1.0))
        throw InvalidParameter("geometric base must lie in (0, 1)");
    const double nd = static_cast<double>(n);
    return std::exp(log_miss + 0.5 * std::log(nd) - nd * std::log(geometric_base));
}

RateDiagnostic rate_diagnostic(const JuryParams& base, State state,
                               std::span<const long> n_values) {
    if (n_values.empty()) throw InvalidParameter("rate diagnostic needs n values");
    const auto onset = n_star(base);
    long prev = 0;
    for (long n : n_values) {
        if (n <= prev) throw InvalidParameter("n values must be strictly increasing");
        if (onset && n < *onset)
            throw InvalidParameter("rate diagnostic requires n >= mixing onset");
        prev = n;
    }

    const double s_inf = limit_effective_vote_prob(base, state);
    const double geo = 4.0 * s_inf * (1.0 - s_inf);

    RateDiagnostic diag;
    diag.entries.reserve(n_values.size());
    for (long n : n_values) {
        const JuryParams params = base.with_n(n);
        diag.entries.emplace_back(n, rate_ratio_entry(log_miss_probability(params, state),
                                                      n, geo));
    }
    return diag;
}

}  // namespace aggregatio::condorcet

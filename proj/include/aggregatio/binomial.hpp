#pragma once

#include <vector>

#include "aggregatio/errors.hpp"

namespace aggregatio::stats {

/// Exact log-factorials built as a cumulative table of log k, avoiding
/// Stirling approximations for the n ranges used here (a few thousand).
class LogFactorials {
public:
    explicit LogFactorials(long max_n);
    double operator()(long k) const { return table_.at(static_cast<std::size_t>(k)); }
    long max_n() const { return static_cast<long>(table_.size()) - 1; }

private:
    std::vector<double> table_;
};

/// log Pr[X = k] for X ~ Binomial(n, p).
double log_binomial_pmf(const LogFactorials& lf, long n, long k, double p);

/// log Pr[X <= k], terms summed smallest-first in log space (the lower
/// tail is assumed to sit below the mode, where terms increase with k).
double log_binomial_lower_tail(long n, long k, double p);

/// Pr[X <= k] for X ~ Binomial(n, p), numerically stable on both sides.
double binomial_lower_tail(long n, long k, double p);

/// Pr[X > k] = 1 - Pr[X <= k], computed from whichever side is smaller.
double binomial_upper_tail(long n, long k, double p);

/// KL divergence between Bernoulli(alpha) and Bernoulli(p).
double bernoulli_kl(double alpha, double p);

}  // namespace aggregatio::stats

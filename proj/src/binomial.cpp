#include "aggregatio/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aggregatio::stats {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogFactorials::LogFactorials(long max_n) {
    if (max_n < 0) throw InvalidParameter("log-factorial table size must be >= 0");
    table_.resize(static_cast<std::size_t>(max_n) + 1);
    table_[0] = 0.0;
    for (long k = 1; k <= max_n; ++k)
        table_[static_cast<std::size_t>(k)] =
            table_[static_cast<std::size_t>(k - 1)] + std::log(static_cast<double>(k));
}

double log_binomial_pmf(const LogFactorials& lf, long n, long k, double p) {
    if (k < 0 || k > n) return kNegInf;
    if (p <= 0.0) return k == 0 ? 0.0 : kNegInf;
    if (p >= 1.0) return k == n ? 0.0 : kNegInf;
    const double lc = lf(n) - lf(k) - lf(n - k);
    return lc + static_cast<double>(k) * std::log(p) +
           static_cast<double>(n - k) * std::log1p(-p);
}

double log_binomial_lower_tail(long n, long k, double p) {
    if (k < 0) return kNegInf;
    if (k >= n) return 0.0;
    const LogFactorials lf(n);
    // Terms b(0..k) increase toward the mode; accumulate from the smallest
    // and rescale by the largest to keep every exp() in range.
    const double top = log_binomial_pmf(lf, n, k, p);
    if (top == kNegInf) {
        // p == 0 or 1 edge: the tail is 0 or 1 outright.
        return p >= 1.0 ? kNegInf : 0.0;
    }
    double sum = 0.0;
    for (long j = 0; j <= k; ++j)
        sum += std::exp(log_binomial_pmf(lf, n, j, p) - top);
    return top + std::log(sum);
}

namespace {

double log_binomial_upper_tail_direct(long n, long k, double p) {
    // Pr[X > k] summed from the smallest term (j = n) downward.
    if (k < 0) return 0.0;
    if (k >= n) return kNegInf;
    const LogFactorials lf(n);
    const double top = log_binomial_pmf(lf, n, k + 1, p);
    if (top == kNegInf) return p <= 0.0 ? kNegInf : 0.0;
    double sum = 0.0;
    for (long j = n; j >= k + 1; --j)
        sum += std::exp(log_binomial_pmf(lf, n, j, p) - top);
    return top + std::log(sum);
}

}  // namespace

double binomial_lower_tail(long n, long k, double p) {
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    const double mean = static_cast<double>(n) * p;
    if (static_cast<double>(k) <= mean)
        return std::exp(log_binomial_lower_tail(n, k, p));
    return 1.0 - std::exp(log_binomial_upper_tail_direct(n, k, p));
}

double binomial_upper_tail(long n, long k, double p) {
    if (k < 0) return 1.0;
    if (k >= n) return 0.0;
    const double mean = static_cast<double>(n) * p;
    if (static_cast<double>(k) <= mean)
        return 1.0 - std::exp(log_binomial_lower_tail(n, k, p));
    return std::exp(log_binomial_upper_tail_direct(n, k, p));
}

double bernoulli_kl(double alpha, double p) {
    if (!(alpha > 0.0 && alpha < 1.0 && p > 0.0 && p < 1.0))
        throw InvalidParameter("bernoulli_kl requires interior probabilities");
    return alpha * std::log(alpha / p) + (1.0 - alpha) * std::log((1.0 - alpha) / (1.0 - p));
}

}  // namespace aggregatio::stats

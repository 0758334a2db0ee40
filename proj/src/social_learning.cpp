#include "aggregatio/social_learning.hpp"

#include <cmath>
#include <sstream>

namespace aggregatio::social_learning {

namespace {

void check_accuracy(double p) {
    if (!(p > 0.5 && p < 1.0))
        throw InvalidParameter("signal accuracy must satisfy 1/2 < p < 1");
}

int require_finite(const CascadeThreshold& k_star) {
    if (!k_star.is_finite())
        throw InvalidParameter("operation requires a finite cascade threshold");
    return k_star.value();
}

/// Two-step transition matrix on matching-parity states -k, -k+2, ..., k
/// (increasing order). Columns for the absorbing barriers are zero, so an
/// entry in a barrier row is the mass absorbed exactly at that step.
Eigen::MatrixXd two_step_matrix(double p, int k) {
    const int size = k + 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
    const double up = p * p;
    const double down = (1.0 - p) * (1.0 - p);
    const double stay = 2.0 * p * (1.0 - p);
    for (int j = 1; j <= k - 1; ++j) {
        t(j + 1, j) += up;
        t(j, j) += stay;
        t(j - 1, j) += down;
    }
    return t;
}

/// Initial vector for the embedded two-step chain: unit mass at lead 0 for
/// even barriers; the distribution after one step for odd barriers.
Eigen::VectorXd initial_vector(double p, int k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(k + 1);
    if (k % 2 == 0) {
        v(k / 2) = 1.0;
    } else {
        v((k + 1) / 2) = p;
        v((k - 1) / 2) = 1.0 - p;
    }
    return v;
}

/// Number of two-step applications after which the interior mass equals
/// Pr[cascade onset > n], given the barrier parity.
long tail_power(int k, long n) {
    if (n <= 0) return 0;
    return k % 2 == 0 ? n / 2 : (n - 1) / 2;
}

double interior_sum(const Eigen::VectorXd& v) {
    double total = 0.0;
    for (int i = 1; i + 1 < v.size(); ++i) total += v(i);
    return total;
}

}  // namespace

LearningParams::LearningParams(double p_, MotivationWeight w_, std::optional<long> n_)
    : p(p_), w(w_), n(n_) {
    check_accuracy(p);
    if (n && *n < 1) throw InvalidParameter("population size must be positive");
}

CascadeThreshold::CascadeThreshold(int k) : finite_(true), k_(k) {
    if (k < 2) throw InvalidParameter("finite cascade threshold must be >= 2");
}

int CascadeThreshold::value() const {
    if (!finite_) throw InvalidParameter("infinite cascade threshold has no value");
    return k_;
}

CascadeThreshold cascade_threshold(double p, MotivationWeight w) {
    check_accuracy(p);
    const double wv = w.value();
    if (wv >= 0.5) return CascadeThreshold::infinite();
    const double delta = std::log(p) - std::log(1.0 - p);
    double arg = -std::log1p(-2.0 * wv) / delta;
    // The barrier-defining inequality is strict, so an argument that is an
    // integer up to floating-point noise belongs to the lower interval.
    const double snapped = std::round(arg);
    if (std::abs(arg - snapped) <= 1e-12) arg = snapped;
    const long k = static_cast<long>(std::floor(arg)) + 2;
    return CascadeThreshold(static_cast<int>(k < 2 ? 2 : k));
}

double motivated_posterior(double p, MotivationWeight w, long k, Signal signal) {
    check_accuracy(p);
    const double exponent =
        static_cast<double>(k) + (signal == Signal::A ? 1.0 : -1.0);
    const double odds = std::pow((1.0 - p) / p, exponent);
    const double bayes = 1.0 / (1.0 + odds);
    const double wv = w.value();
    return (signal == Signal::A ? wv : 0.0) + (1.0 - wv) * bayes;
}

Choice decision(double p, MotivationWeight w, long k, Signal signal) {
    const double belief_in_a = motivated_posterior(p, w, k, signal);
    if (signal == Signal::A) return belief_in_a >= 0.5 ? Choice::A : Choice::B;
    return belief_in_a <= 0.5 ? Choice::B : Choice::A;
}

double absorption_prob(double p, const CascadeThreshold& k_star) {
    check_accuracy(p);
    const int k = require_finite(k_star);
    const double odds = std::pow((1.0 - p) / p, k);
    return 1.0 / (1.0 + odds);
}

WalkDistribution::WalkDistribution(double p, const CascadeThreshold& k_star)
    : p_(p), k_star_(k_star) {
    check_accuracy(p);
    const int k = require_finite(k_star);
    mass_.assign(static_cast<std::size_t>(2 * k + 1), 0.0);
    mass_[static_cast<std::size_t>(k)] = 1.0;  // unit mass at lead 0
}

double WalkDistribution::mass(long k) const {
    const int barrier = k_star_.value();
    if (k < -barrier || k > barrier)
        throw InvalidParameter("lead outside the barrier range");
    return mass_[static_cast<std::size_t>(k + barrier)];
}

double WalkDistribution::interior_mass() const {
    double total = 0.0;
    for (double m : mass_) total += m;
    return total;
}

double WalkDistribution::total_mass() const {
    return interior_mass() + absorbed_plus_ + absorbed_minus_;
}

WalkDistribution walk_init(double p, const CascadeThreshold& k_star) {
    return WalkDistribution(p, k_star);
}

WalkDistribution walk_step(const WalkDistribution& dist) {
    const int k = dist.k_star_.value();
    const double p = dist.p_;
    WalkDistribution out = dist;

    // The agent at this step acts before the lead moves: interior agents
    // follow their signal, absorbed-to-A agents are always correct.
    out.expected_correct_ += p * dist.interior_mass() + dist.absorbed_plus_;

    std::vector<double> next(dist.mass_.size(), 0.0);
    for (long s = -k + 1; s <= k - 1; ++s) {
        const double m = dist.mass_[static_cast<std::size_t>(s + k)];
        if (m == 0.0) continue;
        const double up = p * m;
        const double down = (1.0 - p) * m;
        if (s + 1 == k)
            out.absorbed_plus_ += up;
        else
            next[static_cast<std::size_t>(s + 1 + k)] += up;
        if (s - 1 == -k)
            out.absorbed_minus_ += down;
        else
            next[static_cast<std::size_t>(s - 1 + k)] += down;
    }
    out.mass_ = std::move(next);
    ++out.step_;
    return out;
}

double welfare_infinite(double p, MotivationWeight w) {
    check_accuracy(p);
    if (w.value() >= 0.5) return p;
    return absorption_prob(p, cascade_threshold(p, w));
}

double welfare_finite_for_threshold(double p, const CascadeThreshold& k_star, long n) {
    check_accuracy(p);
    if (n < 1) throw InvalidParameter("population size must be positive");
    if (!k_star.is_finite()) return p;
    WalkDistribution dist = walk_init(p, k_star);
    for (long i = 0; i < n; ++i) dist = walk_step(dist);
    return dist.expected_correct() / static_cast<double>(n);
}

double welfare_finite_exact(double p, MotivationWeight w, long n) {
    check_accuracy(p);
    if (n < 1) throw InvalidParameter("population size must be positive");
    if (w.value() >= 0.5) return p;  // every agent follows their own signal
    return welfare_finite_for_threshold(p, cascade_threshold(p, w), n);
}

WInterval w_interval_for_threshold(double p, int k) {
    check_accuracy(p);
    if (k < 2) throw InvalidParameter("cascade threshold must be >= 2");
    const double delta = std::log(p) - std::log(1.0 - p);
    const double lo = 0.5 * (1.0 - std::exp(-static_cast<double>(k - 2) * delta));
    const double hi = 0.5 * (1.0 - std::exp(-static_cast<double>(k - 1) * delta));
    return WInterval{lo, hi};
}

int default_k_max(double p) {
    check_accuracy(p);
    for (int k = 2; k < 100000; ++k)
        if (w_interval_for_threshold(p, k).hi > 0.4999) return k;
    throw InvalidParameter("no practical cascade threshold cap for this accuracy");
}

OptimalW optimal_w(double p, long n, int k_max) {
    check_accuracy(p);
    if (n < 4) throw InvalidParameter("optimal weight search requires n >= 4");
    if (k_max < 2) throw InvalidParameter("k_max must be >= 2");

    std::vector<double> welfare_by_k;
    welfare_by_k.reserve(static_cast<std::size_t>(k_max - 1));
    double best = -1.0;
    for (int k = 2; k <= k_max; ++k) {
        const double w = welfare_finite_for_threshold(p, CascadeThreshold(k), n);
        welfare_by_k.push_back(w);
        if (w > best) best = w;
    }

    if (welfare_by_k.back() == best)
        throw KMaxTooSmall("welfare is still maximal at k_max = " +
                           std::to_string(k_max) + "; raise the search cap");

    if (p > best) {
        // The no-cascade regime dominates every finite barrier.
        return OptimalW{CascadeThreshold::infinite(), WInterval{0.5, 1.0}, p,
                        {}, 0.5, 1.0};
    }

    std::vector<int> tied;
    for (int k = 2; k <= k_max; ++k)
        if (welfare_by_k[static_cast<std::size_t>(k - 2)] == best) tied.push_back(k);

    const int best_k = tied.front();
    return OptimalW{CascadeThreshold(best_k),
                    w_interval_for_threshold(p, best_k),
                    best,
                    tied,
                    w_interval_for_threshold(p, tied.front()).lo,
                    w_interval_for_threshold(p, tied.back()).hi};
}

OptimalW optimal_w(double p, long n) { return optimal_w(p, n, default_k_max(p)); }

double stopping_time_tail(double p, const CascadeThreshold& k_star, long n) {
    check_accuracy(p);
    const int k = require_finite(k_star);
    if (n < 0) throw InvalidParameter("tail requires n >= 0");
    if (n == 0) return 1.0;
    const Eigen::MatrixXd t = two_step_matrix(p, k);
    Eigen::VectorXd v = initial_vector(p, k);
    const long power = tail_power(k, n);
    for (long i = 0; i < power; ++i) v = t * v;
    return interior_sum(v);
}

std::vector<std::pair<long, double>> stopping_time_pmf(double p,
                                                       const CascadeThreshold& k_star,
                                                       long n_max) {
    check_accuracy(p);
    const int k = require_finite(k_star);
    if (n_max < 1) throw InvalidParameter("pmf requires n_max >= 1");

    std::vector<std::pair<long, double>> pmf;
    pmf.reserve(static_cast<std::size_t>(n_max));
    for (long i = 1; i <= n_max; ++i) pmf.emplace_back(i, 0.0);

    const Eigen::MatrixXd t = two_step_matrix(p, k);
    Eigen::VectorXd v = initial_vector(p, k);
    // Barrier entries of each iterate hold the mass absorbed at exactly
    // that time (barrier columns of T are zero, so nothing accumulates).
    long time = k % 2 == 0 ? 0 : 1;
    while (time + 2 <= n_max) {
        v = t * v;
        time += 2;
        pmf[static_cast<std::size_t>(time - 1)].second = v(0) + v(k);
    }
    return pmf;
}

SpectralData spectral_decomposition(double p, const CascadeThreshold& k_star) {
    check_accuracy(p);
    const int k = require_finite(k_star);
    const int size = k + 1;
    const double pi = M_PI;
    const double odds_up = p / (1.0 - p);

    Eigen::VectorXd eigenvalues = Eigen::VectorXd::Zero(size);
    for (int j = 1; j <= k - 1; ++j) {
        const double c = std::cos(pi * j / (2.0 * k));
        eigenvalues(j - 1) = 4.0 * p * (1.0 - p) * c * c;
    }

    // Sine-basis eigenvectors of the interior block, scaled by the state
    // odds; the inverse uses the discrete sine orthogonality
    // sum_j sin(pi i j / k) sin(pi l j / k) = (k / 2) delta_il.
    Eigen::MatrixXd m(k - 1, k - 1);
    Eigen::MatrixXd m_inv(k - 1, k - 1);
    for (int i = 1; i <= k - 1; ++i) {
        for (int j = 1; j <= k - 1; ++j) {
            m(i - 1, j - 1) = 2.0 / std::tan(pi * j / (2.0 * k)) *
                              std::sin(pi * i * j / k) * std::pow(odds_up, i);
            m_inv(i - 1, j - 1) = (1.0 / k) * std::tan(pi * i / (2.0 * k)) *
                                  std::sin(pi * i * j / k) /
                                  std::pow(odds_up, j);
        }
    }

    Eigen::VectorXd bottom(k - 1);
    for (int i = 1; i <= k - 1; ++i)
        bottom(i - 1) = std::pow(odds_up, k) * (i % 2 == 1 ? 1.0 : -1.0);

    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(size, size);
    for (int j = 0; j < k - 1; ++j) v(0, j) = 1.0;
    v(0, k - 1) = 1.0;
    v.block(1, 0, k - 1, k - 1) = m;
    for (int j = 0; j < k - 1; ++j) v(k, j) = bottom(j);
    v(k, k) = 1.0;

    Eigen::MatrixXd v_inv = Eigen::MatrixXd::Zero(size, size);
    v_inv.block(0, 1, k - 1, k - 1) = m_inv;
    v_inv(k - 1, 0) = 1.0;
    v_inv.block(k - 1, 1, 1, k - 1) = -Eigen::RowVectorXd::Ones(k - 1) * m_inv;
    v_inv.block(k, 1, 1, k - 1) = -bottom.transpose() * m_inv;
    v_inv(k, k) = 1.0;

    const Eigen::MatrixXd t = two_step_matrix(p, k);
    const Eigen::MatrixXd reconstructed = v * eigenvalues.asDiagonal() * v_inv;
    const double residual = (t - reconstructed).cwiseAbs().maxCoeff();

    if (residual > 1e-8) {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(t);
        std::ostringstream report;
        report << "closed-form eigensystem residual " << residual
               << " exceeds 1e-8 for barrier " << k
               << "; numerically computed eigenvalue magnitudes:";
        for (int i = 0; i < size; ++i)
            report << " " << std::abs(solver.eigenvalues()(i));
        throw ReconstructionFailure(report.str());
    }

    return SpectralData{k_star, eigenvalues, v, v_inv, t, residual};
}

double stopping_time_tail_spectral(double p, const CascadeThreshold& k_star, long n) {
    check_accuracy(p);
    const int k = require_finite(k_star);
    if (n < 0) throw InvalidParameter("tail requires n >= 0");
    const SpectralData spec = spectral_decomposition(p, k_star);
    const long power = k % 2 == 0 ? n / 2 + 1 : (n + 1) / 2;

    Eigen::VectorXd y = spec.v_inverse * initial_vector(p, k);
    for (int i = 0; i < k + 1; ++i) {
        const double lambda = spec.eigenvalues(i);
        y(i) *= std::pow(lambda, static_cast<double>(power)) / (1.0 - lambda);
    }
    const Eigen::VectorXd x = spec.v_matrix * y;
    return x(0) + x(k);
}

double expected_stopping_time(double p, const CascadeThreshold& k_star) {
    check_accuracy(p);
    const int k = require_finite(k_star);
    const int interior = 2 * k - 1;  // one-step states -k+1 .. k-1

    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(interior, interior);
    for (int i = 0; i < interior; ++i) {
        if (i + 1 < interior) system(i, i + 1) -= p;
        if (i - 1 >= 0) system(i, i - 1) -= 1.0 - p;
    }
    const Eigen::VectorXd times =
        system.partialPivLu().solve(Eigen::VectorXd::Ones(interior));
    return times(k - 1);  // state 0
}

}  // namespace aggregatio::social_learning

#include "aggregatio/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "aggregatio/rng.hpp"

namespace aggregatio::rng {

namespace {
constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c, std::uint32_t k0,
                         std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}
}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint32_t shard)
    : key0_(static_cast<std::uint32_t>(seed)),
      key1_(static_cast<std::uint32_t>(seed >> 32)),
      shard_(shard) {}

void CounterRng::start_sample(std::uint64_t sample_index) {
    sample_lo_ = static_cast<std::uint32_t>(sample_index);
    sample_hi_ = static_cast<std::uint32_t>(sample_index >> 32);
    draw_ = 0;
}

std::array<std::uint32_t, 4> CounterRng::block() const {
    std::array<std::uint32_t, 4> c = {draw_, sample_lo_, sample_hi_, shard_};
    std::uint32_t k0 = key0_;
    std::uint32_t k1 = key1_;
    for (int round = 0; round < 10; ++round) {
        philox_round(c, k0, k1);
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return c;
}

std::uint64_t CounterRng::next_u64() {
    const auto c = block();
    ++draw_;
    return (static_cast<std::uint64_t>(c[0]) << 32) | c[1];
}

double CounterRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace aggregatio::rng

namespace aggregatio::oracles {

namespace {

/// Deterministic shard sizes: the first (total % shards) shards take one
/// extra sample.
std::vector<std::uint64_t> shard_sizes(std::uint64_t total, unsigned shards) {
    std::vector<std::uint64_t> sizes(shards, total / shards);
    for (unsigned s = 0; s < total % shards; ++s) ++sizes[s];
    return sizes;
}

struct ShardMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

/// Run one simulation kernel across shards (optionally in parallel) and
/// fold the per-shard moments in shard order, so the estimate depends only
/// on (seed, shards), never on scheduling.
McEstimate run_sharded(std::uint64_t n_samples, std::uint64_t seed, unsigned shards,
                       unsigned max_threads,
                       const std::function<double(aggregatio::rng::CounterRng&)>& kernel) {
    if (n_samples < 1) throw InvalidParameter("need at least one sample");
    if (shards < 1) throw InvalidParameter("need at least one shard");

    const auto sizes = shard_sizes(n_samples, shards);
    std::vector<ShardMoments> moments(shards);

    const auto run_shard = [&](unsigned s) {
        aggregatio::rng::CounterRng gen(seed, s);
        ShardMoments m;
        for (std::uint64_t i = 0; i < sizes[s]; ++i) {
            gen.start_sample(i);
            const double value = kernel(gen);
            m.sum += value;
            m.sum_sq += value * value;
        }
        moments[s] = m;
    };

    unsigned workers = max_threads == 0 ? std::thread::hardware_concurrency()
                                        : max_threads;
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, shards);

    if (workers <= 1) {
        for (unsigned s = 0; s < shards; ++s) run_shard(s);
    } else {
        std::vector<std::thread> pool;
        std::atomic<unsigned> next{0};
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                while (true) {
                    const unsigned s = next.fetch_add(1);
                    if (s >= shards) break;
                    run_shard(s);
                }
            });
        for (auto& t : pool) t.join();
    }

    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& m : moments) {
        sum += m.sum;
        sum_sq += m.sum_sq;
    }
    const double count = static_cast<double>(n_samples);
    const double mean = sum / count;
    double std_error = 0.0;
    if (n_samples > 1) {
        double var = (sum_sq - count * mean * mean) / (count - 1.0);
        if (var < 0.0) var = 0.0;
        std_error = std::sqrt(var / count);
    }
    return McEstimate{mean, std_error, n_samples, seed};
}

}  // namespace

double enumerate_cjt(const condorcet::JuryParams& params,
                     const condorcet::JuryStrategy& strategy, State state) {
    const long n = params.n;
    if (n > 10) throw TooLarge("cjt enumeration capped at n <= 10");
    const int voters = static_cast<int>(2 * n + 1);

    // Probability a voter's signal matches state A, and that each signal
    // type votes for A.
    const double p_sig_a = state == State::A ? params.q_a : 1.0 - params.q_b;
    const double vote_a_given_a = strategy.sigma_a;
    const double vote_a_given_b = 1.0 - strategy.sigma_b;

    // Majority-for-A probability conditional on the number of a-signals j:
    // votes for A ~ Binom(j, sigma_a) + Binom(voters - j, 1 - sigma_b).
    std::vector<double> majority_a(static_cast<std::size_t>(voters) + 1);
    for (int j = 0; j <= voters; ++j) {
        std::vector<double> dist(static_cast<std::size_t>(voters) + 1, 0.0);
        dist[0] = 1.0;
        int filled = 0;
        const auto fold_bernoulli = [&](double q) {
            for (int i = filled; i >= 0; --i) {
                const double m = dist[static_cast<std::size_t>(i)];
                dist[static_cast<std::size_t>(i)] = m * (1.0 - q);
                dist[static_cast<std::size_t>(i) + 1] += m * q;
            }
            ++filled;
        };
        for (int i = 0; i < j; ++i) fold_bernoulli(vote_a_given_a);
        for (int i = j; i < voters; ++i) fold_bernoulli(vote_a_given_b);
        double tail = 0.0;
        for (int v = static_cast<int>(n) + 1; v <= voters; ++v)
            tail += dist[static_cast<std::size_t>(v)];
        majority_a[static_cast<std::size_t>(j)] = tail;
    }

    std::vector<double> pow_a(static_cast<std::size_t>(voters) + 1, 1.0);
    std::vector<double> pow_b(static_cast<std::size_t>(voters) + 1, 1.0);
    for (int i = 1; i <= voters; ++i) {
        pow_a[static_cast<std::size_t>(i)] = pow_a[static_cast<std::size_t>(i - 1)] * p_sig_a;
        pow_b[static_cast<std::size_t>(i)] =
            pow_b[static_cast<std::size_t>(i - 1)] * (1.0 - p_sig_a);
    }

    double correct = 0.0;
    const std::uint64_t profiles = 1ull << voters;
    for (std::uint64_t mask = 0; mask < profiles; ++mask) {
        const int j = std::popcount(mask);
        const double prob = pow_a[static_cast<std::size_t>(j)] *
                            pow_b[static_cast<std::size_t>(voters - j)];
        const double maj_a = majority_a[static_cast<std::size_t>(j)];
        correct += prob * (state == State::A ? maj_a : 1.0 - maj_a);
    }
    return correct;
}

SlmEnumeration enumerate_slm(double p, MotivationWeight w, long n) {
    if (n < 1) throw InvalidParameter("enumeration requires n >= 1");
    if (n > 20) throw TooLarge("slm enumeration capped at n <= 20");
    const auto k_star = social_learning::cascade_threshold(p, w);
    const bool finite = k_star.is_finite();
    const long barrier = finite ? k_star.value() : 0;

    std::vector<double> pow_p(static_cast<std::size_t>(n) + 1, 1.0);
    std::vector<double> pow_q(static_cast<std::size_t>(n) + 1, 1.0);
    for (long i = 1; i <= n; ++i) {
        pow_p[static_cast<std::size_t>(i)] = pow_p[static_cast<std::size_t>(i - 1)] * p;
        pow_q[static_cast<std::size_t>(i)] =
            pow_q[static_cast<std::size_t>(i - 1)] * (1.0 - p);
    }

    double welfare = 0.0;
    double cascade_up = 0.0;
    double cascade_down = 0.0;
    const std::uint64_t sequences = 1ull << n;
    for (std::uint64_t mask = 0; mask < sequences; ++mask) {
        long lead = 0;
        int absorbed = 0;
        long correct = 0;
        for (long i = 0; i < n; ++i) {
            if (absorbed > 0) {
                ++correct;
                continue;
            }
            if (absorbed < 0) continue;
            const bool signal_a = (mask >> i) & 1u;
            if (signal_a) ++correct;  // interior agents follow their signal
            lead += signal_a ? 1 : -1;
            if (finite) {
                if (lead == barrier) absorbed = 1;
                if (lead == -barrier) absorbed = -1;
            }
        }
        const int a_count = std::popcount(mask);
        const double prob = pow_p[static_cast<std::size_t>(a_count)] *
                            pow_q[static_cast<std::size_t>(n - a_count)];
        welfare += prob * static_cast<double>(correct) / static_cast<double>(n);
        if (absorbed > 0) cascade_up += prob;
        if (absorbed < 0) cascade_down += prob;
    }
    return SlmEnumeration{welfare, cascade_up, cascade_down};
}

McEstimate mc_slm(double p, MotivationWeight w, long n, std::uint64_t n_samples,
                  std::uint64_t seed, unsigned shards, unsigned max_threads) {
    if (n < 1) throw InvalidParameter("simulation requires n >= 1");
    const auto k_star = social_learning::cascade_threshold(p, w);
    const bool finite = k_star.is_finite();
    const long barrier = finite ? k_star.value() : 0;

    return run_sharded(n_samples, seed, shards, max_threads,
                       [=](aggregatio::rng::CounterRng& gen) {
                           long lead = 0;
                           long correct = 0;
                           for (long i = 1; i <= n; ++i) {
                               const bool signal_a = gen.uniform() < p;
                               if (signal_a) ++correct;
                               lead += signal_a ? 1 : -1;
                               if (finite && (lead == barrier || lead == -barrier)) {
                                   if (lead == barrier) correct += n - i;
                                   break;
                               }
                           }
                           return static_cast<double>(correct) /
                                  static_cast<double>(n);
                       });
}

McEstimate mc_cjt(const condorcet::JuryParams& params,
                  const condorcet::JuryStrategy& strategy, State state,
                  std::uint64_t n_samples, std::uint64_t seed, unsigned shards,
                  unsigned max_threads) {
    const int voters = static_cast<int>(2 * params.n + 1);
    const double p_sig_a = state == State::A ? params.q_a : 1.0 - params.q_b;

    return run_sharded(n_samples, seed, shards, max_threads,
                       [=](aggregatio::rng::CounterRng& gen) {
                           int votes_a = 0;
                           for (int i = 0; i < voters; ++i) {
                               const bool signal_a = gen.uniform() < p_sig_a;
                               const double p_vote_a = signal_a
                                                           ? strategy.sigma_a
                                                           : 1.0 - strategy.sigma_b;
                               if (gen.uniform() < p_vote_a) ++votes_a;
                           }
                           const bool a_elected = votes_a > static_cast<int>(params.n);
                           const bool correct =
                               (state == State::A) == a_elected;
                           return correct ? 1.0 : 0.0;
                       });
}

beliefs::FiniteMeasure grid_minimize_dissonance(const beliefs::FiniteMeasure& p,
                                                const beliefs::FiniteMeasure& p_z,
                                                MotivationWeight w,
                                                double resolution) {
    if (!p.same_outcomes(p_z))
        throw MismatchedOutcomeSpaces("grid search requires a common outcome list");
    const std::size_t d = p.size();
    if (d > 4) throw TooLarge("grid search capped at outcome sets of size <= 4");
    if (!(resolution > 0.0) || resolution > 0.010000000001)
        throw TooLarge("grid resolution must lie in (0, 0.01]");
    const long steps = std::lround(1.0 / resolution);
    if (steps > 1000) throw TooLarge("grid too fine; at most 1000 steps per axis");

    const double wv = w.value();
    std::vector<double> pw(p.weights());
    std::vector<double> zw(p_z.weights());
    std::vector<double> q(d);
    for (std::size_t i = 0; i < d; ++i) q[i] = pw[i] + zw[i];

    // Mass on q's null set is forced to zero: those axes are skipped.
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < d; ++i)
        if (q[i] > 0.0) support.push_back(i);

    const auto objective = [&](const std::vector<long>& counts) {
        double total = 0.0;
        for (std::size_t s = 0; s < support.size(); ++s) {
            const std::size_t i = support[s];
            const double h = static_cast<double>(counts[s]) / static_cast<double>(steps);
            const double dz = h - zw[i];
            const double dp = h - pw[i];
            total += (wv * dz * dz + (1.0 - wv) * dp * dp) / q[i];
        }
        return total;
    };

    std::vector<long> counts(support.size(), 0);
    std::vector<long> best_counts;
    double best = std::numeric_limits<double>::infinity();

    const std::function<void(std::size_t, long)> recurse = [&](std::size_t axis,
                                                               long remaining) {
        if (axis + 1 == support.size()) {
            counts[axis] = remaining;
            const double value = objective(counts);
            if (value < best) {
                best = value;
                best_counts = counts;
            }
            return;
        }
        for (long c = 0; c <= remaining; ++c) {
            counts[axis] = c;
            recurse(axis + 1, remaining - c);
        }
    };
    recurse(0, steps);

    std::vector<double> weights(d, 0.0);
    for (std::size_t s = 0; s < support.size(); ++s)
        weights[support[s]] =
            static_cast<double>(best_counts[s]) / static_cast<double>(steps);
    return beliefs::FiniteMeasure(p.outcomes(), std::move(weights));
}

AbsorptionSolve absorption_linear_solve(double p,
                                        const social_learning::CascadeThreshold& k_star) {
    const int k = k_star.value();  // throws if infinite
    const int m = 2 * k - 1;       // interior states -k+1 .. k-1

    // Tridiagonal (I - Q) with sub = -(1-p), diag = 1, super = -p, solved
    // by the Thomas algorithm for two right-hand sides.
    const auto thomas = [&](std::vector<double> rhs) {
        std::vector<double> diag(static_cast<std::size_t>(m), 1.0);
        std::vector<double> super(static_cast<std::size_t>(m), -p);
        const double sub = -(1.0 - p);
        for (int i = 1; i < m; ++i) {
            const double factor = sub / diag[static_cast<std::size_t>(i - 1)];
            diag[static_cast<std::size_t>(i)] -=
                factor * super[static_cast<std::size_t>(i - 1)];
            rhs[static_cast<std::size_t>(i)] -=
                factor * rhs[static_cast<std::size_t>(i - 1)];
        }
        std::vector<double> x(static_cast<std::size_t>(m));
        x[static_cast<std::size_t>(m - 1)] =
            rhs[static_cast<std::size_t>(m - 1)] / diag[static_cast<std::size_t>(m - 1)];
        for (int i = m - 2; i >= 0; --i)
            x[static_cast<std::size_t>(i)] =
                (rhs[static_cast<std::size_t>(i)] -
                 super[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i + 1)]) /
                diag[static_cast<std::size_t>(i)];
        return x;
    };

    std::vector<double> hit_rhs(static_cast<std::size_t>(m), 0.0);
    hit_rhs[static_cast<std::size_t>(m - 1)] = p;  // step from k-1 up to +k
    const auto hit = thomas(std::move(hit_rhs));

    const auto times = thomas(std::vector<double>(static_cast<std::size_t>(m), 1.0));

    return AbsorptionSolve{hit[static_cast<std::size_t>(k - 1)],
                           times[static_cast<std::size_t>(k - 1)]};
}

}  // namespace aggregatio::oracles

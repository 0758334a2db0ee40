#include "aggregatio/verification.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "aggregatio/binomial.hpp"
#include "aggregatio/oracles.hpp"
#include "aggregatio/rng.hpp"

namespace aggregatio::verification {

namespace {

using namespace aggregatio;
namespace cjt = condorcet;
namespace slm = social_learning;

struct Battery {
    Level level;
    std::vector<CheckResult> results;

    bool full() const { return level == Level::Full; }

    void run(const std::string& name, const std::function<void(std::ostringstream&)>& body) {
        const auto start = std::chrono::steady_clock::now();
        std::ostringstream detail;
        bool pass = true;
        try {
            body(detail);
        } catch (const std::exception& e) {
            pass = false;
            detail << "exception: " << e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::string text = detail.str();
        if (text.find("FAIL") != std::string::npos) pass = false;
        results.push_back(CheckResult{name, pass, text, seconds});
    }
};

void expect(std::ostringstream& out, bool condition, const std::string& what) {
    if (!condition) out << "FAIL: " << what << "; ";
}

void expect_near(std::ostringstream& out, double actual, double want, double tol,
                 const std::string& what) {
    if (!(std::abs(actual - want) <= tol))
        out << "FAIL: " << what << " got " << actual << " want " << want
            << " tol " << tol << "; ";
}

std::vector<double> random_simplex(rng::CounterRng& gen, std::size_t d) {
    std::vector<double> w(d);
    double total = 0.0;
    for (auto& x : w) {
        x = 0.05 + gen.uniform();
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

std::vector<std::string> labels(std::size_t d) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < d; ++i) out.push_back(std::string(1, char('a' + i)));
    return out;
}

// ---------------------------------------------------------------------
// beliefs

void check_mix_minimizes(Battery& b) {
    b.run("beliefs.mix_minimizes_dissonance", [&](std::ostringstream& out) {
        rng::CounterRng gen(2024, 0);
        const int triples = b.full() ? 20 : 6;
        for (int t = 0; t < triples; ++t) {
            gen.start_sample(static_cast<std::uint64_t>(t));
            const std::size_t d = 2 + static_cast<std::size_t>(gen.uniform() * 3.0);
            const auto names = labels(d);
            const beliefs::FiniteMeasure p(names, random_simplex(gen, d));
            const beliefs::FiniteMeasure pz(names, random_simplex(gen, d));
            const MotivationWeight w(gen.uniform());
            const auto mix = beliefs::motivated_mix(p, pz, w);
            const auto grid = oracles::grid_minimize_dissonance(p, pz, w, 0.01);
            for (std::size_t i = 0; i < d; ++i)
                expect(out, std::abs(grid.weight(i) - mix.weight(i)) <= 0.01 + 1e-9,
                       "grid minimizer more than one cell from the mixture");
            expect(out, beliefs::dissonance(mix, p, pz, w) <=
                            beliefs::dissonance(grid, p, pz, w) + 1e-12,
                   "mixture dissonance above grid minimum");
        }
    });
}

void check_conditioning(Battery& b) {
    b.run("beliefs.conditioning_chain", [&](std::ostringstream& out) {
        const auto names = labels(4);
        const beliefs::FiniteMeasure p(names, {0.1, 0.2, 0.3, 0.4});
        const std::vector<std::string> outer = {"a", "b", "c"};
        const std::vector<std::string> inner = {"b", "c"};
        const auto chained =
            beliefs::bayes_condition(beliefs::bayes_condition(p, outer), inner);
        const auto direct = beliefs::bayes_condition(p, inner);
        for (std::size_t i = 0; i < 4; ++i)
            expect_near(out, chained.weight(i), direct.weight(i), 1e-12,
                        "nested conditioning vs intersection");
    });
}

void check_mix_affine(Battery& b) {
    b.run("beliefs.mix_affine_in_w", [&](std::ostringstream& out) {
        const auto names = labels(3);
        const beliefs::FiniteMeasure p(names, {0.2, 0.5, 0.3});
        const beliefs::FiniteMeasure pz(names, {0.7, 0.1, 0.2});
        const auto at0 = beliefs::motivated_mix(p, pz, MotivationWeight(0.0));
        const auto at1 = beliefs::motivated_mix(p, pz, MotivationWeight(1.0));
        const auto mid = beliefs::motivated_mix(p, pz, MotivationWeight(0.5));
        for (std::size_t i = 0; i < 3; ++i)
            expect_near(out, mid.weight(i), 0.5 * (at0.weight(i) + at1.weight(i)),
                        1e-12, "midpoint mix");
    });
}

// ---------------------------------------------------------------------
// condorcet

void check_equilibrium_fixed_point(Battery& b) {
    b.run("cjt.equilibrium_fixed_point", [&](std::ostringstream& out) {
        const double q_step = b.full() ? 0.05 : 0.1;
        const double w_step = b.full() ? 0.1 : 0.3;
        const long n_max = b.full() ? 12 : 6;
        for (double q_a = 0.55; q_a < 0.901; q_a += q_step)
            for (double q_b = 0.55; q_b <= q_a + 1e-12; q_b += q_step)
                for (double w = 0.0; w < 0.901; w += w_step)
                    for (long n = 1; n <= n_max; ++n) {
                        const cjt::JuryParams params(q_a, std::min(q_b, q_a),
                                                     MotivationWeight(w), n);
                        const auto strat = cjt::equilibrium(params);
                        const bool mixing = strat.sigma_a < 1.0;
                        const auto resp_a =
                            cjt::best_response(params, strat, Signal::A);
                        const auto resp_b =
                            cjt::best_response(params, strat, Signal::B);
                        if (mixing) {
                            expect(out, resp_a == cjt::VoteResponse::Indifferent,
                                   "mixing a-type not indifferent");
                            const auto piv = cjt::pivotal_probs(params, strat);
                            expect_near(out, piv.ratio(), cjt::psi(params), 1e-9,
                                        "pivotal ratio vs indifference threshold");
                        } else {
                            expect(out, resp_a != cjt::VoteResponse::VoteB,
                                   "sincere a-type strictly prefers B");
                        }
                        expect(out, resp_b != cjt::VoteResponse::VoteA,
                               "b-type strictly prefers A at equilibrium");
                    }
    });
}

void check_n_star(Battery& b) {
    b.run("cjt.n_star_matches_mixing_range", [&](std::ostringstream& out) {
        for (double q_a : {0.6, 0.7, 0.8, 0.9})
            for (double q_b : {0.55, 0.6, 0.7})
                for (double w : {0.0, 0.3, 0.5, 0.8}) {
                    if (q_b > q_a) continue;
                    if (q_a == q_b) continue;
                    const cjt::JuryParams params(q_a, q_b, MotivationWeight(w), 1);
                    // Independent scan: the smallest n whose mixing
                    // probability lies in [0, 1].
                    const double psi = cjt::psi(params);
                    long scan = -1;
                    for (long n = 1; n <= 200; ++n) {
                        const double t = std::pow(psi, 1.0 / static_cast<double>(n));
                        const double sigma =
                            (q_a - t * (1 - q_b)) /
                            (q_a * q_a - t * (1 - q_b) * (1 - q_b));
                        if (sigma >= 0.0 && sigma <= 1.0) {
                            scan = n;
                            break;
                        }
                    }
                    const auto onset = cjt::n_star(params);
                    expect(out, onset.has_value() && scan == *onset,
                           "mixing onset differs from direct scan");
                }
        expect(out,
               !cjt::n_star(cjt::JuryParams(0.7, 0.7, MotivationWeight(0.3), 1))
                    .has_value(),
               "equal accuracies must never mix");
    });
}

void check_welfare_enumeration(Battery& b) {
    b.run("cjt.welfare_matches_enumeration", [&](std::ostringstream& out) {
        const long n_max = b.full() ? 6 : 4;
        for (double q_a : {0.6, 0.8})
            for (double q_b : {0.6, 0.55})
                for (double w : {0.0, 0.4})
                    for (long n = 1; n <= n_max; ++n) {
                        if (q_b > q_a) continue;
                        const cjt::JuryParams params(q_a, q_b, MotivationWeight(w), n);
                        const auto strat = cjt::equilibrium(params);
                        for (State state : {State::A, State::B})
                            expect_near(out, cjt::welfare_exact(params, state),
                                        oracles::enumerate_cjt(params, strat, state),
                                        1e-12, "welfare vs profile enumeration");
                    }
    });
}

void check_welfare_limit(Battery& b) {
    b.run("cjt.welfare_limit_and_monotone_n", [&](std::ostringstream& out) {
        double prev = 0.0;
        for (long n = 10; n <= 200; n += 10) {
            const cjt::JuryParams params(0.6, 0.6, MotivationWeight(0.0), n);
            const double w = cjt::welfare_exact(params, State::A);
            expect(out, w > prev, "welfare not increasing in n");
            prev = w;
        }
        expect(out, prev >= 0.99, "welfare at n=200 below 0.99");
    });
}

void check_monotone_in_w(Battery& b) {
    b.run("cjt.welfare_monotone_in_w", [&](std::ostringstream& out) {
        const long n = b.full() ? 20 : 10;
        double prev_a = -1.0;
        double prev_b = 2.0;
        double prev_sigma = -1.0;
        for (double w = 0.0; w < 0.951; w += 0.05) {
            const cjt::JuryParams params(0.8, 0.6, MotivationWeight(w), n);
            const auto onset = cjt::n_star(params);
            if (!onset || n < *onset) continue;  // mixing regime only
            const double wa = cjt::welfare_exact(params, State::A);
            const double wb = cjt::welfare_exact(params, State::B);
            const double sigma = cjt::equilibrium(params).sigma_a;
            if (prev_a >= 0.0) {
                expect(out, wa > prev_a, "state-A welfare not increasing in w");
                expect(out, wb < prev_b, "state-B welfare not decreasing in w");
                expect(out, sigma >= prev_sigma, "mixing weight not monotone in w");
            }
            prev_a = wa;
            prev_b = wb;
            prev_sigma = sigma;
        }
        for (double w : {0.0, 0.3, 0.7}) {
            const cjt::JuryParams params(0.7, 0.7, MotivationWeight(w), n);
            expect_near(out, cjt::welfare_exact(params, State::A),
                        cjt::welfare_exact(
                            cjt::JuryParams(0.7, 0.7, MotivationWeight(0.0), n),
                            State::A),
                        1e-12, "equal accuracies: welfare constant in w");
        }
    });
}

void check_bracket(Battery& b) {
    b.run("cjt.bracket_contains_tail", [&](std::ostringstream& out) {
        rng::CounterRng gen(7, 0);
        const int trials = b.full() ? 200 : 50;
        for (int t = 0; t < trials; ++t) {
            gen.start_sample(static_cast<std::uint64_t>(t));
            const long n = 2 + static_cast<long>(gen.uniform() * 1998.0);
            const double p = 0.2 + 0.75 * gen.uniform();
            double alpha = p * (0.15 + 0.8 * gen.uniform());
            if (alpha * static_cast<double>(n) < 1.0) alpha = 1.5 / static_cast<double>(n);
            if (!(alpha < p)) continue;
            const auto bracket = cjt::binomial_tail_bracket(n, p, alpha);
            const long k = static_cast<long>(std::floor(alpha * static_cast<double>(n)));
            const double exact = stats::binomial_lower_tail(n, k, p);
            expect(out, bracket.lower <= exact && exact <= bracket.upper,
                   "exact tail escapes the bracket at n=" + std::to_string(n));
            expect(out, bracket.lower <= bracket.upper, "inverted bracket");
        }
        // At alpha = 1/2 the exponential factor collapses to the geometric
        // base (4 p (1-p))^(n/2); this identity drives the rate diagnostics.
        for (double p = 0.55; p < 0.96; p += 0.05)
            for (long n : {10L, 100L, 500L}) {
                const double lhs =
                    std::exp(-static_cast<double>(n) * stats::bernoulli_kl(0.5, p));
                const double rhs =
                    std::pow(4.0 * p * (1.0 - p), static_cast<double>(n) / 2.0);
                expect(out, std::abs(lhs - rhs) <= 1e-12 * rhs,
                       "half-alpha identity broken");
            }
    });
}

void check_rate_diagnostic(Battery& b) {
    b.run("cjt.rate_ratio_bounded", [&](std::ostringstream& out) {
        std::vector<long> ns;
        for (long n = 50; n <= (b.full() ? 400 : 200); n += 50) ns.push_back(n);
        const struct {
            double q_a, q_b, w;
        } settings[] = {{0.6, 0.6, 0.0}, {0.8, 0.6, 0.0}, {0.7, 0.55, 0.3}};
        for (const auto& s : settings) {
            const cjt::JuryParams base(s.q_a, s.q_b, MotivationWeight(s.w), 1);
            const auto diag = cjt::rate_diagnostic(base, State::A, ns);
            expect(out, diag.within_factor_of_median(3.0),
                   "rate ratios drift beyond factor 3 of median");
        }
        // Motivation does not move the geometric base.
        const cjt::JuryParams w0(0.8, 0.6, MotivationWeight(0.0), 1);
        const cjt::JuryParams w5(0.8, 0.6, MotivationWeight(0.5), 1);
        const double g0 = cjt::limit_effective_vote_prob(w0, State::A);
        const double g5 = cjt::limit_effective_vote_prob(w5, State::A);
        expect_near(out, 4 * g0 * (1 - g0), 4 * g5 * (1 - g5), 1e-12,
                    "geometric base depends on w");
        expect(out, cjt::rate_ratio_entry(-INFINITY, 50, 0.96) == 0.0,
               "degenerate welfare guard");
    });
}

// ---------------------------------------------------------------------
// social learning

void check_threshold_search(Battery& b) {
    b.run("slm.threshold_matches_search", [&](std::ostringstream& out) {
        const double p_step = b.full() ? 0.05 : 0.1;
        const double w_step = 0.05;
        for (double p = 0.55; p < 0.951; p += p_step)
            for (double w = 0.0; w < 0.451; w += w_step) {
                const auto k_star = slm::cascade_threshold(p, MotivationWeight(w));
                int search = -1;
                for (int k = 2; k <= 500; ++k)
                    if (slm::decision(p, MotivationWeight(w), -k, Signal::A) ==
                        Choice::B) {
                        search = k;
                        break;
                    }
                expect(out, k_star.is_finite() && search == k_star.value(),
                       "barrier formula disagrees with decision-rule search at p=" +
                           std::to_string(p) + " w=" + std::to_string(w));
            }
        expect(out, !slm::cascade_threshold(0.75, MotivationWeight(0.5)).is_finite(),
               "w >= 1/2 must give an infinite barrier");
    });
}

void check_posterior_bayes(Battery& b) {
    b.run("slm.posterior_matches_bayes_enumeration", [&](std::ostringstream& out) {
        // Enumerate signal strings with a given net count and compare the
        // w = 0 posterior to the exact Bayes computation.
        for (double p : {0.6, 0.75})
            for (long k : {-2L, -1L, 0L, 1L, 3L})
                for (long m : {std::abs(k), std::abs(k) + 4}) {
                    if ((m - k) % 2 != 0) continue;
                    double joint_a = 0.0;
                    double joint_b = 0.0;
                    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
                        long net = 0;
                        int ups = 0;
                        for (long i = 0; i < m; ++i)
                            if ((mask >> i) & 1u) {
                                net += 1;
                                ++ups;
                            } else {
                                net -= 1;
                            }
                        if (net != k) continue;
                        joint_a += std::pow(p, ups) * std::pow(1 - p, m - ups);
                        joint_b += std::pow(1 - p, ups) * std::pow(p, m - ups);
                    }
                    if (joint_a + joint_b == 0.0) continue;
                    // Own signal a multiplies the likelihoods once more.
                    const double bayes =
                        joint_a * p / (joint_a * p + joint_b * (1 - p));
                    expect_near(
                        out,
                        slm::motivated_posterior(p, MotivationWeight(0.0), k, Signal::A),
                        bayes, 1e-12, "bayes posterior from enumeration");
                }
    });
}

void check_absorption(Battery& b) {
    b.run("slm.absorption_matches_solver", [&](std::ostringstream& out) {
        for (double p : {0.55, 0.6, 0.75, 0.9})
            for (int k = 2; k <= 8; ++k) {
                const slm::CascadeThreshold k_star(k);
                const auto solved = oracles::absorption_linear_solve(p, k_star);
                expect_near(out, slm::absorption_prob(p, k_star), solved.prob_up,
                            1e-12, "absorption probability vs linear solve");
                expect_near(out, slm::expected_stopping_time(p, k_star),
                            solved.expected_time, 1e-9,
                            "expected onset vs linear solve");
            }
    });
}

void check_slm_welfare_enumeration(Battery& b) {
    b.run("slm.welfare_matches_enumeration", [&](std::ostringstream& out) {
        const long n_max = b.full() ? 16 : 10;
        for (double p : {0.6, 0.75, 0.9})
            for (int k : {2, 3, 4}) {
                const auto interval = slm::w_interval_for_threshold(p, k);
                const double w = 0.5 * (interval.lo + interval.hi);
                for (long n : {1L, 4L, n_max}) {
                    const auto enumd = oracles::enumerate_slm(p, MotivationWeight(w), n);
                    expect_near(out, slm::welfare_finite_exact(p, MotivationWeight(w), n),
                                enumd.welfare, 1e-12, "welfare vs sequence replay");
                }
            }
        // No-cascade regime: every agent follows their own signal.
        for (double p : {0.6, 0.9}) {
            const auto enumd = oracles::enumerate_slm(p, MotivationWeight(0.6), 12);
            expect_near(out, enumd.welfare, p, 1e-12, "w >= 1/2 welfare is p");
            expect_near(out, enumd.cascade_up + enumd.cascade_down, 0.0, 0.0,
                        "cascade in the no-cascade regime");
        }
    });
}

void check_stopping_pmf(Battery& b) {
    b.run("slm.stopping_pmf_matches_enumeration", [&](std::ostringstream& out) {
        const slm::CascadeThreshold two(2);
        const auto pmf = slm::stopping_time_pmf(0.75, two, 10);
        for (const auto& [n, mass] : pmf) {
            if (n % 2 == 1) {
                expect(out, mass == 0.0, "odd-time absorption with an even barrier");
            } else {
                const double want = 0.625 * std::pow(0.375, n / 2 - 1);
                expect_near(out, mass, want, 1e-12, "geometric onset pmf");
            }
        }
        // Cumulative onset mass vs the exhaustive replay.
        for (double p : {0.6, 0.75})
            for (int k : {2, 3}) {
                const auto interval = slm::w_interval_for_threshold(p, k);
                const double w = 0.5 * (interval.lo + interval.hi);
                const long n = 12;
                const auto enumd = oracles::enumerate_slm(p, MotivationWeight(w), n);
                const auto dist = slm::stopping_time_pmf(p, slm::CascadeThreshold(k), n);
                double total = 0.0;
                for (const auto& e : dist) total += e.second;
                expect_near(out, total, enumd.cascade_up + enumd.cascade_down, 1e-12,
                            "cumulative pmf vs replay");
                expect_near(out, total,
                            1.0 - slm::stopping_time_tail(p, slm::CascadeThreshold(k), n),
                            1e-12, "pmf sums to one minus tail");
            }
    });
}

void check_spectral(Battery& b) {
    b.run("slm.spectral_reconstruction_and_tail", [&](std::ostringstream& out) {
        for (int k = 2; k <= 6; ++k) {
            for (double p : {0.6, 0.75, 0.9}) {
                const slm::CascadeThreshold k_star(k);
                const auto spec = slm::spectral_decomposition(p, k_star);
                expect(out, spec.residual <= 1e-8, "reconstruction residual");
                for (int i = 0; i + 1 < spec.eigenvalues.size(); ++i)
                    expect(out, spec.eigenvalues(i) >= spec.eigenvalues(i + 1) - 1e-15,
                           "eigenvalues not nonincreasing");
                expect(out,
                       spec.eigenvalues.maxCoeff() <= 4 * p * (1 - p) + 1e-15 &&
                           spec.eigenvalues.minCoeff() >= -1e-15,
                       "eigenvalue range");
                for (long n : {0L, 1L, 7L, 20L, b.full() ? 100L : 40L}) {
                    expect_near(out, slm::stopping_time_tail(p, k_star, n),
                                slm::stopping_time_tail_spectral(p, k_star, n), 1e-9,
                                "matrix-power tail vs eigensystem tail");
                }
            }
        }
    });
}

void check_welfare_curve(Battery& b) {
    b.run("slm.welfare_curve_shape", [&](std::ostringstream& out) {
        const double p = 0.75;
        double prev = 0.0;
        for (double w = 0.0; w < 0.4999; w += 0.01) {
            const double value = slm::welfare_infinite(p, MotivationWeight(w));
            expect(out, value >= prev - 1e-15, "curve not nondecreasing below 1/2");
            expect(out, value > p, "cascade welfare not above p");
            prev = value;
        }
        for (double w = 0.5; w < 0.601; w += 0.01)
            expect_near(out, slm::welfare_infinite(p, MotivationWeight(w)), p, 0.0,
                        "no-cascade welfare");
        // Jumps happen exactly at the interval boundaries.
        const auto i2 = slm::w_interval_for_threshold(p, 2);
        expect_near(out, slm::welfare_infinite(p, MotivationWeight(i2.hi - 1e-9)),
                    slm::absorption_prob(p, slm::CascadeThreshold(2)), 0.0,
                    "value on the k=2 interval");
        expect_near(out, slm::welfare_infinite(p, MotivationWeight(i2.hi)),
                    slm::absorption_prob(p, slm::CascadeThreshold(3)), 0.0,
                    "value at the k=3 boundary");
    });
}

void check_optimal_w(Battery& b) {
    b.run("slm.optimal_w_basics", [&](std::ostringstream& out) {
        const auto best = slm::optimal_w(0.75, 4);
        expect(out, best.best_k.is_finite() && best.best_k.value() == 2,
               "optimal barrier at n=4");
        expect_near(out, best.welfare, 0.796875, 1e-12, "optimal welfare at n=4");
        expect_near(out, best.interval.lo, 0.0, 0.0, "optimal interval start");
        expect_near(out, best.interval.hi, 1.0 / 3.0, 1e-12, "optimal interval end");
        double prev_sup = 0.0;
        for (long n : {4L, 16L, 64L, 256L}) {
            const auto opt = slm::optimal_w(0.75, n);
            expect(out, opt.w_sup < 0.5, "optimal weight reaches 1/2");
            expect(out, opt.w_sup >= prev_sup, "optimal weight not nondecreasing in n");
            prev_sup = opt.w_sup;
        }
    });
}

void check_walk_conservation(Battery& b) {
    b.run("slm.walk_mass_conservation", [&](std::ostringstream& out) {
        const long steps = b.full() ? 10000 : 2000;
        for (int k : {2, 5}) {
            auto dist = slm::walk_init(0.6, slm::CascadeThreshold(k));
            for (long i = 0; i < steps; ++i) dist = slm::walk_step(dist);
            expect_near(out, dist.total_mass(), 1.0, 1e-12, "walk mass drift");
        }
    });
}

// ---------------------------------------------------------------------
// monte carlo

void check_mc(Battery& b) {
    b.run("mc.deterministic_and_calibrated", [&](std::ostringstream& out) {
        const std::uint64_t samples = b.full() ? 100000 : 20000;
        const auto a = oracles::mc_slm(0.75, MotivationWeight(0.0), 500, samples, 42, 4, 1);
        const auto c = oracles::mc_slm(0.75, MotivationWeight(0.0), 500, samples, 42, 4, 4);
        expect(out, a.mean == c.mean && a.std_error == c.std_error,
               "thread count changed the estimate");
        expect(out, std::abs(a.mean - 0.9) <= 3.0 * a.std_error,
               "slm estimate off the absorption target by more than 3 SE");

        const cjt::JuryParams params(0.6, 0.6, MotivationWeight(0.0), 1);
        const auto strat = cjt::equilibrium(params);
        const auto est = oracles::mc_cjt(params, strat, State::A, samples, 11, 2, 2);
        const double target = oracles::enumerate_cjt(params, strat, State::A);
        expect(out, std::abs(est.mean - target) <= 3.0 * est.std_error,
               "cjt estimate off the enumeration target by more than 3 SE");
    });
}

}  // namespace

std::vector<CheckResult> run_battery(Level level) {
    Battery b{level, {}};
    check_mix_minimizes(b);
    check_conditioning(b);
    check_mix_affine(b);
    check_equilibrium_fixed_point(b);
    check_n_star(b);
    check_welfare_enumeration(b);
    check_welfare_limit(b);
    check_monotone_in_w(b);
    check_bracket(b);
    check_rate_diagnostic(b);
    check_threshold_search(b);
    check_posterior_bayes(b);
    check_absorption(b);
    check_slm_welfare_enumeration(b);
    check_stopping_pmf(b);
    check_spectral(b);
    check_welfare_curve(b);
    check_optimal_w(b);
    check_walk_conservation(b);
    check_mc(b);
    return std::move(b.results);
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace aggregatio::verification

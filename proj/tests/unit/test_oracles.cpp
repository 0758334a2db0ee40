#include <cmath>

#include "doctest.h"

#include "aggregatio/oracles.hpp"
#include "aggregatio/rng.hpp"

using namespace aggregatio;
using namespace aggregatio::oracles;

TEST_SUITE_BEGIN("oracles");

TEST_CASE("counter rng known-answer vector") {
    // Reference output for the all-zero counter and key (Random123 kat):
    // first block words 6627e8d5 e169c58d.
    rng::CounterRng zero(0, 0);
    zero.start_sample(0);
    CHECK(zero.next_u64() == 0x6627e8d5e169c58dULL);
}

TEST_CASE("counter rng substreams") {
    rng::CounterRng a(123, 0);
    rng::CounterRng b(123, 0);
    a.start_sample(5);
    b.start_sample(5);
    for (int i = 0; i < 16; ++i) CHECK(a.uniform() == b.uniform());

    // Different shards and samples give different streams.
    rng::CounterRng c(123, 1);
    c.start_sample(5);
    a.start_sample(5);
    bool identical = true;
    for (int i = 0; i < 16; ++i)
        if (a.uniform() != c.uniform()) identical = false;
    CHECK(!identical);

    // Uniforms land in [0, 1) and look roughly uniform.
    rng::CounterRng d(7, 0);
    d.start_sample(0);
    double total = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = d.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        total += u;
    }
    CHECK(total / 10000.0 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("cjt enumeration") {
    const condorcet::JuryParams sym(0.6, 0.6, MotivationWeight(0.0), 1);
    CHECK(enumerate_cjt(sym, condorcet::JuryStrategy::sincere(), State::A) ==
          doctest::Approx(0.648).epsilon(1e-14));

    // Degenerate strategy: everyone votes A.
    CHECK(enumerate_cjt(sym, condorcet::JuryStrategy(1.0, 0.0), State::A) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const condorcet::JuryParams params(0.8, 0.6, MotivationWeight(0.0), 2);
    const auto strat = condorcet::equilibrium(params);
    CHECK(std::abs(enumerate_cjt(params, strat, State::A) -
                   condorcet::welfare_exact(params, State::A)) <= 1e-12);
    CHECK(std::abs(enumerate_cjt(params, strat, State::B) -
                   condorcet::welfare_exact(params, State::B)) <= 1e-12);

    const condorcet::JuryParams huge(0.8, 0.6, MotivationWeight(0.0), 11);
    CHECK_THROWS_AS(enumerate_cjt(huge, strat, State::A), TooLarge);
}

TEST_CASE("slm enumeration") {
    const auto four = enumerate_slm(0.75, MotivationWeight(0.0), 4);
    CHECK(four.welfare == doctest::Approx(0.796875).epsilon(1e-14));

    const auto two = enumerate_slm(0.75, MotivationWeight(0.0), 2);
    CHECK(two.cascade_up == doctest::Approx(0.5625).epsilon(1e-14));
    CHECK(two.cascade_down == doctest::Approx(0.0625).epsilon(1e-14));

    const auto none = enumerate_slm(0.75, MotivationWeight(0.6), 9);
    CHECK(none.welfare == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(none.cascade_up == 0.0);
    CHECK(none.cascade_down == 0.0);

    CHECK_THROWS_AS(enumerate_slm(0.75, MotivationWeight(0.0), 21), TooLarge);

    // Agreement with the walk DP across regimes and barriers.
    for (double p : {0.6, 0.9})
        for (double w : {0.0, 0.3, 0.45})
            for (long n : {1L, 7L, 14L}) {
                const auto e = enumerate_slm(p, MotivationWeight(w), n);
                CHECK(std::abs(e.welfare -
                               social_learning::welfare_finite_exact(
                                   p, MotivationWeight(w), n)) <= 1e-12);
            }
}

TEST_CASE("monte carlo determinism and calibration") {
    const auto first = mc_slm(0.75, MotivationWeight(0.0), 500, 20000, 42, 4, 1);
    const auto second = mc_slm(0.75, MotivationWeight(0.0), 500, 20000, 42, 4, 4);
    CHECK(first.mean == second.mean);
    CHECK(first.std_error == second.std_error);
    CHECK(first.n_samples == 20000);
    CHECK(first.seed == 42);

    // A different shard split is a different (equally valid) estimator.
    const auto other = mc_slm(0.75, MotivationWeight(0.0), 500, 20000, 42, 5, 1);
    CHECK(other.mean != first.mean);

    CHECK(std::abs(first.mean - 0.9) <= 3.0 * first.std_error);

    const condorcet::JuryParams params(0.6, 0.6, MotivationWeight(0.0), 1);
    const auto strat = condorcet::equilibrium(params);
    const auto est = mc_cjt(params, strat, State::A, 20000, 7, 2, 2);
    CHECK(std::abs(est.mean - 0.648) <= 3.0 * est.std_error);
}

TEST_CASE("grid dissonance minimizer") {
    const std::vector<std::string> ab = {"A", "B"};
    const beliefs::FiniteMeasure p(ab, {0.5, 0.5});
    const beliefs::FiniteMeasure pz(ab, {1.0, 0.0});

    const auto at0 = grid_minimize_dissonance(p, pz, MotivationWeight(0.0), 0.01);
    CHECK(at0.weight(0) == doctest::Approx(0.5).epsilon(1e-12));
    const auto at1 = grid_minimize_dissonance(p, pz, MotivationWeight(1.0), 0.01);
    CHECK(at1.weight(0) == doctest::Approx(1.0).epsilon(1e-12));
    const auto mid = grid_minimize_dissonance(p, pz, MotivationWeight(0.3), 0.01);
    CHECK(std::abs(mid.weight(0) - 0.65) <= 0.01 + 1e-12);

    const auto names5 = std::vector<std::string>{"a", "b", "c", "d", "e"};
    const beliefs::FiniteMeasure p5 = beliefs::FiniteMeasure::uniform(names5);
    CHECK_THROWS_AS(grid_minimize_dissonance(p5, p5, MotivationWeight(0.5), 0.01),
                    TooLarge);
    CHECK_THROWS_AS(grid_minimize_dissonance(p, pz, MotivationWeight(0.5), 0.05),
                    TooLarge);
}

TEST_CASE("absorption linear solve") {
    const auto solved = absorption_linear_solve(0.75, social_learning::CascadeThreshold(2));
    CHECK(std::abs(solved.prob_up - 0.9) <= 1e-12);
    CHECK(std::abs(solved.expected_time - 3.2) <= 1e-12);

    // Near-symmetric limit.
    const auto sym = absorption_linear_solve(0.5 + 1e-6, social_learning::CascadeThreshold(3));
    CHECK(std::abs(sym.prob_up - 0.5) <= 1e-5);

    // Monotone in the barrier.
    CHECK(absorption_linear_solve(0.75, social_learning::CascadeThreshold(3)).prob_up >
          absorption_linear_solve(0.75, social_learning::CascadeThreshold(2)).prob_up);

    // Matches the closed form across a parameter sweep.
    for (double p : {0.55, 0.7, 0.85})
        for (int k = 2; k <= 9; ++k) {
            const auto s = absorption_linear_solve(p, social_learning::CascadeThreshold(k));
            CHECK(std::abs(s.prob_up - social_learning::absorption_prob(
                                           p, social_learning::CascadeThreshold(k))) <=
                  1e-12);
        }
}

TEST_SUITE_END();

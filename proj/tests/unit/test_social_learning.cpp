#include <cmath>

#include "doctest.h"

#include "aggregatio/oracles.hpp"
#include "aggregatio/social_learning.hpp"

using namespace aggregatio;
using namespace aggregatio::social_learning;

namespace {
MotivationWeight mw(double w) { return MotivationWeight(w); }
}

TEST_SUITE_BEGIN("social_learning");

TEST_CASE("cascade threshold formula") {
    CHECK(cascade_threshold(0.75, mw(0.0)) == CascadeThreshold(2));
    CHECK(cascade_threshold(0.75, mw(0.4)) == CascadeThreshold(3));
    CHECK(cascade_threshold(0.75, mw(0.49)) == CascadeThreshold(5));
    CHECK(!cascade_threshold(0.75, mw(0.5)).is_finite());
    CHECK(!cascade_threshold(0.75, mw(0.9)).is_finite());

    // Nondecreasing in w.
    int prev = 2;
    for (double w = 0.0; w < 0.5; w += 0.01) {
        const auto k = cascade_threshold(0.75, mw(w));
        REQUIRE(k.is_finite());
        CHECK(k.value() >= prev);
        prev = k.value();
    }

    // Direct-search oracle: smallest k >= 2 whose barrier decision flips.
    for (double p : {0.55, 0.65, 0.75, 0.9})
        for (double w : {0.0, 0.1, 0.25, 0.4, 0.45}) {
            int search = -1;
            for (int k = 2; k <= 1000; ++k)
                if (motivated_posterior(p, mw(w), -k, Signal::A) < 0.5) {
                    search = k;
                    break;
                }
            CHECK(cascade_threshold(p, mw(w)).value() == search);
        }
}

TEST_CASE("threshold interval boundaries") {
    const auto i2 = w_interval_for_threshold(0.75, 2);
    CHECK(i2.lo == 0.0);
    CHECK(i2.hi == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(cascade_threshold(0.75, mw(1.0 / 3.0 - 1e-9)) == CascadeThreshold(2));
    CHECK(cascade_threshold(0.75, mw(1.0 / 3.0)) == CascadeThreshold(3));

    // Consecutive intervals abut and cover [0, 1/2).
    for (int k = 2; k <= 10; ++k) {
        const auto cur = w_interval_for_threshold(0.75, k);
        const auto next = w_interval_for_threshold(0.75, k + 1);
        CHECK(cur.hi == doctest::Approx(next.lo).epsilon(1e-15));
        CHECK(cur.hi < 0.5);
        // The formula inverts the threshold on its own interval.
        const double mid = 0.5 * (cur.lo + cur.hi);
        CHECK(cascade_threshold(0.75, mw(mid)).value() == k);
    }
}

TEST_CASE("motivated posterior") {
    CHECK(motivated_posterior(0.75, mw(0.0), 0, Signal::A) ==
          doctest::Approx(0.75).epsilon(1e-15));
    CHECK(motivated_posterior(0.6, mw(1.0), -7, Signal::A) == 1.0);
    CHECK(motivated_posterior(0.75, mw(0.0), -2, Signal::A) ==
          doctest::Approx(0.25).epsilon(1e-13));
    // Complement is the belief in the other state.
    const double in_a = motivated_posterior(0.7, mw(0.3), 1, Signal::B);
    CHECK(in_a >= 0.0);
    CHECK(in_a <= 1.0);
}

TEST_CASE("decision rule") {
    // Exactly indifferent: follows the signal.
    CHECK(decision(0.75, mw(0.0), -1, Signal::A) == Choice::A);
    // At the barrier the contrarian conforms.
    CHECK(decision(0.75, mw(0.0), -2, Signal::A) == Choice::B);
    CHECK(decision(0.75, mw(0.0), 2, Signal::B) == Choice::A);
    // Strong motivation: always follow the signal.
    for (long k = -30; k <= 30; ++k) {
        CHECK(decision(0.8, mw(0.6), k, Signal::A) == Choice::A);
        CHECK(decision(0.8, mw(0.6), k, Signal::B) == Choice::B);
    }
}

TEST_CASE("absorption probability") {
    CHECK(absorption_prob(0.75, CascadeThreshold(2)) ==
          doctest::Approx(0.9).epsilon(1e-14));
    CHECK(absorption_prob(0.75, CascadeThreshold(3)) ==
          doctest::Approx(27.0 / 28.0).epsilon(1e-14));

    double prev = 0.75;  // must exceed p and increase in the barrier
    for (int k = 2; k <= 12; ++k) {
        const double phi = absorption_prob(0.75, CascadeThreshold(k));
        CHECK(phi > prev);
        prev = phi;
    }
    CHECK(absorption_prob(0.75, CascadeThreshold(60)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("walk evolution") {
    const CascadeThreshold two(2);
    auto dist = walk_init(0.75, two);
    CHECK(dist.step() == 0);
    CHECK(dist.mass(0) == 1.0);
    CHECK(dist.expected_correct() == 0.0);

    dist = walk_step(dist);
    CHECK(dist.step() == 1);
    CHECK(dist.mass(1) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(dist.mass(-1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(dist.expected_correct() == doctest::Approx(0.75).epsilon(1e-15));

    dist = walk_step(dist);
    CHECK(dist.absorbed_plus() == doctest::Approx(0.5625).epsilon(1e-15));
    CHECK(dist.absorbed_minus() == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(dist.mass(0) == doctest::Approx(0.375).epsilon(1e-15));

    for (int i = 0; i < 500; ++i) dist = walk_step(dist);
    CHECK(dist.total_mass() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(dist.absorbed_plus() == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("infinite welfare") {
    CHECK(welfare_infinite(0.75, mw(0.0)) == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(welfare_infinite(0.75, mw(0.6)) == 0.75);
    CHECK(welfare_infinite(0.75, mw(0.5)) == 0.75);
    // Nondecreasing on [0, 1/2), each value above p.
    double prev = 0.0;
    for (double w = 0.0; w < 0.5; w += 0.005) {
        const double value = welfare_infinite(0.75, mw(w));
        CHECK(value >= prev);
        CHECK(value > 0.75);
        prev = value;
    }
}

TEST_CASE("finite welfare") {
    CHECK(welfare_finite_exact(0.75, mw(0.0), 1) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(welfare_finite_exact(0.6, mw(0.7), 37) == 0.6);
    CHECK(welfare_finite_exact(0.75, mw(0.0), 4) ==
          doctest::Approx(0.796875).epsilon(1e-14));

    // Closed-form average of the first four agents at the smallest barrier.
    for (double p = 0.55; p < 0.951; p += 0.05) {
        const double closed = (4 * p * p + 3 * 2 * std::pow(p, 3) * (1 - p) +
                               2 * 4 * p * p * std::pow(1 - p, 2) +
                               2 * p * std::pow(1 - p, 3)) /
                              4.0;
        CHECK(welfare_finite_exact(p, mw(0.0), 4) ==
              doctest::Approx(closed).epsilon(1e-12));
    }

    // Monotone in n and converging to the cascade probability.
    double prev = 0.0;
    for (long n = 4; n <= 200; n += 7) {
        const double w = welfare_finite_exact(0.75, mw(0.0), n);
        CHECK(w >= prev);
        prev = w;
    }
    CHECK(std::abs(welfare_finite_exact(0.75, mw(0.0), 2000) - 0.9) < 1e-3);
}

TEST_CASE("optimal motivation search") {
    const auto best = optimal_w(0.75, 4);
    REQUIRE(best.best_k.is_finite());
    CHECK(best.best_k.value() == 2);
    CHECK(best.welfare == doctest::Approx(0.796875).epsilon(1e-14));
    CHECK(best.interval.lo == 0.0);
    CHECK(best.interval.hi == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(best.tied_ks == std::vector<int>{2});
    CHECK(best.w_sup < 0.5);

    CHECK_THROWS_AS(optimal_w(0.75, 1024, 2), KMaxTooSmall);
    CHECK_THROWS_AS(optimal_w(0.75, 3), InvalidParameter);

    // The optimal barrier grows with the population.
    const auto big = optimal_w(0.75, 1024);
    REQUIRE(big.best_k.is_finite());
    CHECK(big.best_k.value() > best.best_k.value());
    CHECK(big.w_sup > best.w_sup);
    CHECK(big.w_sup < 0.5);
}

TEST_CASE("stopping time pmf and tail") {
    const CascadeThreshold two(2);
    const auto pmf = stopping_time_pmf(0.75, two, 10);
    REQUIRE(pmf.size() == 10);
    for (const auto& [n, mass] : pmf) {
        if (n % 2 == 1)
            CHECK(mass == 0.0);
        else
            CHECK(mass == doctest::Approx(0.625 * std::pow(0.375, n / 2 - 1))
                              .epsilon(1e-13));
    }
    double total = 0.0;
    for (const auto& e : pmf) total += e.second;
    CHECK(total == doctest::Approx(1.0 - stopping_time_tail(0.75, two, 10)).epsilon(1e-13));

    CHECK(stopping_time_tail(0.75, two, 0) == 1.0);
    CHECK(stopping_time_tail(0.75, two, 1) == 1.0);
    CHECK(stopping_time_tail(0.75, two, 2) == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(stopping_time_tail(0.75, two, 3) == doctest::Approx(0.375).epsilon(1e-14));

    // Odd barrier: absorption only at odd times.
    const CascadeThreshold three(3);
    const auto pmf3 = stopping_time_pmf(0.75, three, 9);
    for (const auto& [n, mass] : pmf3) {
        if (n % 2 == 0) CHECK(mass == 0.0);
        if (n == 3)
            CHECK(mass == doctest::Approx(std::pow(0.75, 3) + std::pow(0.25, 3))
                              .epsilon(1e-13));
    }

    // Tail normalized by the dominant eigenvalue stays bounded.
    const double lambda1 = 4 * 0.75 * 0.25 * std::pow(std::cos(M_PI / 6.0), 2);
    double lo = 1e300;
    double hi = 0.0;
    for (long n = 10; n <= 200; n += 10) {
        const double ratio = stopping_time_tail(0.75, three, n) /
                             std::pow(lambda1, static_cast<double>(n) / 2.0);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi <= 3.0 * lo);
}

TEST_CASE("spectral decomposition") {
    const auto spec = spectral_decomposition(0.75, CascadeThreshold(2));
    CHECK(spec.eigenvalues(0) == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(spec.eigenvalues(1) == 0.0);
    CHECK(spec.eigenvalues(2) == 0.0);
    CHECK(spec.residual <= 1e-8);

    // Successive tail ratios converge to the leading eigenvalue.
    const double r = stopping_time_tail(0.75, CascadeThreshold(2), 40) /
                     stopping_time_tail(0.75, CascadeThreshold(2), 38);
    CHECK(r == doctest::Approx(0.375).epsilon(1e-10));

    for (int k = 2; k <= 6; ++k) {
        const auto s = spectral_decomposition(0.6, CascadeThreshold(k));
        CHECK(s.residual <= 1e-8);
        int zeros = 0;
        for (int i = 0; i < s.eigenvalues.size(); ++i) {
            CHECK(s.eigenvalues(i) < 1.0);
            if (s.eigenvalues(i) == 0.0) ++zeros;
        }
        CHECK(zeros == 2);
        for (long n : {0L, 5L, 23L, 56L})
            CHECK(stopping_time_tail(0.6, CascadeThreshold(k), n) ==
                  doctest::Approx(stopping_time_tail_spectral(0.6, CascadeThreshold(k), n))
                      .epsilon(1e-9));
    }
}

TEST_CASE("expected stopping time") {
    CHECK(std::abs(expected_stopping_time(0.75, CascadeThreshold(2)) - 3.2) <= 1e-12);
    // Deterministic straight run as p approaches 1.
    CHECK(expected_stopping_time(0.999999, CascadeThreshold(4)) ==
          doctest::Approx(4.0).epsilon(1e-4));
    // Increasing in the barrier; matches the independent tridiagonal solve.
    double prev = 0.0;
    for (int k = 2; k <= 8; ++k) {
        const double t = expected_stopping_time(0.75, CascadeThreshold(k));
        CHECK(t > prev);
        CHECK(t == doctest::Approx(
                       oracles::absorption_linear_solve(0.75, CascadeThreshold(k))
                           .expected_time)
                       .epsilon(1e-12));
        prev = t;
    }
}

TEST_CASE("state symmetry of the model") {
    // Under the other state the lead moves down with probability p, so the
    // down-absorption here must equal the up-absorption of a hand-rolled
    // mirrored walk, step by step.
    const int k = 3;
    const double p = 0.7;
    auto a_walk = walk_init(p, CascadeThreshold(k));

    std::vector<double> mirrored(2 * k + 1, 0.0);
    mirrored[k] = 1.0;
    double mirrored_plus = 0.0;
    for (int step = 0; step < 25; ++step) {
        a_walk = walk_step(a_walk);
        std::vector<double> next(mirrored.size(), 0.0);
        for (int s = -k + 1; s <= k - 1; ++s) {
            const double m = mirrored[static_cast<std::size_t>(s + k)];
            if (m == 0.0) continue;
            if (s + 1 == k)
                mirrored_plus += (1.0 - p) * m;  // up with probability 1-p
            else
                next[static_cast<std::size_t>(s + 1 + k)] += (1.0 - p) * m;
            if (s - 1 > -k) next[static_cast<std::size_t>(s - 1 + k)] += p * m;
        }
        mirrored = next;
        CHECK(a_walk.absorbed_minus() ==
              doctest::Approx(mirrored_plus).epsilon(1e-14));
    }

    // Interior mass respects the step parity.
    for (int s = -k; s <= k; ++s)
        if (((s + a_walk.step()) % 2 + 2) % 2 == 1) CHECK(a_walk.mass(s) == 0.0);

    // And in the long run the down-absorption is the complement of the
    // cascade probability.
    for (int i = 0; i < 400; ++i) a_walk = walk_step(a_walk);
    CHECK(a_walk.absorbed_minus() ==
          doctest::Approx(1.0 - absorption_prob(p, CascadeThreshold(k))).epsilon(1e-12));
}

TEST_SUITE_END();

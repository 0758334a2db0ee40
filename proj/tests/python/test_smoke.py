"""Smoke tests for the python module: a handful of known values per
submodule, exercised through the bindings."""

import math

import pytest

import aggregatio as ag


def test_beliefs_mixing():
    p = ag.beliefs.FiniteMeasure(["A", "B"], [0.5, 0.5])
    pz = ag.beliefs.FiniteMeasure(["A", "B"], [1.0, 0.0])
    mixed = ag.beliefs.motivated_mix(p, pz, 0.3)
    assert mixed.weights == pytest.approx([0.65, 0.35], abs=1e-15)

    conditioned = ag.beliefs.bayes_condition(
        ag.beliefs.FiniteMeasure.uniform(["1", "2", "3", "4"]), ["1", "2"]
    )
    assert conditioned.weights == pytest.approx([0.5, 0.5, 0.0, 0.0], abs=1e-15)

    value = ag.beliefs.dissonance(mixed, p, pz, 0.3)
    assert value < ag.beliefs.dissonance(p, p, pz, 0.3)

    with pytest.raises(ag.AggregatioError):
        ag.beliefs.FiniteMeasure(["A", "A"], [0.5, 0.5])


def test_condorcet_equilibrium():
    params = ag.condorcet.JuryParams(0.8, 0.6, 0.0, 2)
    assert ag.condorcet.psi(params) == pytest.approx(0.5, abs=1e-15)
    assert ag.condorcet.n_star(params) == 2

    strat = ag.condorcet.equilibrium(params)
    assert strat.sigma_b == 1.0
    assert strat.sigma_a == pytest.approx(0.98158, abs=1e-4)

    piv = ag.condorcet.pivotal_probs(params, strat)
    assert piv.ratio() == pytest.approx(0.5, abs=1e-9)
    assert (
        ag.condorcet.best_response(params, strat, ag.Signal.A)
        == ag.condorcet.VoteResponse.Indifferent
    )

    sym = ag.condorcet.JuryParams(0.6, 0.6, 0.0, 1)
    assert ag.condorcet.n_star(sym) is None
    assert ag.condorcet.welfare_exact(sym, ag.State.A) == pytest.approx(
        0.648, abs=1e-13
    )

    bracket = ag.condorcet.binomial_tail_bracket(500, 0.6, 0.5)
    assert bracket.lower <= bracket.upper


def test_social_learning():
    assert ag.social_learning.cascade_threshold(0.75, 0.0).value == 2
    assert ag.social_learning.cascade_threshold(0.75, 0.4).value == 3
    assert ag.social_learning.cascade_threshold(0.75, 0.49).value == 5
    assert ag.social_learning.cascade_threshold(0.75, 0.6).value is None

    k2 = ag.social_learning.CascadeThreshold(2)
    assert ag.social_learning.absorption_prob(0.75, k2) == pytest.approx(
        0.9, abs=1e-14
    )
    assert ag.social_learning.welfare_finite_exact(0.75, 0.0, 4) == pytest.approx(
        0.796875, abs=1e-14
    )
    assert ag.social_learning.expected_stopping_time(0.75, k2) == pytest.approx(
        3.2, abs=1e-12
    )

    best = ag.social_learning.optimal_w(0.75, 4)
    assert best.best_k.value == 2
    assert best.interval.hi == pytest.approx(1.0 / 3.0, abs=1e-12)

    spec = ag.social_learning.spectral_decomposition(0.75, k2)
    assert spec.residual <= 1e-8
    assert spec.eigenvalues[0] == pytest.approx(0.375, abs=1e-14)
    assert spec.transition.shape == (3, 3)

    walk = ag.social_learning.WalkDistribution(0.75, 2).stepped().stepped()
    assert walk.absorbed_plus == pytest.approx(0.5625, abs=1e-15)
    assert walk.total_mass() == pytest.approx(1.0, abs=1e-12)


def test_oracles():
    e = ag.oracles.enumerate_slm(0.75, 0.0, 4)
    assert e.welfare == pytest.approx(0.796875, abs=1e-14)

    params = ag.condorcet.JuryParams(0.6, 0.6, 0.0, 1)
    strat = ag.condorcet.JuryStrategy.sincere()
    assert ag.oracles.enumerate_cjt(params, strat, ag.State.A) == pytest.approx(
        0.648, abs=1e-14
    )

    first = ag.oracles.mc_slm(0.75, 0.0, 200, 5000, seed=7, shards=4)
    again = ag.oracles.mc_slm(0.75, 0.0, 200, 5000, seed=7, shards=4, max_threads=2)
    assert first.mean == again.mean
    assert abs(first.mean - 0.9) <= 4.0 * first.std_error

    solve = ag.oracles.absorption_linear_solve(
        0.75, ag.social_learning.CascadeThreshold(2)
    )
    assert solve.prob_up == pytest.approx(0.9, abs=1e-12)
    assert solve.expected_time == pytest.approx(3.2, abs=1e-12)


def test_errors_map_to_python():
    with pytest.raises(ag.AggregatioError):
        ag.social_learning.CascadeThreshold(1)
    with pytest.raises(ag.AggregatioError):
        ag.condorcet.JuryParams(0.6, 0.8, 0.0, 1)
    with pytest.raises(ag.AggregatioError):
        ag.oracles.enumerate_slm(0.75, 0.0, 30)


def test_rates_bracket_and_stopping_time():
    base = ag.condorcet.JuryParams(0.6, 0.6, 0.0, 1)
    entries = ag.condorcet.rate_diagnostic(base, ag.State.A, [50, 100, 150, 200])
    values = [v for (_, v) in entries]
    assert max(values) <= 3.0 * min(values)

    bracket = ag.condorcet.binomial_tail_bracket(401, 0.6, 0.5)
    assert bracket.lower <= bracket.upper

    k2 = ag.social_learning.CascadeThreshold(2)
    pmf = ag.social_learning.stopping_time_pmf(0.75, k2, 8)
    assert pmf[1] == (2, pytest.approx(0.625, abs=1e-13))
    assert pmf[2][1] == 0.0  # wrong parity
    tail = ag.social_learning.stopping_time_tail(0.75, k2, 8)
    assert sum(v for (_, v) in pmf) == pytest.approx(1.0 - tail, abs=1e-13)
    assert ag.social_learning.stopping_time_tail_spectral(
        0.75, k2, 8
    ) == pytest.approx(tail, abs=1e-9)


def test_verification_battery_quick():
    results = ag.verification.run_battery(full=False)
    assert len(results) == 20
    failures = [r.name for r in results if not r.passed]
    assert failures == []


def test_welfare_curve_is_a_step_function():
    values = []
    for i in range(50):
        w = i / 100.0
        values.append(ag.social_learning.welfare_infinite(0.75, w))
    assert values == sorted(values)
    assert all(v > 0.75 for v in values)
    assert ag.social_learning.welfare_infinite(0.75, 0.55) == 0.75
    assert math.isfinite(values[-1])

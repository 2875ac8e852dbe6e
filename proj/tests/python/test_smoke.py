import math

import numpy as np
import pytest

import nstars

EXP1 = nstars.ModelParams(4, 0.4, 0.4, 0.4)
EXP6 = nstars.ModelParams(5, 0.9, 0.5, 0.9)


def test_derive_and_conditions():
    d = nstars.derive(EXP1)
    assert d.beta1 == pytest.approx(0.9, rel=1e-15)
    assert d.beta2 == pytest.approx(4.5, rel=1e-15)
    assert nstars.check_conditions(d).m_finite
    assert not nstars.check_conditions(nstars.derive(EXP6)).m_finite


def test_invalid_params_raise():
    with pytest.raises(nstars.NStarsError):
        nstars.simulate(nstars.ModelParams(2, 0.4, 0.4, 0.4), 10)
    with pytest.raises(ValueError):
        nstars.joint_table(nstars.derive(nstars.ModelParams(4, 1.0, 0.4, 0.4)), 3, 3)


def test_joint_table_and_closed_forms():
    d = nstars.derive(EXP1)
    t = nstars.joint_table(d, 5, 10)
    assert t.shape == (6, 11)
    assert t[0, 0] == 0.0
    assert t[1, 0] == pytest.approx(0.6 / 6.8, rel=1e-15)
    assert nstars.marginal(d, 0) == pytest.approx(0.4 / 1.9, rel=1e-15)
    assert nstars.expectation(d, 20) == pytest.approx(44.8404404237281, rel=1e-12)
    assert nstars.second_moment(d, 20) == pytest.approx(2891.25722288023, rel=1e-12)
    assert nstars.taylor_constant(d) == pytest.approx(1.3207527723959973, rel=1e-12)
    swapped = nstars.joint_table(nstars.swap_roles(d), 10, 5)
    np.testing.assert_array_equal(swapped, t.T)


def test_divergent_moments_are_none():
    d = nstars.derive(EXP6)
    assert nstars.second_moment(d, 5) is None
    assert nstars.taylor_constant(d) is None


def test_gamma_helpers():
    assert nstars.log_gamma_ratio(0, 1, 3) == pytest.approx(math.log(0.5))
    assert nstars.finite_gamma_sum(1, 2, 4) == pytest.approx(0.25)
    assert nstars.infinite_gamma_sum(1, 3) == pytest.approx(1.0)
    with pytest.raises(nstars.NStarsError):
        nstars.infinite_gamma_sum(2, 2.5)


def test_simulate_and_fit():
    run = nstars.simulate(EXP1, 100000, seed=3)
    again = nstars.simulate(EXP1, 100000, seed=3)
    assert run["digest"] == again["digest"]
    assert int(run["w1"].sum()) == 100001
    assert int(run["w2"].sum()) == 3 * 100001
    assert sum(run["branch_counts"].values()) == 100000
    rows = nstars.conditional_moments(run["w1"], run["w2"], "w1", 30)
    assert np.all(rows["second_moment"] >= rows["mean"] ** 2)
    assert rows["fixed"][0] == 0
    assert rows["marginal"][0] == pytest.approx(0.4 / 1.9, rel=0.05)
    fit = nstars.loglog_fit(rows["count"], rows["mean"], rows["second_moment"], 30)
    assert 1.0 < fit["slope"] < 2.5
    with pytest.raises(nstars.InsufficientData):
        nstars.loglog_fit([1], [1.0], [2.0], 1)

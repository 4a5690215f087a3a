"""Radial weighted measure: quadrature identities, additivity, tails."""

import math

import mpmath as mp
import numpy as np
import pytest

from expdiff import measure as M
from expdiff import weights as W
from expdiff.errors import InvalidParameterError, InvalidStateError

ONES = lambda r: np.ones_like(r)


@pytest.fixture(scope="module")
def growing_n3():
    return M.RadialMeasure(W.make_power_weight(0.5), 3, M.GROWING)


@pytest.fixture(scope="module")
def tail_n3():
    return M.RadialMeasure(W.make_power_weight(0.5), 3, M.DECAYING_TAIL, p=2.0)


def test_sphere_area():
    assert M.sphere_area(1) == pytest.approx(2.0)
    assert M.sphere_area(2) == pytest.approx(2 * math.pi)
    assert M.sphere_area(3) == pytest.approx(4 * math.pi)


def test_unweighted_ball():
    meas = M.RadialMeasure(W.make_unweighted(), 3, M.GROWING)
    assert M.integrate(meas, ONES, 0.0, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-12)
    meas5 = M.RadialMeasure(W.make_unweighted(), 5, M.GROWING)
    assert M.integrate(meas5, ONES, 0.0, 1.0) == pytest.approx(1.0 / 5.0, rel=1e-12)


def test_linear_weight_identity():
    # int_0^1 r e^r dr = 1 exactly (integration by parts)
    meas = M.RadialMeasure(W.make_power_weight(1.0), 2, M.GROWING)
    assert M.integrate(meas, ONES, 0.0, 1.0) == pytest.approx(1.0, rel=1e-12)


def test_decaying_tail_oracle(tail_n3):
    # mpmath (40 digits): int_1^inf z^-2 exp(-sqrt(z)) dz = 0.21938393439552027
    val = M.integrate(tail_n3, ONES, 1.0, math.inf)
    assert val == pytest.approx(0.21938393439552027, rel=1e-8)


def test_additivity(growing_n3):
    a, b, c = 0.2, 1.7, 6.0
    whole = M.integrate(growing_n3, ONES, a, c)
    split = M.integrate(growing_n3, ONES, a, b) + M.integrate(growing_n3, ONES, b, c)
    assert whole == pytest.approx(split, rel=1e-12)


def test_monotone_in_interval(growing_n3):
    inner = M.integrate(growing_n3, ONES, 0.5, 2.0)
    outer = M.integrate(growing_n3, ONES, 0.25, 3.0)
    assert outer >= inner


def test_tail_error_estimate_conservative(tail_n3):
    # reported estimate must dominate the true error on random cases
    rng = np.random.default_rng(5)
    mp.mp.dps = 40
    for a in rng.uniform(0.3, 5.0, size=20):
        val, est = M.integrate_with_error(tail_n3, ONES, float(a), math.inf)
        exact = float(mp.quad(lambda z: z ** -2 * mp.exp(-mp.sqrt(z)),
                              [a, 4 * a, 16 * a, mp.inf]))
        assert abs(val - exact) <= max(est, 1e-15 * exact)


def test_infinite_limit_needs_tail(growing_n3):
    with pytest.raises(InvalidParameterError):
        M.integrate(growing_n3, ONES, 0.0, math.inf)


def test_tail_rejects_unweighted():
    with pytest.raises(InvalidParameterError):
        M.RadialMeasure(W.make_unweighted(), 3, M.DECAYING_TAIL, p=2.0)


class TestMass:
    def test_zero_profile(self, growing_n3):
        faces = np.linspace(0.0, 1.0, 11)
        assert M.mass(growing_n3, faces, np.zeros(10)) == 0.0

    def test_unit_ball_volume(self):
        meas = M.RadialMeasure(W.make_unweighted(), 3, M.GROWING)
        faces = np.linspace(0.0, 1.0, 51)
        assert M.mass(meas, faces, np.ones(50)) == pytest.approx(
            4 * math.pi / 3, rel=1e-10)

    def test_linear_weight_disk(self):
        # u = 1 on [0,1], g = r, N = 2: mass = 2 pi int r e^r = 2 pi
        meas = M.RadialMeasure(W.make_power_weight(1.0), 2, M.GROWING)
        faces = np.linspace(0.0, 1.0, 51)
        assert M.mass(meas, faces, np.ones(50)) == pytest.approx(
            2 * math.pi, rel=1e-10)

    def test_rejects_negative(self, growing_n3):
        faces = np.linspace(0.0, 1.0, 11)
        u = np.zeros(10)
        u[3] = -1e-8
        with pytest.raises(InvalidStateError):
            M.mass(growing_n3, faces, u)

    def test_cell_volume_accuracy(self, growing_n3):
        # each cached volume equals a direct adaptive quadrature to 1e-10
        faces = np.linspace(0.0, 2.0, 17)
        vols = M.cell_weighted_volumes(growing_n3, faces)
        omega = M.sphere_area(3)
        for i in (0, 1, 8, 15):
            direct = omega * M.integrate(growing_n3, ONES,
                                         float(faces[i]), float(faces[i + 1]),
                                         rel_tol=1e-12)
            assert vols[i] == pytest.approx(direct, rel=1e-10)

    def test_volume_cache_reused(self, growing_n3):
        faces = np.linspace(0.0, 1.0, 21)
        v1 = M.cell_weighted_volumes(growing_n3, faces)
        v2 = M.cell_weighted_volumes(growing_n3, faces)
        assert v1 is v2

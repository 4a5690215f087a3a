"""Inequality lab: constants, criterion suprema, empirical certification."""

import math

import numpy as np
import pytest

from expdiff import inequalities as I
from expdiff import weights as W
from expdiff.errors import InvalidParameterError, PreconditionError


@pytest.fixture(scope="module")
def w_half():
    return W.make_power_weight(0.5)


@pytest.fixture(scope="module")
def eq_ref():
    return W.EquationParams(3, 2.0, 2.0)


class TestKqp:
    def test_symmetric_case(self):
        assert I.k_qp(2.0, 2.0) == pytest.approx(2.0, rel=1e-14)

    def test_asymmetric_case(self):
        assert I.k_qp(4.0, 2.0) == pytest.approx(3.0 ** 0.25 * 1.5 ** 0.5, rel=1e-14)

    def test_at_least_one(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            p = rng.uniform(1.05, 4.0)
            q = p + rng.uniform(0.0, 4.0)
            assert I.k_qp(q, p) >= 1.0

    def test_rejects_p_at_most_one(self):
        with pytest.raises(InvalidParameterError):
            I.k_qp(2.0, 1.0)


def test_c4_half_is_inverse_e():
    assert I.c4(0.5) == pytest.approx(math.exp(-1.0), rel=1e-14)


class TestCriterion:
    def test_poincare_below_closed_bound(self, w_half, eq_ref):
        crit = I.hardy_criterion_sup(I.poincare_pair(w_half, eq_ref))
        bound = I.poincare_constant(w_half, eq_ref).criterion_bound
        assert crit.beta_sup <= bound
        # mpmath profile values: A(32) = 0.4333572771, A(9999) = 0.6468492534
        samples = np.array(crit.samples)
        k32 = np.argmin(np.abs(samples[:, 0] - 32.0))
        assert samples[k32, 1] == pytest.approx(0.4334, rel=5e-3)

    def test_bound_holds_across_combinations(self):
        combos = [
            (W.make_power_weight(0.3), W.EquationParams(3, 2.0, 2.0)),
            (W.make_power_weight(0.5), W.EquationParams(3, 2.0, 2.0)),
            (W.make_power_weight(0.5), W.EquationParams(4, 2.5, 1.0)),
            (W.make_power_weight(0.9), W.EquationParams(4, 3.0, 0.5)),
            (W.make_zygmund_weight(0.5, 1.0, 2.0), W.EquationParams(3, 2.0, 2.0)),
            (W.make_zygmund_weight(0.3, 0.4, 2.0), W.EquationParams(3, 2.0, 2.0)),
            (W.make_power_weight(0.7), W.EquationParams(5, 2.0, 2.0)),
            (W.make_power_weight(0.4), W.EquationParams(3, 2.0, 3.0)),
            (W.make_power_weight(0.6), W.EquationParams(4, 2.0, 2.0)),
            (W.make_power_weight(0.5), W.EquationParams(3, 2.5, 1.0)),
        ]
        for w, eq in combos:
            consts = I.poincare_constant(w, eq)
            assert consts.beta_numeric <= consts.criterion_bound * (1 + 1e-9), (
                w.label(), eq)

    def test_left_scaling_homogeneity(self, w_half, eq_ref):
        pair = I.poincare_pair(w_half, eq_ref)
        lam = 7.3
        base = I.hardy_criterion_sup(pair, n_grid=150)
        scaled = I.hardy_criterion_sup(pair.scaled(lam), n_grid=150)
        assert scaled.beta_sup == pytest.approx(
            base.beta_sup * lam ** (1.0 / pair.q), rel=1e-8)


class TestPoincareConstant:
    def test_reference_values(self, w_half, eq_ref):
        consts = I.poincare_constant(w_half, eq_ref)
        # c1 = (p-1) a1 / (a2 (a1+1)) = 2/3; bound = (c1/a1)^(1/2) = (4/3)^(1/2)
        assert consts.criterion_bound == pytest.approx(math.sqrt(4.0 / 3.0), rel=1e-13)
        assert consts.certified == pytest.approx(16.0 / 3.0, rel=1e-13)

    def test_numeric_below_certified(self, w_half, eq_ref):
        consts = I.poincare_constant(w_half, eq_ref)
        assert consts.numeric <= consts.certified

    def test_precondition(self):
        # alpha1 far below alpha2 violates the flux monotonicity condition
        w = W.make_custom_weight(lambda s: np.power(s, 0.05),
                                 lambda s: 0.05 * np.power(s, -0.95),
                                 0.05, 1.8)
        eq = W.EquationParams(3, 2.9, 0.2)
        with pytest.raises(PreconditionError):
            I.poincare_constant(w, eq)


class TestGamma:
    def test_frozen_oracle(self, w_half, eq_ref):
        # mpmath evaluation of the closed form at q=3, r0=1:
        # a = 6, ginv(6) = 36, K(3,2) = 1.7521490372873504,
        # Gamma = 29.993991640359033
        assert I.gamma_constant(w_half, eq_ref, 3.0, 1.0) == pytest.approx(
            29.993991640359033, rel=1e-12)

    def test_diverges_as_q_to_p(self, w_half, eq_ref):
        qs = [2.5, 2.25, 2.1, 2.05]
        gammas = [I.gamma_constant(w_half, eq_ref, q) for q in qs]
        assert all(b > a for a, b in zip(gammas, gammas[1:]))
        assert gammas[-1] > 100.0  # ginv(a)/a = a grows without bound

    def test_q_range_enforced(self, w_half, eq_ref):
        for q in (2.0, 6.0, 7.0):
            with pytest.raises(InvalidParameterError):
                I.gamma_constant(w_half, eq_ref, q)

    def test_alpha2_below_one_required(self, eq_ref):
        z = W.make_zygmund_weight(0.5, 1.0, 2.0)  # alpha2 = 1.5
        with pytest.raises(PreconditionError):
            I.gamma_constant(z, eq_ref, 3.0)


class TestTalenti:
    def test_n3_p2_extremal(self):
        # sharp constant equals the ratio of the extremal u = (1+r^2)^(-1/2):
        # ||u||_6 / ||grad u||_2 = (pi^2/4)^(1/6) / (3 pi^2 / 4)^(1/2)
        expected = (math.pi ** 2 / 4.0) ** (1 / 6) / math.sqrt(3 * math.pi ** 2 / 4)
        assert I.talenti_constant(3, 2.0) == pytest.approx(expected, rel=1e-12)

    def test_extremal_ratio_not_exceeded(self):
        # evaluate the embedding ratio for a generic bump; must stay below
        from expdiff import measure as M
        meas = M.RadialMeasure(W.make_unweighted(), 3, M.GROWING)
        omega = M.sphere_area(3)
        tf = I.polynomial_bump(1.0, 2.0)
        p_star = 6.0
        lhs = (omega * M.integrate(meas, lambda r: tf.value(r) ** p_star, 0, 1.0)) ** (1 / p_star)
        rhs = (omega * M.integrate(meas, lambda r: tf.deriv(r) ** 2, 0, 1.0)) ** 0.5
        assert lhs <= I.talenti_constant(3, 2.0) * rhs


class TestBoundedSobolev:
    def test_lambda_exponent_negative(self, w_half, eq_ref):
        # a = pq/(q-p) = 6 > N = 3, so the lam(R) exponent N/a - 1 < 0
        c_total, lam_factor = I.bounded_sobolev_constant(w_half, eq_ref, 3.0, 2.0)
        assert c_total > 0
        lam_r = W.lambda_(w_half, 2.0)
        assert lam_factor == pytest.approx(lam_r ** (3.0 / 6.0 - 1.0), rel=1e-12)

    def test_lambda_comparison_floor(self, w_half):
        # lam(s) >= (a1/(a1+1)) ((a2+1)/a2) lam(R) for s < R when alpha2 <= 1
        big_r = 4.0
        floor = I.lambda_comparison_floor(w_half, big_r)
        for s in np.linspace(0.05, big_r, 50):
            assert W.lambda_(w_half, float(s)) >= floor * (1 - 1e-12)

    def test_alpha2_gate(self, eq_ref):
        z = W.make_zygmund_weight(0.5, 1.0, 2.0)
        with pytest.raises(PreconditionError):
            I.bounded_sobolev_constant(z, eq_ref, 3.0, 2.0)


class TestProfileBounds:
    def test_sobolev_profile_pointwise(self, w_half, eq_ref):
        q = 3.0
        crit = I.hardy_criterion_sup(I.sobolev_pair(w_half, eq_ref, q))
        samples = np.array(crit.samples)
        r = samples[:, 0]
        a_vals = samples[:, 1]
        bounds = I.sobolev_profile_bounds(w_half, eq_ref, q, r, r0=1.0)
        slack = 1 + 1e-8
        # the uniform small-r bound holds everywhere
        assert np.all(a_vals <= bounds["uniform"] * slack)
        # below r0 it is dominated by the r0 constant
        small = r <= 1.0
        assert np.all(a_vals[small] <= bounds["constant_small"] * slack)
        # the large-r form holds on the whole scanned range
        assert np.all(a_vals <= bounds["large"] * slack)

    def test_f_profile_bounds(self, w_half, eq_ref):
        lam_grid = np.geomspace(0.05, 20.0, 60)
        prof = I.f_profile_values(w_half, eq_ref, 3.0, lam_grid)
        above = lam_grid > 1.0
        slack = 1 + 1e-9
        assert np.all(prof["f"][above] <= prof["bound_above_one"] * slack)
        assert np.all(prof["f"][~above] <= prof["bound_below_one"] * slack)


class TestVerify:
    def test_zero_function_passes(self, w_half, eq_ref):
        zero = I.TestFunction("zero", lambda r: np.zeros_like(r),
                              lambda r: np.zeros_like(r), 1.0)
        rep = I.verify_inequality(I.POINCARE, w_half, eq_ref, family=[zero])
        assert rep.verdict
        assert rep.empirical_worst_ratio == 0.0

    def test_poincare_bumps(self, w_half, eq_ref):
        rep = I.verify_inequality(I.POINCARE, w_half, eq_ref)
        assert rep.verdict
        assert len(rep.per_function) == 12
        assert rep.empirical_worst_ratio <= rep.certified_constant

    def test_scaling_leaves_ratio_unchanged(self, w_half, eq_ref):
        tf = I.polynomial_bump(2.0, 2.0)
        doubled = I.TestFunction("2x", lambda r: 2.0 * tf.value(r),
                                 lambda r: 2.0 * tf.deriv(r), tf.support_radius)
        r1 = I.verify_inequality(I.POINCARE, w_half, eq_ref, family=[tf])
        r2 = I.verify_inequality(I.POINCARE, w_half, eq_ref, family=[doubled])
        assert r1.empirical_worst_ratio == pytest.approx(
            r2.empirical_worst_ratio, rel=1e-12)

    def test_radial_sobolev(self, w_half, eq_ref):
        rep = I.verify_inequality(I.RADIAL_SOBOLEV, w_half, eq_ref, q=3.0)
        assert rep.verdict
        assert rep.empirical_worst_ratio <= rep.certified_constant

    def test_bounded_sobolev_random_bumps(self, w_half, eq_ref):
        rng = np.random.default_rng(17)
        for big_r in (1.0, 2.0, 4.0):
            family = I.random_family(rng, 20, fixed_radius=big_r)
            rep = I.verify_inequality(I.BOUNDED_SOBOLEV, w_half, eq_ref,
                                      q=3.0, big_r=big_r, family=family)
            assert rep.verdict, (big_r, rep.empirical_worst_ratio,
                                 rep.certified_constant)

    def test_bounded_rejects_oversized_support(self, w_half, eq_ref):
        fam = [I.polynomial_bump(4.0, 2.0)]
        with pytest.raises(InvalidParameterError):
            I.verify_inequality(I.BOUNDED_SOBOLEV, w_half, eq_ref, q=3.0,
                                big_r=2.0, family=fam)

"""Explicit constants and empirical certification of the weighted
functional inequalities.

Three inequalities are covered, all over the radial weighted measure:

* weighted Poincare:   int lam(|x|)**p |v|**p df <= C int |grad v|**p df
* radial Sobolev:      (int_0^inf |v|**q w dr)**(1/q)
                         <= Gamma (int_0^inf |v'|**p w dr)**(1/p),
                       w(r) = r**(N-1) exp(g(r))
* bounded-ball Sobolev: (int_{B_R} |v|**q df)**(1/q)
                         <= C (int_{B_R} |grad v|**p df)**(1/p) * lam(R)**(N/a - 1)

Each one comes with a closed-form certified constant assembled from a
Hardy-type criterion: the supremum over r of

    ( int_0^r w )**(1/q) * ( int_r^inf phi**(-1/(p-1)) )**((p-1)/p)

certifies the inequality with constant at most K(q,p) times the sup,
K(q,p) = (1 + q/p')**(1/q) (1 + p'/q)**(1/p').  Test-function families
then verify empirically that no ratio exceeds the certified constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import measure, quadrature
from .errors import InvalidParameterError, PreconditionError
from .measure import DECAYING_TAIL, GROWING, RadialMeasure, sphere_area
from .weights import EquationParams, WeightSpec, check_structural_conditions, invert_g, lambda_, lambda_many

POINCARE = "poincare"
RADIAL_SOBOLEV = "radial_sobolev"
BOUNDED_SOBOLEV = "bounded_sobolev"

#: slack multiplier on certified constants when judging empirical ratios
VERDICT_RTOL = 1e-8


def k_qp(q: float, p: float) -> float:
    """Criterion-to-constant factor (1 + q/p')**(1/q) * (1 + p'/q)**(1/p')."""
    if not p > 1:
        raise InvalidParameterError(f"requires p > 1, got p={p}")
    if not q >= p:
        raise InvalidParameterError(f"requires q >= p, got q={q}, p={p}")
    pp = p / (p - 1.0)
    return (1.0 + q / pp) ** (1.0 / q) * (1.0 + pp / q) ** (1.0 / pp)


def c4(alpha: float) -> float:
    """max over lam > 0 of lam**(1/alpha - 1) * exp(-lam), 0 < alpha < 1."""
    if not 0 < alpha < 1:
        raise InvalidParameterError(f"requires 0 < alpha < 1, got {alpha}")
    k = 1.0 / alpha - 1.0
    return k ** k * math.exp(-k)


# ---------------------------------------------------------------------------
# Hardy-type criterion


@dataclass(frozen=True)
class HardyPair:
    """Left weight w and right weight phi of a Hardy-type inequality
    (int |v|^q w dr)^(1/q) <= C (int |v'|^p phi dr)^(1/p).

    Both our pairs share phi(r) = r**(N-1) exp(g(r)), whose dual
    phi**(-1/(p-1)) is the decaying-tail density.
    """

    w_density: Callable[[np.ndarray], np.ndarray]
    phi_density: Callable[[np.ndarray], np.ndarray]
    q: float
    p: float
    weight: WeightSpec
    dim_n: int
    w_scale: float = 1.0

    def __post_init__(self):
        if not (1.0 <= self.p <= self.q):
            raise InvalidParameterError(
                f"requires 1 <= p <= q, got p={self.p}, q={self.q}"
            )

    def scaled(self, factor: float) -> "HardyPair":
        base = self.w_density
        return HardyPair(
            w_density=lambda r: factor * base(r),
            phi_density=self.phi_density,
            q=self.q, p=self.p, weight=self.weight, dim_n=self.dim_n,
            w_scale=self.w_scale * factor,
        )


def poincare_pair(w: WeightSpec, eq: EquationParams) -> HardyPair:
    """w = lam**p r**(N-1) e^g, phi = r**(N-1) e^g, q = p."""
    grow = RadialMeasure(w, eq.dim_n, GROWING)
    p = eq.p

    def left(r):
        return lambda_many(w, r) ** p * grow.density(r)

    return HardyPair(w_density=left, phi_density=grow.density,
                     q=p, p=p, weight=w, dim_n=eq.dim_n)


def sobolev_pair(w: WeightSpec, eq: EquationParams, q: float) -> HardyPair:
    """w = phi = r**(N-1) e^g with q in (p, Np/(N-p))."""
    _check_q_range(eq, q)
    grow = RadialMeasure(w, eq.dim_n, GROWING)
    return HardyPair(w_density=grow.density, phi_density=grow.density,
                     q=q, p=eq.p, weight=w, dim_n=eq.dim_n)


def _check_q_range(eq: EquationParams, q: float) -> None:
    hi = eq.dim_n * eq.p / (eq.dim_n - eq.p)
    if not (eq.p < q < hi):
        raise InvalidParameterError(
            f"requires p < q < N*p/(N-p) = {hi:g}, got q={q}"
        )


@dataclass(frozen=True)
class CriterionResult:
    beta_sup: float
    argmax_r: float
    samples: list  # [(r, A(r))]


def hardy_criterion_sup(pair: HardyPair, r_max: float | None = None,
                        n_grid: int = 400) -> CriterionResult:
    """Scan-and-refine estimate of the criterion supremum.

    The profile A(r) is evaluated on a log-spaced grid (cumulative panel
    integrals for the left factor, reverse-cumulative plus truncated
    stub for the right tail), then refined by golden-section around the
    discrete argmax.  Divergent tails raise CriterionInfiniteError.
    """
    w = pair.weight
    p, q, n = pair.p, pair.q, pair.dim_n
    dual = RadialMeasure(w, n, DECAYING_TAIL, p=p)
    if r_max is None:
        # the profile decays like exp(-g(r)(q-p)/(pq)) beyond its hump for
        # q > p, and plateaus for q = p; cap the scan where e^g stays finite
        a_param = p * q / (q - p) if q > p else p
        r_max = max(10.0, invert_g(w, min(50.0 * a_param, 600.0)))
    r_lo = 1e-4
    grid = np.geomspace(r_lo, r_max, n_grid)

    left_bp = np.concatenate([[0.0], grid])
    left_cum = quadrature.cumulative(pair.w_density, left_bp, rel_tol=1e-11)[1:]

    cutoff = measure._tail_cutoff(dual, float(grid[-1]))
    if cutoff > grid[-1]:
        ext = np.geomspace(grid[-1], cutoff, 40)[1:]
    else:
        ext = np.array([])
    tail_bp = np.concatenate([grid, ext])
    dual_f = _dual_density(pair)
    segs = np.empty(tail_bp.size - 1)
    for k in range(tail_bp.size - 1):
        segs[k], _ = quadrature.adaptive(dual_f, float(tail_bp[k]), float(tail_bp[k + 1]),
                                         rel_tol=1e-11, abs_floor=1e-300)
    stub, _ = quadrature.adaptive(dual_f, float(tail_bp[-1]),
                                  2.0 * float(tail_bp[-1]), rel_tol=1e-9,
                                  abs_floor=1e-300)
    # suffix sums right-to-left: adding small positives first avoids the
    # catastrophic cancellation of total-minus-prefix at large r
    suffix = np.concatenate([np.cumsum(segs[::-1])[::-1], [0.0]]) + stub
    tails = suffix[: grid.size]

    profile = left_cum ** (1.0 / q) * tails ** ((p - 1.0) / p)
    j = int(np.argmax(profile))
    samples = list(zip(grid.tolist(), profile.tolist()))

    def a_of(r: float) -> float:
        k = int(np.searchsorted(tail_bp, r, side="right") - 1)
        k = max(0, min(k, grid.size - 1))
        dl, _ = quadrature.adaptive(pair.w_density, float(grid[k]), r, rel_tol=1e-11,
                                    abs_floor=1e-11 * left_cum[k])
        dt, _ = quadrature.adaptive(dual_f, r, float(tail_bp[k + 1]), rel_tol=1e-11,
                                    abs_floor=1e-13 * max(suffix[k + 1], 1e-300))
        return (left_cum[k] + dl) ** (1.0 / q) * (suffix[k + 1] + dt) ** ((p - 1.0) / p)

    lo = grid[max(j - 1, 0)]
    hi = grid[min(j + 1, grid.size - 1)]
    gr = 0.5 * (math.sqrt(5.0) - 1.0)
    x1 = hi - gr * (hi - lo)
    x2 = lo + gr * (hi - lo)
    f1, f2 = a_of(x1), a_of(x2)
    for _ in range(40):
        if f1 < f2:
            lo = x1
            x1, f1 = x2, f2
            x2 = lo + gr * (hi - lo)
            f2 = a_of(x2)
        else:
            hi = x2
            x2, f2 = x1, f1
            x1 = hi - gr * (hi - lo)
            f1 = a_of(x1)
    best_r = 0.5 * (lo + hi)
    best = max(a_of(best_r), float(profile[j]))
    return CriterionResult(beta_sup=best, argmax_r=best_r, samples=samples)


def _dual_density(pair: HardyPair) -> Callable:
    p = pair.p

    def dual(r):
        return np.asarray(pair.phi_density(r), dtype=float) ** (-1.0 / (p - 1.0))

    return dual


# ---------------------------------------------------------------------------
# certified constants


@dataclass(frozen=True)
class PoincareConstants:
    criterion_bound: float   # closed-form bound on the criterion sup
    beta_numeric: float      # scanned criterion sup (lower approximation)
    kqp: float
    certified: float         # (kqp * criterion_bound)**p
    numeric: float           # (kqp * beta_numeric)**p


def poincare_constant(w: WeightSpec, eq: EquationParams,
                      criterion: CriterionResult | None = None) -> PoincareConstants:
    """Certified constant of the weighted Poincare inequality.

    Requires the flux-monotonicity condition
    (N-p)a1/(a1+1) + (p-1)(a1 - a2/(a2+1)) >= 0.  The closed form uses
    c1 = (p-1)a1/(a2(a1+1)):  criterion_bound = (c1**(p-1)/a1)**(1/p).
    A precomputed criterion scan may be passed to avoid rescanning.
    """
    cond = check_structural_conditions(w, eq)
    if not cond.flux_monotone_ok:
        raise PreconditionError(
            "weighted Poincare requires (N-p)a1/(a1+1) + (p-1)(a1 - a2/(a2+1)) >= 0"
        )
    a1, a2, p = w.alpha1, w.alpha2, eq.p
    c1 = (p - 1.0) * a1 / (a2 * (a1 + 1.0))
    bound = (c1 ** (p - 1.0) / a1) ** (1.0 / p)
    kk = k_qp(p, p)
    crit = criterion if criterion is not None \
        else hardy_criterion_sup(poincare_pair(w, eq))
    return PoincareConstants(
        criterion_bound=bound,
        beta_numeric=crit.beta_sup,
        kqp=kk,
        certified=(kk * bound) ** p,
        numeric=(kk * crit.beta_sup) ** p,
    )


def gamma_constant(w: WeightSpec, eq: EquationParams, q: float,
                   r0: float = 1.0) -> float:
    """Closed-form constant of the radial weighted Sobolev inequality.

    Requires p < q < Np/(N-p), alpha2 < 1 and both monotonicity
    conditions.  With a = pq/(q-p):

        Gamma = K(q,p) * [ N**(-1/q) ((p-1)/(N-p))**((p-1)/p) (1+r0)
                + (p-1)**((p-1)/p) (a2(a1+1)/(a1(a2+1)))**(1/q)
                  * a1**(-1/q) a2**(-(p-1)/p) (c4(a1)+c4(a2))
                  * (1 + g(r0)**(1/N)/r0) * ginv(a)/a ].
    """
    _check_q_range(eq, q)
    if not r0 > 0:
        raise InvalidParameterError("requires r0 > 0")
    cond = check_structural_conditions(w, eq)
    if not w.alpha2 < 1.0:
        raise PreconditionError("radial Sobolev constant requires alpha2 < 1")
    if not (cond.flux_monotone_ok and cond.dual_monotone_ok):
        raise PreconditionError(
            "radial Sobolev constant requires both monotonicity conditions"
        )
    a1, a2 = w.alpha1, w.alpha2
    n, p = float(eq.dim_n), eq.p
    a = p * q / (q - p)
    term1 = n ** (-1.0 / q) * ((p - 1.0) / (n - p)) ** ((p - 1.0) / p) * (1.0 + r0)
    term2 = ((p - 1.0) ** ((p - 1.0) / p)
             * (a2 * (a1 + 1.0) / (a1 * (a2 + 1.0))) ** (1.0 / q)
             * a1 ** (-1.0 / q) * a2 ** (-(p - 1.0) / p)
             * (c4(a1) + c4(a2))
             * (1.0 + float(w.g(r0)) ** (1.0 / n) / r0)
             * invert_g(w, a) / a)
    return k_qp(q, p) * (term1 + term2)


def talenti_constant(n: int, p: float) -> float:
    """Sharp constant of the unweighted Sobolev embedding
    ||v||_{p*} <= C ||grad v||_p on R^n, p* = np/(n-p)."""
    if not 1 < p < n:
        raise InvalidParameterError("requires 1 < p < n")
    n = float(n)
    return (math.pi ** -0.5 * n ** (-1.0 / p)
            * ((p - 1.0) / (n - p)) ** (1.0 - 1.0 / p)
            * (math.gamma(1.0 + n / 2.0) * math.gamma(n)
               / (math.gamma(n / p) * math.gamma(1.0 + n - n / p))) ** (1.0 / n))


def bounded_sobolev_constant(w: WeightSpec, eq: EquationParams, q: float,
                             big_r: float) -> tuple[float, float]:
    """Constant pair (C, lam(R)**(N/a - 1)) of the bounded-ball inequality.

    C is assembled from the chain: sharp unweighted Sobolev constant
    applied to v * exp(g/p), the gradient-of-g comparison
    |g'| <= a2 (a1+1)/a1 * lam, the certified Poincare constant, the
    interpolation between exponents p* and p, and the comparison
    lam(s) >= (a1/(a1+1)) ((a2+1)/a2) lam(R) for s < R.
    """
    _check_q_range(eq, q)
    if not (big_r > 0 and math.isfinite(big_r)):
        raise InvalidParameterError("requires finite R > 0")
    if not w.alpha2 <= 1.0:
        raise PreconditionError("bounded-ball Sobolev requires alpha2 <= 1")
    a1, a2 = w.alpha1, w.alpha2
    n, p = float(eq.dim_n), eq.p
    p_star = n * p / (n - p)
    a = p * q / (q - p)
    theta = (q - p) / (p_star - p)
    cp = poincare_constant(w, eq).certified
    c_grad = a2 * (a1 + 1.0) / a1
    c_one = talenti_constant(eq.dim_n, p) ** p * 2.0 ** (p - 1.0) * (
        1.0 + (c_grad / p) ** p * cp)
    c_two = ((a1 + 1.0) * a2 / (a1 * (a2 + 1.0))) ** p * cp
    c_total = c_one ** (theta * p_star / (p * q)) * c_two ** ((1.0 - theta) / q)
    lam_factor = lambda_(w, big_r) ** (n / a - 1.0)
    return c_total, lam_factor


def lambda_comparison_floor(w: WeightSpec, big_r: float) -> float:
    """Lower bound factor: lam(s) >= floor * lam(R) for all s < R
    (valid when alpha2 <= 1)."""
    a1, a2 = w.alpha1, w.alpha2
    return (a1 / (a1 + 1.0)) * ((a2 + 1.0) / a2) * lambda_(w, big_r)


# ---------------------------------------------------------------------------
# profile bounds of the radial Sobolev criterion


def sobolev_profile_bounds(w: WeightSpec, eq: EquationParams, q: float,
                           r: np.ndarray, r0: float = 1.0) -> dict:
    """Pointwise upper bounds of the criterion profile A(r).

    Returns arrays: ``uniform`` (valid everywhere, used below r0),
    ``constant_small`` (its r0-uniform majorant), and ``large``
    (c3 * A3(r), valid everywhere, sharp for large r).
    """
    r = np.asarray(r, dtype=float)
    a1, a2 = w.alpha1, w.alpha2
    n, p = float(eq.dim_n), eq.p
    g_r = np.asarray(w.g(r), dtype=float)
    front = n ** (-1.0 / q) * ((p - 1.0) / (n - p)) ** ((p - 1.0) / p)
    uniform = front * r ** ((n * p - q * (n - p)) / (q * p)) * np.exp(
        -g_r * (q - p) / (p * q))
    a = p * q / (q - p)
    constant_small = front * min(r0 ** (1.0 - n / a), 1.0 + r0)
    c3 = ((p - 1.0) ** ((p - 1.0) / p)
          * (a2 * (a1 + 1.0) / (a1 * (a2 + 1.0))) ** (1.0 / q)
          * a1 ** (-1.0 / q) * a2 ** (-(p - 1.0) / p))
    large = c3 * (r ** (n * (p - q) + p * q) * g_r ** (-p - q * (p - 1.0))
                  * np.exp((p - q) * g_r)) ** (1.0 / (p * q))
    return {"uniform": uniform, "constant_small": constant_small, "large": large}


def f_profile_values(w: WeightSpec, eq: EquationParams, q: float,
                     lam_grid: np.ndarray) -> dict:
    """The tail-controlling profile F under the change of variable
    r = ginv(a * lam):  F = ginv(a lam) e^(-lam) / (a lam), with its two
    regimewise bounds c4(a1) ginv(a)/a (lam > 1) and c4(a2) ginv(a)/a."""
    _check_q_range(eq, q)
    lam_grid = np.asarray(lam_grid, dtype=float)
    a = eq.p * q / (q - eq.p)
    base = invert_g(w, a) / a
    vals = np.array([invert_g(w, a * lam) * math.exp(-lam) / (a * lam)
                     for lam in lam_grid])
    return {
        "lam": lam_grid,
        "f": vals,
        "bound_above_one": c4(w.alpha1) * base,
        "bound_below_one": c4(w.alpha2) * base,
    }


# ---------------------------------------------------------------------------
# test-function families


@dataclass(frozen=True)
class TestFunction:
    label: str
    value: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    support_radius: float


def polynomial_bump(big_r: float, k: float) -> TestFunction:
    """(1 - (r/R)**2)_+**k with analytic derivative."""
    if not (big_r > 0 and k >= 1):
        raise InvalidParameterError("requires R > 0 and k >= 1")

    def v(r):
        r = np.asarray(r, dtype=float)
        core = np.maximum(0.0, 1.0 - (r / big_r) ** 2)
        return core ** k

    def dv(r):
        r = np.asarray(r, dtype=float)
        core = np.maximum(0.0, 1.0 - (r / big_r) ** 2)
        return -2.0 * k * r / big_r ** 2 * core ** (k - 1.0) * (core > 0)

    return TestFunction(f"bump(R={big_r:g},k={k:g})", v, dv, big_r)


def gaussian_tapered(big_r: float, sigma: float) -> TestFunction:
    """exp(-r**2/sigma**2) - exp(-R**2/sigma**2), truncated at R."""
    if not (big_r > 0 and sigma > 0):
        raise InvalidParameterError("requires R > 0 and sigma > 0")
    offset = math.exp(-(big_r / sigma) ** 2)

    def v(r):
        r = np.asarray(r, dtype=float)
        return np.maximum(0.0, np.exp(-(r / sigma) ** 2) - offset) * (r < big_r)

    def dv(r):
        r = np.asarray(r, dtype=float)
        return -2.0 * r / sigma ** 2 * np.exp(-(r / sigma) ** 2) * (r < big_r)

    return TestFunction(f"gauss(R={big_r:g},sigma={sigma:g})", v, dv, big_r)


def bump_family(radii: Sequence[float] = (0.5, 1.0, 2.0, 4.0),
                powers: Sequence[float] = (1.0, 2.0, 3.0)) -> list[TestFunction]:
    return [polynomial_bump(R, k) for R in radii for k in powers]


def random_family(rng: np.random.Generator, n: int,
                  r_range: tuple[float, float] = (0.5, 4.0),
                  fixed_radius: float | None = None) -> list[TestFunction]:
    """Seeded mixture of polynomial bumps and tapered gaussians."""
    out = []
    for i in range(n):
        big_r = fixed_radius if fixed_radius is not None else float(
            np.exp(rng.uniform(math.log(r_range[0]), math.log(r_range[1]))))
        if rng.uniform() < 0.5:
            out.append(polynomial_bump(big_r, float(rng.uniform(1.0, 4.0))))
        else:
            out.append(gaussian_tapered(big_r, float(rng.uniform(0.3, 1.0)) * big_r))
    return out


# ---------------------------------------------------------------------------
# empirical verification


@dataclass(frozen=True)
class InequalityReport:
    kind: str
    beta_sup: float
    closed_form_bound: float
    kqp: float
    certified_constant: float
    empirical_worst_ratio: float
    verdict: bool
    samples: list = field(default_factory=list)
    per_function: list = field(default_factory=list)  # (label, lhs, rhs, ratio)
    params: dict = field(default_factory=dict)


def _ratio(lhs: float, rhs: float) -> float:
    if lhs == 0.0 and rhs == 0.0:
        return 0.0
    return lhs / rhs


def verify_inequality(kind: str, w: WeightSpec, eq: EquationParams,
                      q: float | None = None, big_r: float | None = None,
                      family: Sequence[TestFunction] | None = None) -> InequalityReport:
    """Evaluate both sides per test function and compare the worst ratio
    against the certified constant.  The verdict fails loudly in the
    report (never raises) if any ratio exceeds it beyond 1e-8 relative."""
    eq.validate_with_weight(w)
    if family is None:
        family = bump_family()
    grow = RadialMeasure(w, eq.dim_n, GROWING)
    omega = sphere_area(eq.dim_n)
    p = eq.p
    per_function = []

    if kind == POINCARE:
        crit = hardy_criterion_sup(poincare_pair(w, eq))
        consts = poincare_constant(w, eq, criterion=crit)
        certified = consts.certified
        beta_sup, closed_bound, kk = crit.beta_sup, consts.criterion_bound, consts.kqp
        samples = crit.samples
        for tf in family:
            lhs = measure.integrate(
                grow, lambda r, tf=tf: lambda_many(w, r) ** p * tf.value(r) ** p,
                0.0, tf.support_radius)
            rhs = measure.integrate(
                grow, lambda r, tf=tf: np.abs(tf.deriv(r)) ** p,
                0.0, tf.support_radius)
            per_function.append((tf.label, lhs, rhs, _ratio(lhs, rhs)))
    elif kind == RADIAL_SOBOLEV:
        if q is None:
            raise InvalidParameterError("radial Sobolev requires q")
        certified = gamma_constant(w, eq, q)
        crit = hardy_criterion_sup(sobolev_pair(w, eq, q))
        beta_sup, closed_bound, kk = crit.beta_sup, certified, k_qp(q, p)
        samples = crit.samples
        for tf in family:
            lhs = measure.integrate(
                grow, lambda r, tf=tf: tf.value(r) ** q,
                0.0, tf.support_radius) ** (1.0 / q)
            rhs = measure.integrate(
                grow, lambda r, tf=tf: np.abs(tf.deriv(r)) ** p,
                0.0, tf.support_radius) ** (1.0 / p)
            per_function.append((tf.label, lhs, rhs, _ratio(lhs, rhs)))
    elif kind == BOUNDED_SOBOLEV:
        if q is None or big_r is None:
            raise InvalidParameterError("bounded-ball Sobolev requires q and R")
        c_total, lam_factor = bounded_sobolev_constant(w, eq, q, big_r)
        certified = c_total
        beta_sup, closed_bound, kk = math.nan, c_total, k_qp(q, p)
        samples = []
        for tf in family:
            if tf.support_radius > big_r * (1.0 + 1e-12):
                raise InvalidParameterError(
                    f"test function {tf.label} is not supported in the ball of radius {big_r:g}"
                )
            lhs = (omega * measure.integrate(
                grow, lambda r, tf=tf: tf.value(r) ** q,
                0.0, tf.support_radius)) ** (1.0 / q)
            grad = (omega * measure.integrate(
                grow, lambda r, tf=tf: np.abs(tf.deriv(r)) ** p,
                0.0, tf.support_radius)) ** (1.0 / p)
            rhs = grad * lam_factor
            per_function.append((tf.label, lhs, rhs, _ratio(lhs, rhs)))
    else:
        raise InvalidParameterError(f"unknown inequality kind {kind!r}")

    worst = max((r for *_, r in per_function), default=0.0)
    return InequalityReport(
        kind=kind,
        beta_sup=beta_sup,
        closed_form_bound=closed_bound,
        kqp=kk,
        certified_constant=certified,
        empirical_worst_ratio=worst,
        verdict=bool(worst <= certified * (1.0 + VERDICT_RTOL)) and math.isfinite(worst),
        samples=samples,
        per_function=per_function,
        params={"weight": w.label(), "N": eq.dim_n, "p": p,
                "q": q if q is not None else p, "R": big_r},
    )

"""Admissible radial weight exponents and their derived quantities.

A weight is f(x) = exp(g(|x|)) with g(0) = 0, g > 0 on (0, inf), and a
power-like envelope

    alpha1 * g(s)/s  <=  g'(s)  <=  alpha2 * g(s)/s,   s > 0,

for envelope exponents 0 < alpha1 <= alpha2.  Built-ins: the pure power
g(s) = s**alpha (alpha1 = alpha2 = alpha) and the log-corrected power
g(s) = s**alpha * log(c + s)**beta (alpha1 = alpha, alpha2 = alpha + beta).

Derived objects: the smoothed exponent G(s) = (1/s) * int_0^s g, its
derivative lam(s) = G'(s), the inverse of g, and validators for every
structural inequality the downstream constants rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import quadrature
from .errors import (
    InvalidParameterError,
    NumericFailureError,
    OutOfRangeError,
    PreconditionError,
)

KIND_POWER = "power"
KIND_ZYGMUND = "zygmund"
KIND_CUSTOM = "custom"
KIND_UNWEIGHTED = "unweighted"

#: relative tolerance of the envelope validator
ENVELOPE_RTOL = 1e-10
#: |g(s) - z| <= INVERT_RTOL * max(1, z) for the inverse
INVERT_RTOL = 1e-12
#: relative finite-difference step for monotonicity checks
FD_REL_STEP = 1e-5
#: relative truncation tolerance for finite-difference slopes
FD_SLOPE_RTOL = 1e-6


@dataclass(frozen=True)
class WeightSpec:
    """Immutable weight exponent with declared envelope exponents.

    ``g_eval`` and ``g_prime`` must be vectorized over numpy arrays.
    ``g_inverse`` is an optional closed-form inverse (set for powers).
    All operations are pure, so instances are safe to share across
    threads.
    """

    kind: str
    alpha1: float
    alpha2: float
    g_eval: Callable[[np.ndarray], np.ndarray]
    g_prime: Callable[[np.ndarray], np.ndarray]
    domain_cap: float = 1e15
    g_inverse: Callable[[float], float] | None = None
    params: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind != KIND_UNWEIGHTED:
            if not (0 < self.alpha1 <= self.alpha2):
                raise InvalidParameterError(
                    "envelope exponents must satisfy 0 < alpha1 <= alpha2, "
                    f"got ({self.alpha1}, {self.alpha2})"
                )
            if abs(self.g(0.0)) > 0.0:
                raise InvalidParameterError("weight exponent must satisfy g(0) = 0")
            if not self.g(1.0) > 0.0:
                raise InvalidParameterError("weight exponent must satisfy g(s) > 0 for s > 0")

    # -- basic evaluations -------------------------------------------------

    def g(self, s):
        return self.g_eval(np.asarray(s, dtype=float))

    def gp(self, s):
        return self.g_prime(np.asarray(s, dtype=float))

    @property
    def is_weighted(self) -> bool:
        return self.kind != KIND_UNWEIGHTED

    def label(self) -> str:
        if self.kind == KIND_POWER:
            return f"power(alpha={self.params['alpha']:g})"
        if self.kind == KIND_ZYGMUND:
            p = self.params
            return f"zygmund(alpha={p['alpha']:g},beta={p['beta']:g},c={p['c']:g})"
        return self.kind

    # -- primitive of g and the smoothed exponent --------------------------

    def _primitive_anchors(self) -> tuple[np.ndarray, np.ndarray]:
        """Cached cumulative integral of g on a geometric anchor grid.

        Anchors are ~10 per decade over [1e-12, 1e16]; a single 20-point
        panel from the nearest anchor then recovers int_0^s g to machine
        precision for arbitrary s (g is smooth between anchors; the
        branch point at 0 sits inside the first adaptive stub).
        """
        anchors = self._cache.get("anchors")
        if anchors is None:
            s_grid = np.geomspace(1e-12, 1e16, 281)
            stub, _ = quadrature.adaptive(self.g_eval, 0.0, s_grid[0], rel_tol=1e-13)
            cum = quadrature.cumulative(self.g_eval, s_grid, rel_tol=1e-13) + stub
            anchors = (s_grid, cum)
            self._cache["anchors"] = anchors
        return anchors

    def g_primitive(self, s: float, rel_tol: float = 1e-12) -> float:
        """int_0^s g(z) dz (closed form for powers, anchored panels else).

        Near 0 the integrand is graded geometrically: g(z) <= g(1) * z**alpha1
        for z < 1 keeps the stub benign.
        """
        if s < 0:
            raise InvalidParameterError("primitive requires s >= 0")
        if s == 0.0:
            return 0.0
        if self.kind == KIND_POWER:
            a = self.params["alpha"]
            return s ** (a + 1.0) / (a + 1.0)
        if self.kind == KIND_UNWEIGHTED:
            return 0.0
        s_grid, cum = self._primitive_anchors()
        if s < s_grid[0]:
            val, _ = quadrature.adaptive(self.g_eval, 0.0, s, rel_tol=rel_tol)
            return val
        if s > s_grid[-1]:
            raise InvalidParameterError(f"primitive tabulation capped at {s_grid[-1]:g}")
        idx = int(np.searchsorted(s_grid, s, side="right") - 1)
        return float(cum[idx]) + quadrature.gl_fixed(self.g_eval, float(s_grid[idx]), s)

    def g_primitive_many(self, ss: np.ndarray, rel_tol: float = 1e-12) -> np.ndarray:
        """Vectorized primitive over an array of radii."""
        ss = np.atleast_1d(np.asarray(ss, dtype=float))
        if np.any(ss < 0):
            raise InvalidParameterError("primitive requires s >= 0")
        if self.kind == KIND_POWER:
            a = self.params["alpha"]
            return np.power(ss, a + 1.0) / (a + 1.0)
        if self.kind == KIND_UNWEIGHTED:
            return np.zeros_like(ss)
        return np.array([self.g_primitive(float(s), rel_tol=rel_tol) for s in ss])


@dataclass(frozen=True)
class EquationParams:
    """Parameters (N, p, m) of the doubly degenerate equation.

    The degeneracy conditions p > 1 and p + m - 3 > 0 are always
    enforced; 1 < p < N and the envelope cap on alpha2 are enforced when
    the parameters are paired with a weight (``validate_with_weight``),
    so that the unweighted calibration mode can run with N = 1.
    """

    dim_n: int
    p: float
    m: float

    def __post_init__(self):
        if self.dim_n < 1 or int(self.dim_n) != self.dim_n:
            raise InvalidParameterError(f"dimension must be a positive integer, got {self.dim_n}")
        if not self.p > 1:
            raise InvalidParameterError(f"requires p > 1, got p={self.p}")
        if not self.p + self.m - 3 > 0:
            raise InvalidParameterError(
                f"degeneracy condition requires p + m - 3 > 0, got {self.p + self.m - 3}"
            )

    @property
    def beta(self) -> float:
        """Exponent of the normalizing change of variable, (p-1)/(p+m-2)."""
        return (self.p - 1.0) / (self.p + self.m - 2.0)

    @property
    def kappa(self) -> float:
        """Shorthand for p + m - 3, the scaling exponent of time."""
        return self.p + self.m - 3.0

    def validate_with_weight(self, w: WeightSpec) -> None:
        if not w.is_weighted:
            return
        if self.dim_n < 2:
            raise InvalidParameterError(
                f"weighted runs require dimension N >= 2, got N={self.dim_n}"
            )
        if not self.p < self.dim_n:
            raise InvalidParameterError(
                f"requires 1 < p < N, got p={self.p}, N={self.dim_n}"
            )
        cap = min(self.dim_n, self.p / (self.p - 1.0))
        if not (0 < w.alpha2 < cap):
            raise InvalidParameterError(
                "envelope exponent range requires 0 < alpha2 < min(N, p/(p-1)) "
                f"= {cap:g}, got alpha2={w.alpha2}"
            )


# ---------------------------------------------------------------------------
# constructors


def make_power_weight(alpha: float, domain_cap: float = 1e15) -> WeightSpec:
    """g(s) = s**alpha; saturates the envelope with alpha1 = alpha2 = alpha."""
    if not alpha > 0:
        raise InvalidParameterError(f"power exponent must be positive, got {alpha}")

    def g(s):
        return np.power(s, alpha)

    def gp(s):
        return alpha * np.power(s, alpha - 1.0)

    return WeightSpec(
        kind=KIND_POWER, alpha1=alpha, alpha2=alpha,
        g_eval=g, g_prime=gp, domain_cap=domain_cap,
        g_inverse=lambda z: z ** (1.0 / alpha),
        params={"alpha": alpha},
    )


def make_zygmund_weight(alpha: float, beta: float, c: float,
                        domain_cap: float = 1e15) -> WeightSpec:
    """g(s) = s**alpha * log(c + s)**beta with alpha1 = alpha, alpha2 = alpha + beta."""
    if not alpha > 0:
        raise InvalidParameterError(f"requires alpha > 0, got {alpha}")
    if not beta > 0:
        raise InvalidParameterError(f"requires beta > 0, got {beta}")
    if not c > 1:
        raise InvalidParameterError(f"requires c > 1, got c={c}")

    def g(s):
        s = np.asarray(s, dtype=float)
        return np.power(s, alpha) * np.power(np.log(c + s), beta)

    def gp(s):
        s = np.asarray(s, dtype=float)
        lg = np.log(c + s)
        return np.power(s, alpha - 1.0) * np.power(lg, beta - 1.0) * (
            alpha * lg + beta * s / (c + s)
        )

    return WeightSpec(
        kind=KIND_ZYGMUND, alpha1=alpha, alpha2=alpha + beta,
        g_eval=g, g_prime=gp, domain_cap=domain_cap,
        params={"alpha": alpha, "beta": beta, "c": c},
    )


def make_custom_weight(g: Callable, g_prime: Callable, alpha1: float, alpha2: float,
                       domain_cap: float = 1e15) -> WeightSpec:
    """Wrap user-supplied g, g' with *declared* envelope exponents.

    The exponents are validated against samples by ``validate_envelope``,
    never inferred: samples cannot certify a global envelope.
    """
    return WeightSpec(
        kind=KIND_CUSTOM, alpha1=alpha1, alpha2=alpha2,
        g_eval=lambda s: np.asarray(g(np.asarray(s, dtype=float)), dtype=float),
        g_prime=lambda s: np.asarray(g_prime(np.asarray(s, dtype=float)), dtype=float),
        domain_cap=domain_cap, params={},
    )


def make_unweighted() -> WeightSpec:
    """g = 0 (no weight).  Only for solver calibration against classical
    self-similar decay; every weighted-theory operation rejects it."""
    zero = lambda s: np.zeros_like(np.asarray(s, dtype=float))
    return WeightSpec(
        kind=KIND_UNWEIGHTED, alpha1=0.0, alpha2=0.0,
        g_eval=zero, g_prime=zero, params={},
    )


def _require_weighted(w: WeightSpec, what: str) -> None:
    if not w.is_weighted:
        raise PreconditionError(f"{what} is undefined for the unweighted (g = 0) mode")


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a sampled validation; ``passed`` iff worst violation <= tol."""

    name: str
    passed: bool
    worst_violation: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    def to_row(self) -> dict:
        return {
            "check": self.name,
            "verdict": "PASS" if self.passed else "FAIL",
            "worst_violation": self.worst_violation,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class ConditionReport:
    """Exact evaluation of the closed-form structural inequalities."""

    flux_monotone_ok: bool      # (N-p)a1/(a1+1) + (p-1)(a1 - a2/(a2+1)) >= 0
    dual_monotone_ok: bool      # (N+1)a1/(a1+1) >= a2
    sup_decay_range_ok: bool    # 1 > a2 >= a1 >= a2/(a2+1)
    alpha2_below_one: bool
    alpha2_below_cap: bool      # a2 < min(N, p/(p-1))
    values: dict = field(default_factory=dict)

    def all_ok(self) -> bool:
        return (self.flux_monotone_ok and self.dual_monotone_ok
                and self.sup_decay_range_ok and self.alpha2_below_one
                and self.alpha2_below_cap)


# ---------------------------------------------------------------------------
# operations


def validate_envelope(w: WeightSpec, samples: Sequence[float],
                      rtol: float = ENVELOPE_RTOL) -> ValidationReport:
    """Check alpha1*g(s)/s <= g'(s) <= alpha2*g(s)/s on the sample grid.

    Violations are measured relative to the bound being violated; the
    report carries the worst one.
    """
    _require_weighted(w, "the envelope condition")
    s = np.asarray(samples, dtype=float)
    if s.ndim != 1 or s.size == 0 or np.any(s <= 0) or np.any(np.diff(s) <= 0):
        raise InvalidParameterError("samples must be a strictly positive sorted grid")
    ratio = w.g(s) / s
    gp = w.gp(s)
    low = w.alpha1 * ratio
    high = w.alpha2 * ratio
    viol_low = np.maximum(0.0, (low - gp) / low)
    viol_high = np.maximum(0.0, (gp - high) / high)
    worst = float(max(viol_low.max(), viol_high.max()))
    worst_at = float(s[np.argmax(np.maximum(viol_low, viol_high))])
    return ValidationReport(
        name="envelope alpha1*g(s)/s <= g'(s) <= alpha2*g(s)/s",
        passed=worst <= rtol,
        worst_violation=worst,
        tolerance=rtol,
        detail={"worst_at": worst_at, "n_samples": int(s.size)},
    )


def big_g(w: WeightSpec, s: float, rel_tol: float = 1e-12) -> float:
    """Smoothed exponent G(s) = (1/s) int_0^s g(z) dz, s > 0."""
    _require_weighted(w, "the smoothed exponent")
    if not s > 0:
        raise InvalidParameterError("requires s > 0")
    return w.g_primitive(s, rel_tol=rel_tol) / s


def lambda_(w: WeightSpec, s: float) -> float:
    """lam(s) = G'(s) = (g(s) - G(s)) / s, with lam(0) = 0."""
    _require_weighted(w, "lam")
    if s < 0:
        raise InvalidParameterError("requires s >= 0")
    if s == 0.0:
        return 0.0
    return (float(w.g(s)) - big_g(w, s)) / s


def lambda_prime(w: WeightSpec, s: float) -> float:
    """lam'(s) = G''(s) = (2G(s) - 2g(s) + s g'(s)) / s**2."""
    _require_weighted(w, "lam'")
    if not s > 0:
        raise InvalidParameterError("requires s > 0")
    return (2.0 * big_g(w, s) - 2.0 * float(w.g(s)) + s * float(w.gp(s))) / s ** 2


def lambda_many(w: WeightSpec, ss: np.ndarray) -> np.ndarray:
    """Vectorized lam over an array of radii (0 allowed)."""
    _require_weighted(w, "lam")
    ss = np.atleast_1d(np.asarray(ss, dtype=float))
    out = np.zeros_like(ss)
    pos = ss > 0
    if np.any(pos):
        sp = ss[pos]
        prim = w.g_primitive_many(sp)
        out[pos] = (w.g(sp) - prim / sp) / sp
    return out


def invert_g(w: WeightSpec, z: float) -> float:
    """Unique s > 0 with g(s) = z (g is strictly increasing).

    Geometric bracket expansion, bisection, then Newton polish; accuracy
    |g(s) - z| <= 1e-12 * max(1, z).
    """
    _require_weighted(w, "inversion")
    if not z > 0:
        raise InvalidParameterError("requires z > 0")
    if w.g_inverse is not None:
        return float(w.g_inverse(z))
    tol = INVERT_RTOL * max(1.0, z)
    lo, hi = 0.0, 1.0
    extension_cap = w.domain_cap * 1e6
    while float(w.g(hi)) < z:
        lo = hi
        hi *= 2.0
        if hi > extension_cap:
            raise OutOfRangeError(
                f"inversion target z={z:g} exceeds g({extension_cap:g})"
            )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if float(w.g(mid)) < z:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    s = 0.5 * (lo + hi)
    # Newton polish (monotone g: guard the iterate inside the bracket)
    for _ in range(4):
        err = float(w.g(s)) - z
        if abs(err) <= tol:
            return s
        deriv = float(w.gp(s))
        if not deriv > 0:
            break
        step = err / deriv
        s_new = s - step
        if not (lo <= s_new <= hi):
            break
        s = s_new
    if abs(float(w.g(s)) - z) > tol:
        raise NumericFailureError(
            f"inversion stalled at s={s:g} for z={z:g}",
            achieved=abs(float(w.g(s)) - z),
        )
    return s


def check_structural_conditions(w: WeightSpec, eq: EquationParams) -> ConditionReport:
    """Evaluate the closed-form inequalities gating the monotone quantities,
    the decay-envelope range and the envelope cap."""
    _require_weighted(w, "structural conditions")
    a1, a2 = w.alpha1, w.alpha2
    n, p = eq.dim_n, eq.p
    flux_lhs = (n - p) * a1 / (a1 + 1.0) + (p - 1.0) * (a1 - a2 / (a2 + 1.0))
    dual_lhs = (n + 1.0) * a1 / (a1 + 1.0)
    cap = min(float(n), p / (p - 1.0))
    return ConditionReport(
        flux_monotone_ok=flux_lhs >= 0.0,
        dual_monotone_ok=dual_lhs >= a2,
        sup_decay_range_ok=(1.0 > a2 >= a1 >= a2 / (a2 + 1.0)),
        alpha2_below_one=a2 < 1.0,
        alpha2_below_cap=a2 < cap,
        values={
            "flux_monotone_lhs": flux_lhs,
            "dual_monotone_lhs": dual_lhs,
            "alpha_ratio_floor": a2 / (a2 + 1.0),
            "alpha2_cap": cap,
        },
    )


def _fd_slope(fn: Callable[[np.ndarray], np.ndarray], s: np.ndarray) -> np.ndarray:
    h = FD_REL_STEP * s
    return (fn(s + h) - fn(s - h)) / (2.0 * h)


def check_monotone_quantities(w: WeightSpec, eq: EquationParams,
                              grid: Sequence[float],
                              rtol: float = FD_SLOPE_RTOL) -> ValidationReport:
    """Finite-difference monotonicity of the five derived radial quantities.

    Non-decreasing: lam(s)**(p-1) s**(N-1),  lam(s)**-1 s**(N-1),  g(s) s**-alpha1.
    Non-increasing: lam(s)**-1 s**(-(N-1)/(p-1)),  g(s) s**-alpha2.

    The check always runs and reports the worst signed violation
    relative to the local quantity scale; gating conditions are reported
    alongside, not enforced.
    """
    _require_weighted(w, "monotone quantities")
    s = np.asarray(grid, dtype=float)
    if np.any(s <= 0):
        raise InvalidParameterError("grid must be strictly positive")
    n, p = eq.dim_n, eq.p

    def lam_vec(x):
        return lambda_many(w, x)

    quantities = [
        ("lam^(p-1) s^(N-1) non-decreasing", +1,
         lambda x: lam_vec(x) ** (p - 1.0) * x ** (n - 1.0)),
        ("lam^-1 s^(-(N-1)/(p-1)) non-increasing", -1,
         lambda x: lam_vec(x) ** -1.0 * x ** (-(n - 1.0) / (p - 1.0))),
        ("lam^-1 s^(N-1) non-decreasing", +1,
         lambda x: lam_vec(x) ** -1.0 * x ** (n - 1.0)),
        ("g(s) s^-alpha1 non-decreasing", +1,
         lambda x: w.g(x) * x ** (-w.alpha1)),
        ("g(s) s^-alpha2 non-increasing", -1,
         lambda x: w.g(x) * x ** (-w.alpha2)),
    ]
    worst = 0.0
    detail = {}
    for name, sign, fn in quantities:
        slope = sign * _fd_slope(fn, s)
        scale = np.abs(fn(s)) / s  # natural slope scale of the quantity
        viol = float(np.max(-slope / scale))
        detail[name] = viol
        worst = max(worst, viol)
    return ValidationReport(
        name="monotone radial quantities (finite differences)",
        passed=worst <= rtol,
        worst_violation=worst,
        tolerance=rtol,
        detail=detail,
    )


def check_sandwich(w: WeightSpec, samples: Sequence[float],
                   rtol: float = 1e-10) -> ValidationReport:
    """g(s)s/(alpha2+1) <= int_0^s g <= g(s)s/(alpha1+1) on the samples."""
    _require_weighted(w, "the primitive sandwich")
    s = np.asarray(samples, dtype=float)
    prim = w.g_primitive_many(s)
    gs = np.asarray(w.g(s), dtype=float) * s
    lo = gs / (w.alpha2 + 1.0)
    hi = gs / (w.alpha1 + 1.0)
    viol = np.maximum((lo - prim) / lo, (prim - hi) / hi)
    worst = float(np.max(np.maximum(viol, 0.0)))
    return ValidationReport(
        name="primitive sandwich g(s)s/(a2+1) <= int_0^s g <= g(s)s/(a1+1)",
        passed=worst <= rtol, worst_violation=worst, tolerance=rtol,
    )


def check_lambda_bounds(w: WeightSpec, samples: Sequence[float],
                        rtol: float = 1e-10) -> ValidationReport:
    """a1/(a1+1) g(s)/s <= lam(s) <= a2/(a2+1) g(s)/s on the samples."""
    _require_weighted(w, "the lam bounds")
    s = np.asarray(samples, dtype=float)
    lam = lambda_many(w, s)
    ratio = np.asarray(w.g(s), dtype=float) / s
    lo = w.alpha1 / (w.alpha1 + 1.0) * ratio
    hi = w.alpha2 / (w.alpha2 + 1.0) * ratio
    viol = np.maximum((lo - lam) / lo, (lam - hi) / hi)
    worst = float(np.max(np.maximum(viol, 0.0)))
    return ValidationReport(
        name="lam bounds a1/(a1+1) g/s <= lam <= a2/(a2+1) g/s",
        passed=worst <= rtol, worst_violation=worst, tolerance=rtol,
    )


def check_inversion_roundtrip(w: WeightSpec, zs: Sequence[float]) -> ValidationReport:
    """|g(ginv(z)) - z| <= 1e-12 max(1, z) on the samples."""
    _require_weighted(w, "inversion")
    worst = 0.0
    for z in np.asarray(zs, dtype=float):
        s = invert_g(w, float(z))
        worst = max(worst, abs(float(w.g(s)) - z) / max(1.0, z))
    return ValidationReport(
        name="inversion round trip |g(ginv(z)) - z| <= tol * max(1, z)",
        passed=worst <= INVERT_RTOL, worst_violation=worst, tolerance=INVERT_RTOL,
    )


def check_inverse_scaling(w: WeightSpec, pairs: Sequence[tuple[float, float]],
                          rtol: float = 1e-9) -> ValidationReport:
    """Power-like scaling of the inverse: for lam > 1,
    ginv(z) lam^(1/a2) <= ginv(z lam) <= ginv(z) lam^(1/a1), and with the
    exponents swapped for lam < 1."""
    _require_weighted(w, "inverse scaling")
    worst = 0.0
    for z, lam in pairs:
        base = invert_g(w, float(z))
        scaled = invert_g(w, float(z * lam))
        if lam > 1.0:
            lo = base * lam ** (1.0 / w.alpha2)
            hi = base * lam ** (1.0 / w.alpha1)
        else:
            lo = base * lam ** (1.0 / w.alpha1)
            hi = base * lam ** (1.0 / w.alpha2)
        worst = max(worst, (lo - scaled) / lo, (scaled - hi) / hi)
    worst = max(worst, 0.0)
    return ValidationReport(
        name="inverse scaling ginv(z) lam^(1/a2) <= ginv(z lam) <= ginv(z) lam^(1/a1)",
        passed=worst <= rtol, worst_violation=worst, tolerance=rtol,
    )


def zygmund_inverse_asymptotics(alpha: float, beta: float, c: float,
                                tau_grid: Sequence[float]) -> list[tuple[float, float]]:
    """Correction factor A(tau) of the inverse of the log-corrected power.

    Writing s = g^(-1)(tau) = alpha**(beta/alpha) tau**(1/alpha)
    (log tau)**(-beta/alpha) A(tau), returns [(tau, A(tau))]; A -> 1 as
    tau grows.  beta = 0 degenerates to the pure power, where A = 1
    exactly.
    """
    if beta < 0:
        raise InvalidParameterError("requires beta >= 0")
    taus = np.asarray(tau_grid, dtype=float)
    if np.any(taus <= math.e):
        raise InvalidParameterError("requires tau > e so that log(tau) > 1")
    if beta == 0.0:
        w = make_power_weight(alpha)
    else:
        w = make_zygmund_weight(alpha, beta, c)
    out = []
    for tau in taus:
        s = invert_g(w, float(tau))
        a_val = (s * alpha ** (-beta / alpha) * tau ** (-1.0 / alpha)
                 * math.log(tau) ** (beta / alpha))
        out.append((float(tau), float(a_val)))
    return out

"""Adaptive composite Gauss-Legendre quadrature.

All integrands are expected to be vectorized over numpy arrays.  The
global strategy keeps a worklist of panels with per-panel error
estimates (order-10 vs order-20 rule difference) and refines the worst
panel until the summed estimate meets the relative tolerance.  This is
the single quadrature primitive behind the smoothed weight exponent,
the weighted radial measures and the inequality criteria.
"""

from __future__ import annotations

import heapq
from typing import Callable

import numpy as np

from .errors import NumericFailureError

_NODE_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}

#: hard cap on the number of panels before giving up
MAX_PANELS = 20_000


def _nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _NODE_CACHE:
        _NODE_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _NODE_CACHE[order]


def gl_fixed(f: Callable, a: float, b: float, order: int = 20) -> float:
    """Single fixed-order Gauss-Legendre panel on [a, b]."""
    x, w = _nodes(order)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(np.dot(w, f(mid + half * x)))


def _panel(f: Callable, a: float, b: float) -> tuple[float, float]:
    """Return (value, error estimate) from the 10/20 point rule pair."""
    coarse = gl_fixed(f, a, b, order=10)
    fine = gl_fixed(f, a, b, order=20)
    return fine, abs(fine - coarse)


def adaptive(
    f: Callable,
    a: float,
    b: float,
    rel_tol: float = 1e-12,
    abs_floor: float = 0.0,
    max_panels: int = MAX_PANELS,
) -> tuple[float, float]:
    """Integrate f over [a, b] to relative tolerance ``rel_tol``.

    Returns (value, error_estimate).  Raises NumericFailureError (with
    the achieved estimate attached) if the panel budget is exhausted.
    """
    if a == b:
        return 0.0, 0.0
    if b < a:
        val, err = adaptive(f, b, a, rel_tol, abs_floor, max_panels)
        return -val, err

    val, err = _panel(f, a, b)
    # heap entries: (-err, a, b, val); tie-break by interval bounds
    heap = [(-err, a, b, val)]
    total_val = val
    total_err = err
    n_panels = 1
    stagnant = 0
    while total_err > max(rel_tol * abs(total_val), abs_floor, 1e-300):
        if n_panels >= max_panels or stagnant >= 64:
            raise NumericFailureError(
                f"quadrature did not converge on [{a:g}, {b:g}]: "
                f"estimated error {total_err:.3e} after {n_panels} panels"
                + (" (stalled; integrand may be noisy at this tolerance)"
                   if stagnant >= 64 else ""),
                achieved=total_err,
            )
        neg_err, pa, pb, pval = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        if mid <= pa or mid >= pb:
            # interval at floating point resolution; accept as is
            heapq.heappush(heap, (0.0, pa, pb, pval))
            total_err += neg_err  # remove this panel's error from the budget
            if total_err <= max(rel_tol * abs(total_val), abs_floor, 1e-300):
                break
            continue
        lval, lerr = _panel(f, pa, mid)
        rval, rerr = _panel(f, mid, pb)
        total_val += lval + rval - pval
        total_err += lerr + rerr + neg_err
        # a split that barely reduces the estimate signals an integrand
        # evaluated with cancellation noise: bail out before burning panels
        if -neg_err > 0 and (lerr + rerr) > 0.95 * (-neg_err):
            stagnant += 1
        else:
            stagnant = 0
        heapq.heappush(heap, (-lerr, pa, mid, lval))
        heapq.heappush(heap, (-rerr, mid, pb, rval))
        n_panels += 1
    return total_val, total_err


def cumulative(
    f: Callable,
    breakpoints: np.ndarray,
    rel_tol: float = 1e-12,
) -> np.ndarray:
    """Cumulative integrals ``I_k = int_{b_0}^{b_k} f`` along sorted breakpoints.

    Each consecutive segment is integrated adaptively; the result has the
    same length as ``breakpoints`` with I_0 = 0.
    """
    bp = np.asarray(breakpoints, dtype=float)
    if bp.ndim != 1 or bp.size < 1:
        raise ValueError("breakpoints must be a 1-d array")
    if np.any(np.diff(bp) < 0):
        raise ValueError("breakpoints must be sorted ascending")
    out = np.empty(bp.size)
    out[0] = 0.0
    acc = 0.0
    for k in range(1, bp.size):
        seg, _ = adaptive(f, bp[k - 1], bp[k], rel_tol=rel_tol,
                          abs_floor=rel_tol * (abs(acc) + 1e-300))
        acc += seg
        out[k] = acc
    return out


def geometric_breakpoints(a: float, b: float, n_decades_inner: int = 12) -> np.ndarray:
    """Breakpoints on [a, b] refined geometrically toward a (a may be 0).

    Useful for integrands with a branch-point singularity at the left
    endpoint, e.g. s**alpha with 0 < alpha < 1.
    """
    if b <= a:
        raise ValueError("need b > a")
    if a > 0 and b / a < 4.0:
        return np.array([a, b])
    lo = b * 2.0 ** (-4 * n_decades_inner)
    pts = [a] if a < lo else []
    start = max(a, lo)
    ratios = np.geomspace(start, b, num=4 * n_decades_inner + 1)
    pts.extend(float(r) for r in ratios)
    return np.unique(np.asarray(pts))

"""Predicted large-time decay and support envelopes.

For admissible weights the sup norm of solutions obeys, for large t,

    sup_env(t) = c * [ ginv(L)**p / L ]**(1/(p+m-3)) * t**(-1/(p+m-3)) / M,
    L = log(t * M**(p+m-3)),   M = weighted mass of the data,

and compactly supported data stay supported in the ball of radius

    support_env(t) = c * ginv( log(e + t * M**(p+m-3)) ).

The constant c is not explicit; envelopes are used as shape predictions
with c fitted from trajectories (default 1).  For the log-corrected
power weight both the exact forms above and their closed asymptotic
simplifications are provided so their ratio can be tested for
convergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EnvelopeUndefinedError, InvalidParameterError, PreconditionError
from .weights import (
    KIND_POWER,
    KIND_ZYGMUND,
    EquationParams,
    WeightSpec,
    check_structural_conditions,
    invert_g,
)

#: large-time validity gate: log(t * M**kappa) must reach this value
LOG_GATE = 2.0


@dataclass(frozen=True)
class EnvelopeParams:
    eq: EquationParams
    weight: WeightSpec
    mass0: float
    c_prefactor: float = 1.0

    def __post_init__(self):
        if not self.mass0 > 0:
            raise InvalidParameterError("mass0 must be positive")
        if not self.c_prefactor > 0:
            raise InvalidParameterError("c_prefactor must be positive")
        if not self.weight.is_weighted:
            raise PreconditionError("envelopes are undefined for the unweighted mode")

    def log_arg(self, t: float) -> float:
        return t * self.mass0 ** self.eq.kappa


def sup_envelope(par: EnvelopeParams, t: float) -> float:
    """Decay envelope of the sup norm at time t (large-t validity gated)."""
    if not t > 0:
        raise InvalidParameterError("requires t > 0")
    arg = par.log_arg(t)
    if arg <= 1.0 or math.log(arg) < LOG_GATE:
        raise EnvelopeUndefinedError(
            f"sup envelope needs log(t * mass**(p+m-3)) >= {LOG_GATE}, got t={t:g}"
        )
    big_l = math.log(arg)
    kappa = par.eq.kappa
    s = invert_g(par.weight, big_l)
    return (par.c_prefactor
            * (s ** par.eq.p / big_l) ** (1.0 / kappa)
            * t ** (-1.0 / kappa)
            / par.mass0)


def support_envelope(par: EnvelopeParams, t: float) -> float:
    """Support-radius envelope at time t >= 0 (defined for all t)."""
    if t < 0:
        raise InvalidParameterError("requires t >= 0")
    big_l = math.log(math.e + par.log_arg(t))
    return par.c_prefactor * invert_g(par.weight, big_l)


def power_sup_closed_form(par: EnvelopeParams, t: float) -> float:
    """Closed form of sup_envelope for the pure power weight, exponent
    (p - alpha)/(alpha*(p+m-3)) on the logarithm."""
    if par.weight.kind != KIND_POWER:
        raise InvalidParameterError("closed form requires the power weight")
    alpha = par.weight.params["alpha"]
    kappa = par.eq.kappa
    big_l = math.log(par.log_arg(t))
    expo = (par.eq.p - alpha) / (alpha * kappa)
    return par.c_prefactor * big_l ** expo * t ** (-1.0 / kappa) / par.mass0


def power_support_closed_form(par: EnvelopeParams, t: float) -> float:
    """Closed form of support_envelope for the pure power weight,
    log(e + t * M**(p+m-3)) to the power 1/alpha."""
    if par.weight.kind != KIND_POWER:
        raise InvalidParameterError("closed form requires the power weight")
    alpha = par.weight.params["alpha"]
    return par.c_prefactor * math.log(math.e + par.log_arg(t)) ** (1.0 / alpha)


@dataclass(frozen=True)
class ZygmundEnvelopes:
    """Exact and asymptotic envelope values at one time."""

    t: float
    support_exact: float
    support_asymptotic: float
    sup_exact: float | None = None
    sup_asymptotic: float | None = None


def zygmund_envelopes(par: EnvelopeParams, t: float,
                      with_sup: bool = False) -> ZygmundEnvelopes:
    """Exact (through the numeric inverse) and asymptotic closed forms of
    the envelopes for the log-corrected power weight.

    The asymptotic forms require unit mass and t with log(log(t)) > 1.
    The sup forms additionally require alpha + beta < 1 and
    alpha > (alpha+beta)/(alpha+beta+1); they are only evaluated when
    ``with_sup`` is set, and the range is then enforced.
    """
    if par.weight.kind != KIND_ZYGMUND:
        raise InvalidParameterError("requires the log-corrected power weight")
    if par.mass0 != 1.0:
        raise PreconditionError("asymptotic forms are stated for unit mass")
    if t <= math.e or math.log(math.log(t)) <= 1.0:
        raise EnvelopeUndefinedError("requires log(log(t)) > 1")
    alpha = par.weight.params["alpha"]
    beta = par.weight.params["beta"]
    kappa = par.eq.kappa
    p = par.eq.p

    lt = math.log(t)
    llt = math.log(lt)
    support_asym = par.c_prefactor * (lt / llt ** beta) ** (1.0 / alpha)
    support_ex = support_envelope(par, t)

    sup_ex = None
    sup_asym = None
    if with_sup:
        a2 = alpha + beta
        if not a2 < 1.0:
            raise PreconditionError(
                f"sup envelope range requires alpha + beta < 1, got {a2:g}"
            )
        if not alpha > a2 / (a2 + 1.0):
            raise PreconditionError(
                "sup envelope range requires alpha > (alpha+beta)/(alpha+beta+1)"
            )
        sup_ex = sup_envelope(par, t)
        sup_asym = (par.c_prefactor
                    * ((1.0 / lt) * (lt / llt ** beta) ** (p / alpha)) ** (1.0 / kappa)
                    * t ** (-1.0 / kappa))
    return ZygmundEnvelopes(
        t=t,
        support_exact=support_ex,
        support_asymptotic=support_asym,
        sup_exact=sup_ex,
        sup_asymptotic=sup_asym,
    )


def require_sup_envelope_range(par: EnvelopeParams) -> None:
    """Raise unless 1 > alpha2 >= alpha1 >= alpha2/(alpha2+1)."""
    rep = check_structural_conditions(par.weight, par.eq)
    if not rep.sup_decay_range_ok:
        raise PreconditionError(
            "sup envelope requires 1 > alpha2 >= alpha1 >= alpha2/(alpha2+1), "
            f"got alpha1={par.weight.alpha1:g}, alpha2={par.weight.alpha2:g}"
        )

"""Prime-distribution sums over global fields.

Sums run over finite primes ordered by norm, and the floating accumulation
always happens in that order so results are bit-stable.  Logarithms are
base q for function fields and natural otherwise; for function fields the
cutoff Q is snapped down to a power of q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import constants
from .fields import FunctionField


def _log(field, x):
    if isinstance(field, FunctionField):
        return math.log(x, field.q)
    return math.log(x)


@dataclass(frozen=True)
class PrimeSumReport:
    field: str
    Q: float
    value: float
    reference: float
    deviation: float


def mertens_sum(field, Q):
    """Sum of log N(p)/N(p) over N(p) <= Q; tracks log Q."""
    total = 0.0
    for p in field.primes_upto(Q):
        total += _log(field, p.norm) / p.norm
    return total


def mertens_report(field, Q):
    value = mertens_sum(field, Q)
    ref = _log(field, Q)
    return PrimeSumReport(field.name, Q, value, ref, abs(value - ref))


def chebyshev_sum(field, Q):
    """Sum of log N(p) over N(p) <= Q."""
    total = 0.0
    for p in field.primes_upto(Q):
        total += _log(field, p.norm)
    return total


def bertrand_window(field, Q):
    """Sum of log N(p) over Q <= N(p) <= 2Q; the Bertrand-style window."""
    total = 0.0
    for p in field.primes_upto(2 * Q):
        if p.norm >= Q:
            total += _log(field, p.norm)
    return total


def tail_three_halves(field, Q, cutoff):
    """Truncated sum of log N(p)/N(p)^(3/2) over Q < N(p) <= cutoff."""
    if cutoff <= Q:
        raise ValueError("cutoff must exceed Q")
    total = 0.0
    for p in field.primes_upto(cutoff):
        if p.norm > Q:
            total += _log(field, p.norm) / p.norm**1.5
    return total


def divisor_log_sum(field, x):
    """(sum over p|x of log N(p)/N(p), bound, ok) for integral non-unit x.

    The bound is max(log log N_K(x), 0) + C with the pinned constant C.
    """
    if not isinstance(x, type(field.ring_one())):
        x = field.to_ring(x)
    if field.ring_is_zero(x):
        raise ZeroDivisionError("divisor sum of zero")
    if field.ring_is_unit(x):
        raise ValueError("divisor sum of a unit")
    total = 0.0
    for prime, _ in sorted(field.factor_ring(x), key=lambda t: t[0].norm):
        total += _log(field, prime.norm) / prime.norm
    nx = field.norm(x)
    logn = _log(field, nx)
    bound = max(_log(field, logn) if logn > 0 else 0.0, 0.0) + constants.DIVISOR_C
    return total, bound, total <= bound

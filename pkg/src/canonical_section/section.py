"""The canonical section on 0 < nu < e/(e+1), by ultrametric fixed-point iteration.

Given t of valuation a, the canonical preimage is the fixed point of

    x <- t - [(y u(x, y))^e + f(y) + p g(x, y)],   y = p/x,

started at x = t.  On the circle val(x) = a every correction term exceeds a
by at least gamma = min(e - (e+1)a, 1 - a) and the map contracts distances
by the same amount, so the update's valuation certifies the distance to the
fixed point.  For a >= e/(e+1) gamma <= 0 and no such point exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .calculus import Z_INF, OrdinaryLocusPoint
from .errors import OrdinaryPoint, OutOfRegion, PrecisionExhausted
from .model import AnnulusPoint, DiscPoint, LocalModel, _correction
from .padic import RamElem, p_over


@dataclass(frozen=True)
class SectionRun:
    point: AnnulusPoint
    iterations: int
    gamma: int
    """Contraction gain per step, in pi-digits."""
    bound: int
    """Iteration budget ceil(M / gamma) + 3."""


def contraction_digits(k: int, n: int, e: int) -> int:
    """gamma in pi-digits for val(t) = k/n."""
    return min(e * n - (e + 1) * k, n - k)


def _region_digits(m: LocalModel, P: DiscPoint) -> int:
    t = P.t
    nu = t.valuation()
    if nu == math.inf or nu >= m.boundary:
        raise OutOfRegion(f"nu_X = {nu} >= {m.boundary}: outside the canonical region")
    if nu == 0:
        raise OrdinaryPoint("nu_X = 0: the point lies on the ordinary locus")
    return t.val_digits()


def iterate_section(
    m: LocalModel,
    P: DiscPoint,
    start: RamElem | None = None,
    precision: int | None = None,
) -> SectionRun:
    k = _region_digits(m, P)
    t = P.t
    F = t.field
    gamma = contraction_digits(k, F.n, m.e)
    bound = -(-F.M // gamma) + 3
    x = t if start is None else start
    if x.val_digits() != k:
        raise ValueError("starting point must have the same valuation as t")
    for step in range(1, bound + 1):
        x_next = t - _correction(m, x, p_over(x), k)
        diff = x_next - x
        x = x_next
        if diff.is_zero():
            break
    else:
        raise PrecisionExhausted(f"no convergence within {bound} iterations")
    x = x.with_prec(diff.prec)
    if precision is not None and x.prec < precision:
        raise PrecisionExhausted(f"section point certified to {x.prec} pi-digits, {precision} requested")
    return SectionRun(AnnulusPoint(x), step, gamma, bound)


def solve_section(m: LocalModel, P: DiscPoint, precision: int | None = None) -> AnnulusPoint:
    return iterate_section(m, P, precision=precision).point


def check_reduction(m: LocalModel, P: DiscPoint, Q: AnnulusPoint) -> bool:
    """x(Q) = t(P) and y(Q) = 0 modulo p/t(P), i.e. modulo pi^(n - val t)."""
    F = P.field
    r = F.n - P.t.val_digits()
    x, y = Q.x, Q.y
    if min(x.prec, P.t.prec, y.prec) < r:
        raise PrecisionExhausted(f"need {r} pi-digits to test the reduction")
    return x.agrees_with(P.t, r) and y.agrees_with(F.zero(), r)


def total_section(m: LocalModel, target: DiscPoint | Fraction | int):
    """The glued section: symbolic on the ordinary locus, solved on the annulus.

    ``target`` is a DiscPoint, or a bare measure of singularity when only the
    ordinary locus (0) or the refusal region (>= e/(e+1)) is meant.
    """
    if isinstance(target, DiscPoint):
        nu = target.nu
        if nu == 0:
            return OrdinaryLocusPoint(Z_INF)
        return solve_section(m, target)
    nu = Fraction(target)
    if nu == 0:
        return OrdinaryLocusPoint(Z_INF)
    if nu >= m.boundary:
        raise OutOfRegion(f"nu_X = {nu} >= {m.boundary}: the section does not extend")
    if nu < 0:
        raise ValueError(f"nu must be nonnegative, got {nu}")
    raise ValueError(f"nu = {nu} is in the canonical region; pass a DiscPoint to solve")

"""Exact rational dynamics of the measures of singularity.

All quantities are ``Fraction``.  The one place the theory only gives an
inequality (nu_Y exactly e/(e+1)) is carried as ``NuValue(q, at_least=True)``
and never collapsed to an exact value.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import GridError, InconsistentInput, OutOfRange


def fmt_q(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_q(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class NuValue:
    value: Fraction
    at_least: bool = False

    def admits(self, v: Fraction) -> bool:
        """Whether an observed valuation v is consistent with this value."""
        return v >= self.value if self.at_least else v == self.value

    def __str__(self):
        return (">=" if self.at_least else "") + fmt_q(self.value)

    @classmethod
    def parse(cls, text: str) -> NuValue:
        text = text.strip()
        if text.startswith(">="):
            return cls(parse_q(text[2:]), True)
        return cls(parse_q(text))


def Exact(q) -> NuValue:
    return NuValue(Fraction(q))


def AtLeast(q) -> NuValue:
    return NuValue(Fraction(q), True)


class PointClass(Enum):
    CANONICAL = "canonical"
    ANTI_CANONICAL = "anti-canonical"
    TOO_SINGULAR = "too-singular"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class LocusLabel:
    """Which part of the rigid space a point lies on.

    ``Z`` is the ordinary locus downstairs; ``Z_inf`` and ``Z_0`` are the two
    components over it (nu_Y = 0 and 1); ``annulus`` carries the index of
    the singular point.
    """

    kind: str
    index: int | None = None

    @property
    def nu(self) -> Fraction:
        if self.kind == "Z_inf" or self.kind == "Z":
            return Fraction(0)
        if self.kind == "Z_0":
            return Fraction(1)
        raise ValueError("nu on a singular annulus depends on the point")

    def __str__(self):
        return f"annulus[{self.index}]" if self.kind == "annulus" else self.kind


Z = LocusLabel("Z")
Z_INF = LocusLabel("Z_inf")
Z_ZERO = LocusLabel("Z_0")


def singular_annulus(index: int) -> LocusLabel:
    return LocusLabel("annulus", index)


@dataclass(frozen=True)
class OrdinaryLocusPoint:
    """A point of Z_inf or Z_0, tracked only by its label."""

    label: LocusLabel

    def __post_init__(self):
        if self.label not in (Z_INF, Z_ZERO):
            raise ValueError(f"ordinary-locus points live on Z_inf or Z_0, not {self.label}")

    @property
    def nu(self) -> Fraction:
        return self.label.nu

    @property
    def image(self) -> LocusLabel:
        return Z

    def w(self) -> OrdinaryLocusPoint:
        return OrdinaryLocusPoint(Z_ZERO if self.label == Z_INF else Z_INF)


def _check_unit_interval(a) -> Fraction:
    a = Fraction(a)
    if not 0 <= a <= 1:
        raise OutOfRange(f"nu_Y = {a} is outside [0, 1]")
    return a


def pushforward_nu(a, e: int) -> NuValue:
    """nu_X(pi Q) from nu_Y(Q)."""
    a = _check_unit_interval(a)
    b = Fraction(e, e + 1)
    if a < b:
        return Exact(a)
    if a > b:
        return Exact(e * (1 - a))
    return AtLeast(b)


def classify(a, e: int) -> PointClass:
    a = _check_unit_interval(a)
    b = Fraction(e, e + 1)
    if a < b:
        return PointClass.CANONICAL
    if a > b:
        return PointClass.ANTI_CANONICAL
    return PointClass.TOO_SINGULAR


def w_nu(a) -> Fraction:
    return 1 - _check_unit_interval(a)


def w_branch(nu_x: NuValue, cls: PointClass, e: int) -> int:
    """Which of the six cases applies; raises InconsistentInput if none can."""
    lo, hi = Fraction(1, e + 1), Fraction(e, e + 1)
    a = nu_x.value
    if cls is PointClass.TOO_SINGULAR:
        if a < hi:
            raise InconsistentInput(f"too-singular point with nu_X = {nu_x} < {hi}")
        return 6
    if nu_x.at_least or not 0 <= a < hi:
        raise InconsistentInput(f"{cls} point must have exact nu_X in [0, {hi}), got {nu_x}")
    if a == 0:
        return 1
    if cls is PointClass.ANTI_CANONICAL:
        return 5
    if a < lo:
        return 2
    if a == lo:
        return 3
    return 4


def predict_w(nu_x: NuValue, cls: PointClass, e: int) -> tuple[NuValue, PointClass]:
    """(nu_X(pi Q^w), class of Q^w) from (nu_X(pi Q), class of Q)."""
    branch = w_branch(nu_x, cls, e)
    a = nu_x.value
    if branch == 1:
        swapped = PointClass.ANTI_CANONICAL if cls is PointClass.CANONICAL else PointClass.CANONICAL
        return Exact(0), swapped
    if branch == 2:
        return Exact(e * a), PointClass.ANTI_CANONICAL
    if branch == 3:
        return AtLeast(Fraction(e, e + 1)), PointClass.TOO_SINGULAR
    if branch == 4:
        return Exact(1 - a), PointClass.CANONICAL
    if branch == 5:
        return Exact(a / e), PointClass.CANONICAL
    return Exact(Fraction(1, e + 1)), PointClass.CANONICAL


# grid table ----------------------------------------------------------------

COLUMNS = ("nu_Y", "nu_X_piQ", "class", "nu_Y_Qw", "nu_X_piQw", "class_w")


@dataclass(frozen=True)
class TableRow:
    nu_y: Fraction
    nu_x: NuValue
    cls: PointClass
    nu_y_w: Fraction
    nu_x_w: NuValue
    cls_w: PointClass

    def cells(self) -> list[str]:
        return [fmt_q(self.nu_y), str(self.nu_x), str(self.cls),
                fmt_q(self.nu_y_w), str(self.nu_x_w), str(self.cls_w)]


def singularity_table(e: int, n: int) -> list[TableRow]:
    """One row per nu_Y = k/n, k = 0..n, computed through predict_w.

    Raises InconsistentInput if a row disagrees with the direct route
    pushforward_nu(1 - a), classify(1 - a).
    """
    if e < 1 or n < 1 or n % (e * (e + 1)):
        raise GridError(f"grid denominator {n} must be a positive multiple of e(e+1) = {e * (e + 1)}")
    rows = []
    for k in range(n + 1):
        a = Fraction(k, n)
        nu_x, cls = pushforward_nu(a, e), classify(a, e)
        nu_x_w, cls_w = predict_w(nu_x, cls, e)
        if (nu_x_w, cls_w) != (pushforward_nu(w_nu(a), e), classify(w_nu(a), e)):
            raise InconsistentInput(f"row nu_Y = {a}: the two routes disagree")
        rows.append(TableRow(a, nu_x, cls, w_nu(a), nu_x_w, cls_w))
    return rows


def table_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(row.cells())
    return buf.getvalue()


def table_json(rows: list[TableRow]) -> str:
    return json.dumps([dict(zip(COLUMNS, row.cells())) for row in rows], indent=2) + "\n"

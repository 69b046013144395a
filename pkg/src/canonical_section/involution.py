"""Coordinate-level involution w between two annuli, and the six-branch rule for w checked by arithmetic.

w swaps the roles of x and y: the x-coordinate of Q^w on the target
annulus is y(Q) times a unit (the twist), so nu_Y(Q^w) = 1 - nu_Y(Q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .calculus import (
    AtLeast,
    Exact,
    NuValue,
    OrdinaryLocusPoint,
    PointClass,
    classify,
    fmt_q,
    predict_w,
    pushforward_nu,
    w_branch,
)
from .errors import InconsistentInput, IndeterminateValuation, NotAUnit
from .halfring import HalfSeries, hs_eval
from .model import AnnulusPoint, LocalModel, eval_pi


@dataclass(frozen=True)
class Pairing:
    source: LocalModel
    target: LocalModel
    twist: HalfSeries | None = None

    def __post_init__(self):
        if self.source.e != self.target.e:
            raise InconsistentInput("paired annuli must have the same ramification e")
        if self.twist is not None and not self.twist.is_unit():
            raise NotAUnit("twist must be a unit")

    @property
    def e(self) -> int:
        return self.source.e

    def reversed(self) -> Pairing:
        return Pairing(self.target, self.source, self.twist)


def apply_w(pr: Pairing, Q):
    """Q^w; ordinary-locus points just swap Z_inf and Z_0."""
    if isinstance(Q, OrdinaryLocusPoint):
        return Q.w()
    y = Q.y
    if pr.twist is not None:
        y = y * hs_eval(pr.twist, Q.x)
    return AnnulusPoint(y)


def observed_nu_x(m: LocalModel, Q) -> NuValue:
    """val t(pi Q) from coordinates: exact when certified, else a lower bound."""
    if isinstance(Q, OrdinaryLocusPoint):
        return Exact(0)
    t = eval_pi(m, Q).t
    try:
        return Exact(t.valuation())
    except IndeterminateValuation:
        return AtLeast(Fraction(t.lower_val(), t.field.n))


def agrees(predicted: NuValue, observed: NuValue) -> bool:
    if not observed.at_least:
        return predicted.admits(observed.value)
    # a bare lower bound only confirms a lower-bound prediction
    return predicted.at_least and observed.value >= predicted.value


@dataclass
class BranchReport:
    nu_y: Fraction
    cls: PointClass
    nu_x: NuValue
    branch: int
    nu_y_w: Fraction
    cls_w: PointClass
    nu_x_w: NuValue
    predicted: tuple[NuValue, PointClass]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "nu_Y": fmt_q(self.nu_y),
            "class": str(self.cls),
            "nu_X_piQ": str(self.nu_x),
            "branch": self.branch,
            "nu_Y_Qw": fmt_q(self.nu_y_w),
            "class_w": str(self.cls_w),
            "nu_X_piQw": str(self.nu_x_w),
            "predicted_nu_X_piQw": str(self.predicted[0]),
            "predicted_class_w": str(self.predicted[1]),
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def check_w_branches(pr: Pairing, Q) -> BranchReport:
    """Compare the coordinate computation of (nu_X(pi Q^w), class of Q^w) with predict_w."""
    e = pr.e
    a = Q.nu
    cls = classify(a, e)
    nu_x = observed_nu_x(pr.source, Q)
    # too-singular inputs only promise a lower bound
    calc_in = AtLeast(nu_x.value) if cls is PointClass.TOO_SINGULAR and not nu_x.at_least else nu_x
    branch = w_branch(calc_in, cls, e)
    predicted = predict_w(calc_in, cls, e)
    Qw = apply_w(pr, Q)
    a_w = Qw.nu
    cls_w = classify(a_w, e)
    nu_x_w = observed_nu_x(pr.target, Qw)
    checks = {
        "pushforward_source": agrees(pushforward_nu(a, e), nu_x),
        "w_complement": a + a_w == 1,
        "class_w": cls_w is predicted[1],
        "nu_X_w": agrees(predicted[0], nu_x_w),
        "pushforward_target": agrees(pushforward_nu(a_w, e), nu_x_w),
    }
    return BranchReport(a, cls, nu_x, branch, a_w, cls_w, nu_x_w, predicted, checks)

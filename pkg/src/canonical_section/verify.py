"""Randomized verification suites behind ``canonical-section verify``.

Every suite draws from its own ``random.Random(f"{seed}:{name}")`` so the
report depends only on (config, seed, cases).  Cases run in order of their
id; a case that raises a library error counts as a failure and its message
is kept (the first few per suite).

Arithmetic happens in an auxiliary field of degree lcm(n, 2e(e+1)) over
Q_p so that every branch of the valuation calculus has grid points.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .calculus import Z_INF, Z_ZERO, OrdinaryLocusPoint, fmt_q, pushforward_nu, singularity_table
from .config import RunConfig
from .errors import CanonicalSectionError, OutOfRegion
from .halfring import HalfSeries, hs_eval
from .involution import Pairing, agrees, apply_w, check_w_branches, observed_nu_x
from .model import (
    DiscPoint,
    LocalModel,
    eval_pi,
    expected_fiber,
    fiber_valuations,
    random_annulus_point,
    random_model,
    random_series,
    validate,
)
from .padic import FieldDesc, RamElem, invert, make_field
from .section import check_reduction, iterate_section

KEEP_FAILURES = 5

SUITES = (
    "validate",
    "padic_laws",
    "hs_homomorphism",
    "pushforward",
    "fiber",
    "round_trip",
    "reduction",
    "refusal",
    "w_complement",
    "w_branches",
    "cross_consistency",
)


@dataclass
class SuiteResult:
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, case: int, what: str = ""):
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if len(self.failures) < KEEP_FAILURES:
            self.failures.append(f"case {case}: {what or 'check failed'}")

    def to_dict(self) -> dict:
        return {"passed": self.passed, "failed": self.failed, "failures": list(self.failures)}


@dataclass
class VerifyReport:
    config: str
    seed: int
    cases: int
    p: int
    n: int
    A: int
    e: int
    suites: dict[str, SuiteResult]
    branches: dict[int, int]

    @property
    def ok(self) -> bool:
        return all(s.failed == 0 for s in self.suites.values())

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "seed": self.seed,
            "cases": self.cases,
            "field": {"p": self.p, "n": self.n, "A": self.A},
            "e": self.e,
            "suites": {name: s.to_dict() for name, s in self.suites.items()},
            "w_branches": {str(b): c for b, c in sorted(self.branches.items())},
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def verify_field(cfg: RunConfig, e: int) -> FieldDesc:
    return make_field(cfg.p, math.lcm(cfg.n, 2 * e * (e + 1)), cfg.A)


def _same(a: RamElem, b: RamElem) -> bool:
    return a.agrees_with(b, min(a.prec, b.prec))


class _Context:
    """Shared state: field, config models, and the model/pairing pickers."""

    def __init__(self, cfg: RunConfig, seed: int, cases: int):
        self.cfg, self.seed, self.cases = cfg, seed, cases
        self.pairing = cfg.make_pairing()
        self.model = self.pairing.source
        self.e = self.model.e
        self.F = verify_field(cfg, self.e)
        self.boundary = Fraction(self.e, self.e + 1)

    def rng(self, suite: str) -> random.Random:
        return random.Random(f"{self.seed}:{suite}")

    def pick_model(self, rng: random.Random, case: int) -> LocalModel:
        """Alternate between the configured model and fresh random ones."""
        if case % 2 == 0:
            return self.model
        return random_model(rng, self.cfg.p, self.e, prec=self.cfg.A)

    def pick_pairing(self, rng: random.Random, case: int) -> Pairing:
        if case % 2 == 0:
            return self.pairing
        src = random_model(rng, self.cfg.p, self.e, prec=self.cfg.A)
        tgt = random_model(rng, self.cfg.p, self.e, prec=self.cfg.A)
        return Pairing(src, tgt, random_unit_series(rng, src.p, self.cfg.A, src.D))

    def grid_below(self, rng: random.Random) -> int:
        """k with 0 < k/n < e/(e+1)."""
        top = -(-self.F.n * self.e // (self.e + 1))
        return rng.randrange(1, top)

    def grid_at_or_above(self, rng: random.Random) -> int:
        """k with e/(e+1) <= k/n <= 1."""
        low = self.F.n * self.e // (self.e + 1)
        return rng.randrange(low, self.F.n + 1)


def random_unit_series(rng: random.Random, p: int, prec: int, D: int, degree: int = 2) -> HalfSeries:
    s = random_series(rng, p, prec, D, degree, degree)
    c = s.const % p or 1
    return s + (c - s.const % p)


def _run(suite: SuiteResult, case: int, check):
    try:
        ok, what = check()
    except CanonicalSectionError as exc:
        ok, what = False, f"{type(exc).__name__}: {exc}"
    suite.record(ok, case, what)


# suites ---------------------------------------------------------------------


def suite_validate(ctx: _Context) -> SuiteResult:
    res = SuiteResult()
    for case, name in enumerate(sorted(ctx.cfg.models)):
        report = validate(ctx.cfg.model(name))
        bad = [k for k, ok in report.items() if not ok]
        res.record(not bad, case, f"model {name!r} fails {', '.join(bad)}")
    return res


def suite_padic_laws(ctx: _Context) -> SuiteResult:
    res, rng, F = SuiteResult(), ctx.rng("padic_laws"), ctx.F

    def draw():
        return F.random_element(rng, rng.randrange(0, 2 * F.n))

    for case in range(ctx.cases):
        a, b, c = draw(), draw(), draw()

        def check():
            laws = {
                "add-assoc": _same((a + b) + c, a + (b + c)),
                "add-comm": _same(a + b, b + a),
                "mul-assoc": _same((a * b) * c, a * (b * c)),
                "mul-comm": _same(a * b, b * a),
                "distrib": _same(a * (b + c), a * b + a * c),
                "val-mul": (a * b).valuation() == a.valuation() + b.valuation(),
                "ultrametric": (a + b).lower_val() >= min(a.val_digits(), b.val_digits()),
                "inverse": _same(a.unit_part() * invert(a.unit_part()), F.one()),
            }
            bad = [k for k, ok in laws.items() if not ok]
            return not bad, "fails " + ", ".join(bad)

        _run(res, case, check)
    return res


def suite_hs_homomorphism(ctx: _Context) -> SuiteResult:
    res, rng, F = SuiteResult(), ctx.rng("hs_homomorphism"), ctx.F
    p, prec, D = ctx.cfg.p, ctx.cfg.A, 6
    for case in range(ctx.cases):
        f = random_series(rng, p, prec, D, 4, 4)
        g = random_series(rng, p, prec, D, 4, 4)
        Q = random_annulus_point(rng, F, rng.randrange(1, F.n))

        def check():
            fx, gx = hs_eval(f, Q.x), hs_eval(g, Q.x)
            ok_mul = _same(hs_eval(f * g, Q.x), fx * gx)
            ok_add = _same(hs_eval(f + g, Q.x), fx + gx)
            return ok_mul and ok_add, f"mul={ok_mul} add={ok_add} at nu={fmt_q(Q.nu)}"

        _run(res, case, check)
    return res


def suite_pushforward(ctx: _Context) -> SuiteResult:
    res, rng, F = SuiteResult(), ctx.rng("pushforward"), ctx.F
    for case in range(ctx.cases):
        m = ctx.pick_model(rng, case)
        Q = random_annulus_point(rng, F, rng.randrange(1, F.n))

        def check():
            predicted, observed = pushforward_nu(Q.nu, m.e), observed_nu_x(m, Q)
            return agrees(predicted, observed), f"nu_Y={fmt_q(Q.nu)}: predicted {predicted}, got {observed}"

        _run(res, case, check)
    return res


def suite_fiber(ctx: _Context) -> SuiteResult:
    res, rng, F = SuiteResult(), ctx.rng("fiber"), ctx.F
    for case in range(ctx.cases):
        m = ctx.pick_model(rng, case)
        a = Fraction(ctx.grid_below(rng), F.n)

        def check():
            got, want = fiber_valuations(m, a), expected_fiber(a, m.e)
            return got == want, f"a={fmt_q(a)}: {[fmt_q(v) for v in got]} != {[fmt_q(v) for v in want]}"

        _run(res, case, check)
    return res


def _solve_cases(ctx: _Context):
    """(case, model, t, run-or-error) for the round-trip and reduction suites."""
    rng, F = ctx.rng("round_trip"), ctx.F
    out = []
    for case in range(ctx.cases):
        m = ctx.pick_model(rng, case)
        P = DiscPoint(F.random_element(rng, ctx.grid_below(rng)))
        try:
            out.append((case, m, P, iterate_section(m, P)))
        except CanonicalSectionError as exc:
            out.append((case, m, P, exc))
    return out


def suite_round_trip(ctx: _Context, solved) -> SuiteResult:
    res, F = SuiteResult(), ctx.F
    need = F.M - F.n * ctx.e
    for case, m, P, run in solved:

        def check():
            if isinstance(run, Exception):
                raise run
            x = run.point.x
            t_back = eval_pi(m, run.point).t
            agree = t_back.agrees_with(P.t, need)
            same_val = x.valuation() == P.t.valuation()
            within = run.iterations <= run.bound
            return agree and same_val and within, (
                f"nu={fmt_q(P.nu)} agree>={need}:{agree} val:{same_val} iterations {run.iterations}/{run.bound}"
            )

        _run(res, case, check)
    return res


def suite_reduction(ctx: _Context, solved) -> SuiteResult:
    res = SuiteResult()
    for case, m, P, run in solved:

        def check():
            if isinstance(run, Exception):
                raise run
            return check_reduction(m, P, run.point), f"nu={fmt_q(P.nu)}"

        _run(res, case, check)
    return res


def suite_refusal(ctx: _Context) -> SuiteResult:
    res, rng, F = SuiteResult(), ctx.rng("refusal"), ctx.F
    for case in range(ctx.cases):
        m = ctx.pick_model(rng, case)
        P = DiscPoint(F.random_element(rng, ctx.grid_at_or_above(rng)))

        def check():
            try:
                iterate_section(m, P)
                refused = False
            except OutOfRegion:
                refused = True
            a = P.nu
            fiber_ok = fiber_valuations(m, a) == expected_fiber(a, m.e)
            return refused and fiber_ok, f"nu={fmt_q(a)} refused={refused} fiber={fiber_ok}"

        _run(res, case, check)
    return res


def _random_q(rng: random.Random, F: FieldDesc):
    k = rng.randrange(0, F.n + 1)
    if k == 0:
        return OrdinaryLocusPoint(Z_INF)
    if k == F.n:
        return OrdinaryLocusPoint(Z_ZERO)
    return random_annulus_point(rng, F, k)


def suite_w_complement(ctx: _Context) -> SuiteResult:
    res, rng, F = SuiteResult(), ctx.rng("w_complement"), ctx.F
    for case in range(ctx.cases):
        pr = ctx.pick_pairing(rng, case)
        Q = _random_q(rng, F)

        def check():
            a, a_w = Q.nu, apply_w(pr, Q).nu
            return a + a_w == 1, f"nu_Y={fmt_q(a)} nu_Y(Q^w)={fmt_q(a_w)}"

        _run(res, case, check)
    return res


def suite_w_branches(ctx: _Context, branches: dict[int, int]) -> SuiteResult:
    res, rng, F = SuiteResult(), ctx.rng("w_branches"), ctx.F
    for case in range(ctx.cases):
        pr = ctx.pick_pairing(rng, case)
        Q = _random_q(rng, F)

        def check():
            report = check_w_branches(pr, Q)
            branches[report.branch] = branches.get(report.branch, 0) + 1
            bad = [k for k, ok in report.checks.items() if not ok]
            return report.passed, f"nu_Y={fmt_q(Q.nu)} branch {report.branch} fails {', '.join(bad)}"

        _run(res, case, check)
    return res


def suite_cross_consistency(ctx: _Context) -> SuiteResult:
    res = SuiteResult()
    grid = 12 * ctx.e * (ctx.e + 1)

    def check():
        rows = singularity_table(ctx.e, grid)
        return len(rows) == grid + 1, f"{len(rows)} rows for grid {grid}"

    _run(res, 0, check)
    return res


def run_verify(cfg: RunConfig, seed: int = 0, cases: int = 200) -> VerifyReport:
    if cases < 1:
        raise ValueError("cases must be positive")
    ctx = _Context(cfg, seed, cases)
    branches: dict[int, int] = {}
    solved = _solve_cases(ctx)
    suites = {
        "validate": suite_validate(ctx),
        "padic_laws": suite_padic_laws(ctx),
        "hs_homomorphism": suite_hs_homomorphism(ctx),
        "pushforward": suite_pushforward(ctx),
        "fiber": suite_fiber(ctx),
        "round_trip": suite_round_trip(ctx, solved),
        "reduction": suite_reduction(ctx, solved),
        "refusal": suite_refusal(ctx),
        "w_complement": suite_w_complement(ctx),
        "w_branches": suite_w_branches(ctx, branches),
        "cross_consistency": suite_cross_consistency(ctx),
    }
    return VerifyReport(Path(cfg.source).name, seed, cases, ctx.F.p, ctx.F.n, ctx.F.A, ctx.e, suites, branches)

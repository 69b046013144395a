"""Command-line driver.

    canonical-section eval-pi --config configs/toy.toml --x pi
    canonical-section section --config configs/toy.toml --t pi
    canonical-section table --e 2 --grid 6
    canonical-section verify --config configs/toy.toml --seed 42 --cases 200

Exit codes: 0 ok, 1 other library error, 2 config/grid error,
3 out of region, 4 precision exhausted, 5 verification failure,
6 point off the open annulus, 7 point on the ordinary locus,
8 domain error (bad units, field mismatch, inconsistent input).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from .calculus import (
    Z_INF,
    Z_ZERO,
    OrdinaryLocusPoint,
    classify,
    fmt_q,
    predict_w,
    pushforward_nu,
    singularity_table,
    table_csv,
    table_json,
    w_branch,
    w_nu,
)
from .config import DEFAULT_MODEL, RunConfig, load_config, parse_config, parse_point
from .errors import AnnulusViolation, CanonicalSectionError, ConfigError, OrdinaryPoint, VerificationFailure
from .involution import apply_w, check_w_branches, observed_nu_x
from .model import AnnulusPoint, DiscPoint, eval_pi, expected_fiber, fiber_valuations
from .section import check_reduction, iterate_section
from .verify import run_verify

TOY = {"p": 5, "n": 3, "A": 20, "D": 8, "e": 2, "u": [[0, 0, 1]], "f": [], "g": []}


# output ----------------------------------------------------------------------


def _flatten(record: dict, prefix: str = "") -> dict[str, str]:
    out = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, (list, tuple)):
            out[name] = " ".join(str(v) for v in value)
        elif isinstance(value, bool):
            out[name] = "true" if value else "false"
        else:
            out[name] = str(value)
    return out


def record_csv(records: list[dict]) -> str:
    rows = [_flatten(r) for r in records]
    header = list(dict.fromkeys(k for row in rows for k in row))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n", restval="")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def render(record, fmt: str) -> str:
    records = record if isinstance(record, list) else [record]
    if fmt == "csv":
        return record_csv(records)
    return json.dumps(record, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# shared setup ----------------------------------------------------------------


def _config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else parse_config(TOY, "toy")
    return cfg.with_overrides(args.precision, args.degree)


def _rng(args) -> random.Random:
    return random.Random(args.seed)


def _nu(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {text!r}") from exc


def _e(args, cfg: RunConfig | None = None) -> int:
    if args.e is not None:
        return args.e
    if cfg is None:
        cfg = _config(args)
    return cfg.model(args.model).e


# commands --------------------------------------------------------------------


def cmd_eval_pi(args) -> dict:
    cfg = _config(args)
    m = cfg.model(args.model)
    F = cfg.field
    Q = AnnulusPoint(parse_point(args.x, F, _rng(args)))
    start = time.perf_counter()
    P = eval_pi(m, Q)
    elapsed = time.perf_counter() - start
    record = {
        "model": args.model,
        "x": Q.x.digits(),
        "nu_Y": fmt_q(Q.nu),
        "t": P.t.digits(),
        "nu_X": str(observed_nu_x(m, Q)),
    }
    if args.timing:
        record["seconds"] = f"{elapsed:.6f}"
    return record


def cmd_section(args) -> dict:
    cfg = _config(args)
    m = cfg.model(args.model)
    P = DiscPoint(parse_point(args.t, cfg.field, _rng(args)))
    try:
        run = iterate_section(m, P)
    except OrdinaryPoint:
        return {"t": P.t.digits(), "nu_X": fmt_q(P.nu), "status": "ordinary", "image": str(OrdinaryLocusPoint(Z_INF).label)}
    return {
        "t": P.t.digits(),
        "nu_X": fmt_q(P.nu),
        "status": "solved",
        "x": run.point.x.digits(),
        "nu_Y": fmt_q(run.point.nu),
        "reduction": check_reduction(m, P, run.point),
        "iterations": run.iterations,
        "iteration_bound": run.bound,
        "gamma_digits": run.gamma,
    }


def cmd_classify(args) -> dict:
    e = _e(args)
    a = _nu(args.nu)
    nu_x, cls = pushforward_nu(a, e), classify(a, e)
    nu_x_w, cls_w = predict_w(nu_x, cls, e)
    return {
        "e": e,
        "nu_Y": fmt_q(a),
        "nu_X_piQ": str(nu_x),
        "class": str(cls),
        "branch": w_branch(nu_x, cls, e),
        "nu_Y_Qw": fmt_q(w_nu(a)),
        "nu_X_piQw": str(nu_x_w),
        "class_w": str(cls_w),
    }


def cmd_fiber(args) -> dict:
    cfg = _config(args)
    m = cfg.model(args.model)
    a = _nu(args.nu)
    got, want = fiber_valuations(m, a), expected_fiber(a, m.e)
    return {
        "model": args.model,
        "nu_X": fmt_q(a),
        "fiber": [fmt_q(v) for v in got],
        "expected": [fmt_q(v) for v in want],
        "matches": got == want,
    }


def cmd_wmap(args) -> dict:
    cfg = _config(args)
    pr = cfg.make_pairing()
    F = cfg.field
    x = parse_point(args.x, F, _rng(args))
    if x.is_zero():
        raise AnnulusViolation("x = 0 is not a point of the annulus")
    # nu_Y = 0 and nu_Y = 1 are the two ordinary components
    k = x.val_digits()
    if k == 0:
        Q = OrdinaryLocusPoint(Z_INF)
    elif k >= F.n:
        Q = OrdinaryLocusPoint(Z_ZERO)
    else:
        Q = AnnulusPoint(x)
    report = check_w_branches(pr, Q)
    record = report.to_dict()
    if isinstance(Q, AnnulusPoint):
        record["x"] = Q.x.digits()
        record["x_w"] = apply_w(pr, Q).x.digits()
    if not report.passed:
        raise VerificationFailure(json.dumps(record, sort_keys=True))
    return record


def cmd_table(args) -> str:
    e = _e(args)
    grid = args.grid if args.grid is not None else 12 * e * (e + 1)
    rows = singularity_table(e, grid)
    return table_json(rows) if args.format == "json" else table_csv(rows)


def cmd_verify(args):
    cfg = _config(args)
    report = run_verify(cfg, args.seed, args.cases)
    if args.format == "csv":
        rows = [{"suite": name, **{k: v for k, v in s.to_dict().items() if k != "failures"},
                 "first_failure": (s.failures or [""])[0]} for name, s in report.suites.items()]
        text = record_csv(rows)
    else:
        text = report.to_json()
    return text, report.ok


# parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML run configuration (default: built-in toy model)")
    common.add_argument("--model", default=DEFAULT_MODEL, help="model name within the config")
    common.add_argument("--seed", type=int, default=0, help="seed for synthesized units and random cases")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), help="report format")
    common.add_argument("--precision", type=int, help="override coefficient precision A (p-adic digits)")
    common.add_argument("--degree", type=int, help="override truncation degree D")

    parser = argparse.ArgumentParser(prog="canonical-section", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-pi", parents=[common], help="evaluate t(pi Q) at an annulus point")
    p.add_argument("--x", required=True, help="point spec: 'c*pi^k + ...' or a valuation 'k/n'")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds (not reproducible)")

    p = sub.add_parser("section", parents=[common], help="solve for the canonical preimage of t")
    p.add_argument("--t", required=True, help="point spec for the disc parameter t")

    p = sub.add_parser("classify", parents=[common], help="valuation calculus for one nu_Y")
    p.add_argument("--nu", required=True, help="nu_Y as a rational 'num/den'")
    p.add_argument("--e", type=int, help="ramification e (default: from the model)")

    p = sub.add_parser("fiber", parents=[common], help="valuations of the fiber over nu_X")
    p.add_argument("--nu", required=True, help="nu_X as a rational 'num/den'")

    p = sub.add_parser("wmap", parents=[common], help="apply w and check the branch prediction")
    p.add_argument("--x", required=True, help="point spec on the source annulus")

    p = sub.add_parser("table", parents=[common], help="the nu_Y grid table through w")
    p.add_argument("--e", type=int, help="ramification e (default: from the model)")
    p.add_argument("--grid", type=int, help="grid denominator, a multiple of e(e+1) (default 12e(e+1))")

    p = sub.add_parser("verify", parents=[common], help="run all randomized suites")
    p.add_argument("--cases", type=int, default=200, help="cases per suite")
    return parser


COMMANDS = {
    "eval-pi": cmd_eval_pi,
    "section": cmd_section,
    "classify": cmd_classify,
    "fiber": cmd_fiber,
    "wmap": cmd_wmap,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "table":
            if args.format is None:
                args.format = "csv"
            _emit(args, cmd_table(args))
            return 0
        if args.command == "verify":
            text, ok = cmd_verify(args)
            _emit(args, text)
            return 0 if ok else VerificationFailure.exit_code
        record = COMMANDS[args.command](args)
        _emit(args, render(record, args.format or "json"))
        return 0
    except CanonicalSectionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ConfigError.exit_code


if __name__ == "__main__":
    sys.exit(main())

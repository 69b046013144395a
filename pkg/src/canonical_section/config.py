"""TOML run configurations and point specs.

A config names one field (p, n, A) and truncation degree D, plus one or
more local models.  The top-level e/u/f/g block is the model ``default``;
further models go in ``[models.NAME]`` tables.  An optional ``[pairing]``
table names a source and target model and a twist unit.  Series are
lists of ``[i, j, c]`` monomial triples for c x^i y^j.

    p = 5
    n = 3
    A = 20
    D = 8
    e = 2
    u = [[0, 0, 1]]
    f = []
    g = []
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import ConfigError, DomainError, NonPrime, ZeroDegree
from .halfring import HalfSeries, normalize
from .involution import Pairing
from .model import LocalModel
from .padic import FieldDesc, RamElem, is_prime, make_field

DEFAULT_MODEL = "default"


@dataclass(frozen=True)
class RunConfig:
    p: int
    n: int
    A: int
    D: int
    models: dict[str, dict] = field(default_factory=dict)
    """Raw model blocks: name -> {"e": int, "u"/"f"/"g": monomial lists}."""
    pairing: dict | None = None
    source: str = "<memory>"

    @property
    def field(self) -> FieldDesc:
        return make_field(self.p, self.n, self.A)

    def model(self, name: str = DEFAULT_MODEL) -> LocalModel:
        if name not in self.models:
            raise ConfigError(f"no model named {name!r}; have {sorted(self.models)}")
        block = self.models[name]
        return LocalModel.from_monomials(block["e"], block["u"], block["f"], block["g"], self.p, self.A, self.D)

    def series(self, monomials) -> HalfSeries:
        return normalize(monomials, self.p, self.A, self.D)

    def make_pairing(self) -> Pairing:
        """The configured pairing, or the default model paired with itself."""
        block = self.pairing or {}
        src = block.get("source", DEFAULT_MODEL if DEFAULT_MODEL in self.models else None)
        tgt = block.get("target", src)
        if src is None:
            raise ConfigError("no [pairing] table and no default model")
        twist = block.get("twist")
        return Pairing(self.model(src), self.model(tgt), None if twist is None else self.series(twist))

    def with_overrides(self, precision: int | None = None, degree: int | None = None) -> RunConfig:
        """Replace A (coefficient digits) and/or D (truncation degree)."""
        out = self
        if precision is not None:
            out = replace(out, A=_positive("precision", precision))
        if degree is not None:
            out = replace(out, D=_positive("degree", degree))
        return out


def _positive(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def _monomials(name: str, value) -> list[tuple[int, int, int]]:
    if not isinstance(value, list):
        raise ConfigError(f"{name} must be a list of [i, j, c] triples")
    out = []
    for term in value:
        if (not isinstance(term, list) or len(term) != 3
                or any(isinstance(v, bool) or not isinstance(v, int) for v in term)):
            raise ConfigError(f"{name}: bad monomial {term!r}, expected [i, j, c] integers")
        i, j, c = term
        if i < 0 or j < 0:
            raise ConfigError(f"{name}: negative exponent in {term!r}")
        out.append((i, j, c))
    return out


def _model_block(name: str, raw: dict) -> dict:
    if "e" not in raw:
        raise ConfigError(f"model {name!r} has no e")
    e = raw["e"]
    if isinstance(e, bool) or not isinstance(e, int) or e < 1:
        raise ConfigError(f"model {name!r}: e must be a positive integer, got {e!r}")
    return {"e": e, **{key: _monomials(f"{name}.{key}", raw.get(key, [])) for key in ("u", "f", "g")}}


def parse_config(data: dict, source: str = "<memory>") -> RunConfig:
    for key in ("p", "n", "A", "D"):
        if key not in data:
            raise ConfigError(f"missing required key {key!r}")
    p, n, A, D = (data[k] for k in ("p", "n", "A", "D"))
    if isinstance(p, bool) or not isinstance(p, int):
        raise ConfigError(f"p must be an integer, got {p!r}")
    if not is_prime(p):
        raise NonPrime(f"p = {p} is not prime")
    if isinstance(n, int) and not isinstance(n, bool) and n == 0:
        raise ZeroDegree("n must be at least 1")
    n, A, D = _positive("n", n), _positive("A", A), _positive("D", D)
    models = {}
    if "e" in data:
        models[DEFAULT_MODEL] = _model_block(DEFAULT_MODEL, data)
    extra = data.get("models", {})
    if not isinstance(extra, dict):
        raise ConfigError("[models] must be a table of named models")
    for name, raw in extra.items():
        if name in models:
            raise ConfigError(f"duplicate model {name!r}")
        if not isinstance(raw, dict):
            raise ConfigError(f"models.{name} must be a table")
        models[name] = _model_block(name, raw)
    pairing = data.get("pairing")
    if pairing is not None:
        if not isinstance(pairing, dict):
            raise ConfigError("[pairing] must be a table")
        for key in ("source", "target"):
            if key in pairing and pairing[key] not in models:
                raise ConfigError(f"pairing.{key} = {pairing[key]!r} is not a model")
        if "twist" in pairing:
            pairing = {**pairing, "twist": _monomials("pairing.twist", pairing["twist"])}
    return RunConfig(p, n, A, D, models, pairing, source)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return parse_config(data, str(path))


# point specs ---------------------------------------------------------------

_TERM = re.compile(r"^(?:(-?\d+)\s*\*?\s*)?(pi(?:\s*\^\s*(\d+))?)?$")


def parse_point(spec: str, F: FieldDesc, rng: random.Random | None = None) -> RamElem:
    """An element of F from a point spec.

    Either a sum of terms ``c*pi^k`` (``pi``, ``3*pi^2``, ``-pi^4``, ``7``),
    or a target valuation ``k/n`` which yields pi^(k n_F / n) times a unit
    drawn from ``rng``.  Valuation specs always contain a slash.
    """
    text = spec.strip()
    if not text:
        raise ConfigError("empty point spec")
    if "/" in text:
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad valuation spec {spec!r}") from exc
        k = q * F.n
        if k.denominator != 1:
            raise DomainError(f"valuation {q} is not on the 1/{F.n} grid of this field")
        if k < 0:
            raise DomainError(f"valuation {q} is negative")
        unit = F.random_unit(rng or random.Random(0))
        return unit.shift_up(int(k))
    terms = []
    for raw in re.split(r"(?=[+-])", text.replace(" ", "")):
        if raw in ("", "+"):
            continue
        sign = -1 if raw.startswith("-") else 1
        body = raw.lstrip("+-")
        m = _TERM.match(body)
        if not m or body == "":
            raise ConfigError(f"bad term {raw!r} in point spec {spec!r}")
        coeff, has_pi, power = m.groups()
        if coeff is None and not has_pi:
            raise ConfigError(f"bad term {raw!r} in point spec {spec!r}")
        c = sign * (int(coeff) if coeff is not None else 1)
        k = (int(power) if power is not None else 1) if has_pi else 0
        terms.append((c, k))
    return F.from_pi_series(terms)

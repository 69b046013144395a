import random
from fractions import Fraction
from pathlib import Path

import pytest

from canonical_section.config import load_config, parse_config, parse_point
from canonical_section.errors import ConfigError, DomainError, NonPrime
from canonical_section.model import validate
from canonical_section.padic import make_field

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
BASE = {"p": 5, "n": 3, "A": 20, "D": 8, "e": 2, "u": [[0, 0, 1]], "f": [], "g": []}


def test_load_toy():
    cfg = load_config(CONFIGS / "toy.toml")
    assert (cfg.p, cfg.n, cfg.A, cfg.D) == (5, 3, 20, 8)
    assert all(validate(cfg.model()).values())


def test_load_paired():
    cfg = load_config(CONFIGS / "paired.toml")
    pr = cfg.make_pairing()
    assert pr.source == cfg.model("default") and pr.target == cfg.model("partner")
    assert pr.twist.is_unit()


@pytest.mark.parametrize("patch, err", [
    ({"p": 6}, NonPrime),
    ({"A": 0}, ConfigError),
    ({"u": [[0, 0]]}, ConfigError),
    ({"u": "one"}, ConfigError),
    ({"e": 0}, ConfigError),
    ({"pairing": {"source": "nope"}}, ConfigError),
])
def test_bad_configs(patch, err):
    with pytest.raises(err):
        parse_config({**BASE, **patch})


def test_missing_key():
    data = dict(BASE)
    del data["D"]
    with pytest.raises(ConfigError):
        parse_config(data)


def test_unknown_model():
    with pytest.raises(ConfigError):
        parse_config(BASE).model("other")


def test_malformed_toml(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("p = = 5")
    with pytest.raises(ConfigError):
        load_config(path)


def test_overrides():
    cfg = parse_config(BASE).with_overrides(precision=7, degree=4)
    assert (cfg.A, cfg.D) == (7, 4)
    with pytest.raises(ConfigError):
        parse_config(BASE).with_overrides(precision=0)


F = make_field(5, 3, 20)


@pytest.mark.parametrize("spec, terms", [
    ("pi", [(1, 1)]),
    ("pi - pi^4", [(1, 1), (-1, 4)]),
    ("3*pi^2 + 7", [(3, 2), (7, 0)]),
    ("-pi", [(-1, 1)]),
    ("2 pi^5", [(2, 5)]),
])
def test_point_spec_terms(spec, terms):
    assert parse_point(spec, F) == F.from_pi_series(terms)


def test_point_spec_valuation_is_seeded():
    a = parse_point("2/3", F, random.Random(5))
    b = parse_point("2/3", F, random.Random(5))
    assert a == b and a.valuation() == Fraction(2, 3)


@pytest.mark.parametrize("spec, err", [("pi^", ConfigError), ("x", ConfigError), ("", ConfigError),
                                       ("1/4", DomainError), ("1/0", ConfigError)])
def test_bad_point_specs(spec, err):
    with pytest.raises(err):
        parse_point(spec, F)

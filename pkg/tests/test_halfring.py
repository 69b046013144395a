import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from canonical_section.errors import AnnulusViolation, DegreeOverflow, NotAUnit, PrecisionExhausted
from canonical_section.halfring import (
    HalfSeries,
    check_congruences,
    compose,
    hs_eval,
    hs_inverse,
    hs_mul,
    normalize,
)
from canonical_section.model import random_series
from canonical_section.padic import make_field


def hs(monos, p=5, prec=10, D=6):
    return normalize(monos, p, prec, D)


@pytest.mark.parametrize("monos, expected", [
    ([(2, 1, 1)], [(1, 0, 5)]),
    ([(1, 3, 1)], [(0, 2, 5)]),
    ([(1, 1, 1), (0, 0, -5)], []),
])
def test_normalize_examples(monos, expected):
    assert hs(monos) == hs(expected)


def test_square_of_x_plus_y():
    s = hs([(1, 0, 1), (0, 1, 1)])
    assert s * s == hs([(2, 0, 1), (0, 0, 10), (0, 2, 1)])


def test_x_times_y_is_p():
    assert HalfSeries.gen_x(5, 10, 6) * HalfSeries.gen_y(5, 10, 6) == hs([(0, 0, 5)])


def test_units_closed():
    u, v = hs([(0, 0, 2), (1, 0, 3)]), hs([(0, 0, 4), (0, 2, 1)])
    assert (u * v).is_unit()


def test_truncation_sets_tail():
    x = HalfSeries.gen_x(5, 10, 3)
    assert (x * x).is_exact()
    cube = x * x * x
    assert cube.is_exact()
    quart = cube * x
    assert quart.tail == 4 and not quart.x
    with pytest.raises(DegreeOverflow):
        hs_mul(cube, x, exact=True)


def test_degree_overflow_in_literal():
    with pytest.raises(DegreeOverflow):
        normalize([(7, 0, 1)], 5, 10, 6)


def test_hs_eval_examples():
    F = make_field(5, 3, 20)
    pi = F.pi_power(1)
    got = hs_eval(hs([(1, 0, 1), (0, 1, 1)]), pi)
    # coefficients known mod 5^10 certify 30 pi-digits
    assert got.prec == 30 and got.agrees_with(pi + F.pi_power(2), 30)
    assert hs_eval(hs([(0, 0, 1)], prec=20), pi) == F.one()
    F6 = make_field(5, 6, 10)
    # x = pi^5 mod pi^60 has 55 digits of relative precision, so y^2 = pi^2 has 57 absolute
    got = hs_eval(hs([(0, 2, 1)]), F6.pi_power(5))
    assert got.prec == 57 and got.agrees_with(F6.pi_power(2), 57)


def test_hs_eval_off_annulus():
    F = make_field(5, 3, 20)
    with pytest.raises(AnnulusViolation):
        hs_eval(hs([(1, 0, 1)]), F.one())
    with pytest.raises(AnnulusViolation):
        hs_eval(hs([(1, 0, 1)]), F.pi_power(3))


def test_hs_eval_tail_bound_and_refusal():
    F = make_field(5, 12, 10)
    t = HalfSeries(5, 10, 4, (1,), (), tail=5)
    # error in (x^5, y^5) at val(x) = 3/12: >= 5 * 3 pi-digits
    assert hs_eval(t, F.pi_power(3)).prec == 15
    with pytest.raises(PrecisionExhausted):
        hs_eval(t, F.pi_power(3), precision=20)


@pytest.mark.parametrize("series, kwargs, ok", [
    ([(0, 3, 1)], {"y_only": True, "vanish_below_y": 3}, True),
    ([(0, 0, 1), (1, 0, 5)], {"unit": True, "one_mod_p": True}, True),
    ([(0, 0, 2), (1, 0, 1)], {"one_mod_p": True}, False),
    ([(0, 2, 1)], {"vanish_below_y": 3}, False),
    ([(1, 0, 1)], {"y_only": True}, False),
])
def test_check_congruences(series, kwargs, ok):
    assert all(check_congruences(hs(series), **kwargs).values()) is ok


def test_inverse_non_unit():
    with pytest.raises(NotAUnit):
        hs_inverse(hs([(1, 0, 1)]))


# properties ----------------------------------------------------------------------

seeds = st.integers(0, 2**32)


def _pair(seed, p=3, prec=8, D=6, deg=3):
    rng = random.Random(seed)
    return random_series(rng, p, prec, D, deg, deg), random_series(rng, p, prec, D, deg, deg), rng


@given(seeds)
def test_ring_axioms(seed):
    f, g, rng = _pair(seed)
    h = random_series(rng, 3, 8, 6, 3, 3)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f + g) - g == f


@given(seeds)
def test_no_mixed_monomials(seed):
    f, g, _ = _pair(seed)
    prod = f * g
    # storage is x-part plus y-part only; every stored term is pure
    assert all(i == 0 or j == 0 for i, j, _ in prod.monomials())


@given(seeds, st.sampled_from([(3, 6, 8), (5, 4, 6), (2, 12, 10)]))
def test_eval_is_a_ring_map(seed, fld):
    p, n, A = fld
    F = make_field(p, n, A)
    rng = random.Random(seed)
    f = random_series(rng, p, A, 6, 4, 4)
    g = random_series(rng, p, A, 6, 4, 4)
    x = F.random_element(rng, rng.randrange(1, n))
    fx, gx = hs_eval(f, x), hs_eval(g, x)
    for lhs, rhs in ((hs_eval(f * g, x), fx * gx), (hs_eval(f + g, x), fx + gx)):
        d = min(lhs.prec, rhs.prec)
        assert d > 0
        assert lhs.agrees_with(rhs, d)


@given(seeds, st.integers(1, 11))
def test_inverse(seed, k):
    rng = random.Random(seed)
    u = random_series(rng, 5, 8, 6, 3, 3)
    u = u + (1 - u.const % 5)
    inv = hs_inverse(u)
    # truncated products may keep low-degree terms that lie in the tail ideal,
    # so compare values on the annulus, where the tail is accounted for
    F = make_field(5, 12, 8)
    x = F.random_element(rng, k)
    val = hs_eval(u, x) * hs_eval(inv, x)
    assert val.prec > 0
    assert val.agrees_with(F.one(), val.prec)


@given(seeds)
def test_compose_with_identity(seed):
    f, _, _ = _pair(seed)
    assert compose(f, HalfSeries.gen_x(3, 8, 6), HalfSeries.gen_y(3, 8, 6)) == f

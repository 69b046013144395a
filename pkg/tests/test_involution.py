import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from canonical_section.calculus import Z_INF, Z_ZERO, OrdinaryLocusPoint
from canonical_section.errors import InconsistentInput, NotAUnit
from canonical_section.halfring import HalfSeries
from canonical_section.involution import Pairing, apply_w, check_w_branches
from canonical_section.model import AnnulusPoint, LocalModel, random_annulus_point, random_model
from canonical_section.padic import make_field

Q = Fraction
TOY = LocalModel.toy(5)
SELF = Pairing(TOY, TOY)


def test_apply_w_swaps_coordinates():
    F = make_field(5, 3, 20)
    Qw = apply_w(SELF, AnnulusPoint(F.pi_power(1)))
    assert Qw.x == F.pi_power(2)
    assert Qw.nu == Q(2, 3)


def test_unit_twist_keeps_valuations():
    F = make_field(5, 3, 20)
    twisted = Pairing(TOY, TOY, HalfSeries.constant(6, 5, 20, 8))
    assert apply_w(twisted, AnnulusPoint(F.pi_power(1))).nu == Q(2, 3)


def test_fixed_valuation():
    F = make_field(5, 6, 10)
    assert apply_w(SELF, AnnulusPoint(F.pi_power(3))).nu == Q(1, 2)


def test_ordinary_points_swap():
    assert apply_w(SELF, OrdinaryLocusPoint(Z_INF)) == OrdinaryLocusPoint(Z_ZERO)


def test_pairing_checks():
    with pytest.raises(InconsistentInput):
        Pairing(TOY, LocalModel.toy(5, e=3))
    with pytest.raises(NotAUnit):
        Pairing(TOY, TOY, HalfSeries.gen_x(5, 20, 8))


@pytest.mark.parametrize("n, k, branch, nu_x_w", [
    (3, 1, 3, ">=2/3"),
    (12, 3, 2, "1/2"),
    (12, 10, 5, "1/6"),
    (12, 5, 4, "7/12"),
    (12, 8, 6, "1/3"),
])
def test_toy_branches(n, k, branch, nu_x_w):
    F = make_field(5, n, 20)
    report = check_w_branches(SELF, AnnulusPoint(F.pi_power(k)))
    assert report.passed
    assert report.branch == branch
    assert str(report.predicted[0]) == nu_x_w


def test_branch_one_via_ordinary_locus():
    report = check_w_branches(SELF, OrdinaryLocusPoint(Z_INF))
    assert report.passed and report.branch == 1


@given(st.integers(0, 2**32), st.sampled_from([(2, 2), (3, 2), (5, 3)]))
def test_random_pairings(seed, par):
    p, e = par
    rng = random.Random(seed)
    n = 2 * e * (e + 1)
    src, tgt = random_model(rng, p, e, prec=8), random_model(rng, p, e, prec=8)
    twist = HalfSeries(p, 8, src.D, (1 + p * rng.randrange(9), rng.randrange(9)), (rng.randrange(9),))
    pr = Pairing(src, tgt, twist)
    Qp = random_annulus_point(rng, make_field(p, n, 8), rng.randrange(1, n))
    report = check_w_branches(pr, Qp)
    assert report.nu_y + report.nu_y_w == 1
    assert report.passed, report.to_dict()

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from canonical_section.calculus import (
    AtLeast,
    Exact,
    NuValue,
    PointClass,
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
from canonical_section.errors import GridError, InconsistentInput, OutOfRange

Q = Fraction
C, A, T = PointClass.CANONICAL, PointClass.ANTI_CANONICAL, PointClass.TOO_SINGULAR


@pytest.mark.parametrize("a, expected", [(Q(1, 3), Exact(Q(1, 3))), (Q(3, 4), Exact(Q(1, 2))),
                                         (Q(2, 3), AtLeast(Q(2, 3)))])
def test_pushforward(a, expected):
    assert pushforward_nu(a, 2) == expected


@pytest.mark.parametrize("a, cls", [(0, C), (Q(2, 3), T), (1, A)])
def test_classify(a, cls):
    assert classify(a, 2) is cls


def test_w_nu():
    assert w_nu(Q(1, 3)) == Q(2, 3)
    assert w_nu(Q(1, 2)) == Q(1, 2)
    assert w_nu(0) == 1


def test_out_of_range():
    with pytest.raises(OutOfRange):
        classify(Q(3, 2), 2)


@pytest.mark.parametrize("nu_x, cls, expected", [
    (Exact(Q(1, 4)), C, (Exact(Q(1, 2)), A)),
    (Exact(Q(2, 5)), C, (Exact(Q(3, 5)), C)),
    (AtLeast(Q(2, 3)), T, (Exact(Q(1, 3)), C)),
    (Exact(0), C, (Exact(0), A)),
    (Exact(0), A, (Exact(0), C)),
    (Exact(Q(1, 3)), C, (AtLeast(Q(2, 3)), T)),
    (Exact(Q(1, 3)), A, (Exact(Q(1, 6)), C)),
])
def test_predict_w_examples(nu_x, cls, expected):
    assert predict_w(nu_x, cls, 2) == expected


def test_predict_w_rejects_impossible_inputs():
    with pytest.raises(InconsistentInput):
        predict_w(Exact(Q(1, 2)), T, 2)
    with pytest.raises(InconsistentInput):
        predict_w(Exact(Q(3, 4)), C, 2)


def test_table_rows():
    rows = singularity_table(2, 6)
    assert rows[2].cells() == ["1/3", "1/3", "canonical", "2/3", ">=2/3", "too-singular"]
    assert rows[0].cells() == ["0/1", "0/1", "canonical", "1/1", "0/1", "anti-canonical"]
    assert rows[5].cells() == ["5/6", "1/3", "anti-canonical", "1/6", "1/6", "canonical"]


def test_table_grid_must_be_multiple():
    with pytest.raises(GridError):
        singularity_table(2, 5)


def test_table_serializations_agree():
    rows = singularity_table(3, 12)
    csv_lines = table_csv(rows).splitlines()
    records = json.loads(table_json(rows))
    assert len(csv_lines) == len(records) + 1 == 14
    assert csv_lines[1].split(",") == list(records[0].values())


def test_nu_value_round_trip():
    for v in (Exact(Q(1, 3)), AtLeast(Q(2, 3)), Exact(0)):
        assert NuValue.parse(str(v)) == v
    assert fmt_q(1) == "1/1"


@given(st.integers(2, 5), st.integers(1, 4))
def test_table_cross_consistency(e, mult):
    # singularity_table raises if the branch route and the direct route disagree
    rows = singularity_table(e, mult * e * (e + 1))
    for row in rows:
        assert row.nu_y + row.nu_y_w == 1


@given(st.integers(2, 6), st.fractions(0, 1, max_denominator=60))
def test_two_routes_agree(e, a):
    nu_x, cls = pushforward_nu(a, e), classify(a, e)
    assert predict_w(nu_x, cls, e) == (pushforward_nu(1 - a, e), classify(1 - a, e))
    assert 1 <= w_branch(nu_x, cls, e) <= 6


@given(st.integers(2, 6), st.fractions(0, 1, max_denominator=60))
def test_involution_squares_to_identity(e, a):
    nu_x, cls = pushforward_nu(a, e), classify(a, e)
    assert predict_w(*predict_w(nu_x, cls, e), e) == (nu_x, cls)

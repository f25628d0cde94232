"""Exact Laurent polynomial arithmetic against a dense reference."""

import pytest
from hypothesis import given, strategies as st

from tklwb.laurent import (
    LaurentPoly,
    ONE,
    ParityError,
    Q,
    QFormError,
    V,
    ZERO,
    as_q_poly,
    const,
    halve_sum,
    parity_equal,
    parse_poly,
    substitute_q_squared,
    v_power,
)

# Dense reference: a Laurent polynomial as a coefficient list over a fixed
# exponent window, kept deliberately independent of the sparse implementation.

LO, HI = -48, 48


def dense(p: LaurentPoly) -> list[int]:
    out = [0] * (HI - LO + 1)
    for k, a in p.c.items():
        out[k - LO] += a
    return out


def dense_add(a, b):
    return [x + y for x, y in zip(a, b)]


def dense_mul(a, b):
    out = [0] * (HI - LO + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            k = (i + LO) + (j + LO)  # exponent of the product term
            if LO <= k <= HI:
                out[k - LO] += x * y
    return out


polys = st.dictionaries(st.integers(-20, 20), st.integers(-9, 9), max_size=6).map(
    LaurentPoly
)


@given(polys, polys)
def test_add_matches_dense_reference(p, r):
    assert dense(p + r) == dense_add(dense(p), dense(r))


@given(polys, polys)
def test_mul_matches_dense_reference(p, r):
    assert dense(p * r) == dense_mul(dense(p), dense(r))


@given(polys, polys)
def test_bar_is_a_ring_involution(p, r):
    assert p.bar().bar() == p
    assert (p * r).bar() == p.bar() * r.bar()
    assert (p + r).bar() == p.bar() + r.bar()


@given(polys)
def test_negation_cancels(p):
    assert p + (-p) == ZERO


def test_ring_examples():
    vv = V + v_power(-1)
    assert vv * vv == Q + const(2) + v_power(-2)
    assert (ONE + Q).shift(-2) == v_power(-2) + ONE
    assert v_power(3) * v_power(-3) == ONE


def test_bar_examples():
    assert Q.bar() == v_power(-2)
    vv = V + v_power(-1)
    assert vv.bar() == vv
    assert const(3).bar() == const(3)


def test_q_poly_views():
    assert as_q_poly(ONE + Q) == parse_poly("1+q")
    assert substitute_q_squared(ONE + Q) == ONE + v_power(4)
    with pytest.raises(QFormError):
        as_q_poly(V)
    with pytest.raises(QFormError):
        as_q_poly(v_power(-2))


def test_parity_and_halving():
    assert parity_equal(ONE + 3 * Q, ONE + Q)
    assert not parity_equal(ONE, Q)
    assert halve_sum(ONE + Q, ONE - Q, 1) == ONE
    assert halve_sum(ONE + Q, ONE - Q, -1) == Q
    with pytest.raises(ParityError):
        halve_sum(ONE, Q, 1)


@given(polys, polys)
def test_halves_reconstruct(f, g):
    try:
        plus = halve_sum(f, g, 1)
        minus = halve_sum(f, g, -1)
    except ParityError:
        assert not parity_equal(f, g)
        return
    assert plus + minus == f
    assert plus - minus == g


def test_inspection():
    assert (ONE + Q).is_nonnegative()
    assert not (ONE - Q).is_nonnegative()
    assert (V + 2 * v_power(3)).coefficient(3) == 2
    assert (V + ONE).negative_part() == ZERO
    assert (v_power(-1) + V).negative_part() == v_power(-1)


# -- text form ----------------------------------------------------------------


def test_str_examples():
    assert str(ZERO) == "0"
    assert str(ONE + Q * Q) == "1+q^2"
    assert str(V + v_power(-1)) == "v^-1+v"
    assert str(Q) == "q"
    assert str(-ONE + Q) == "-1+q"
    assert str(2 * Q) == "2q"
    assert str(V) == "v"
    assert str(ONE - Q + Q * Q) == "1-q+q^2"


def test_parse_examples():
    assert parse_poly("0") == ZERO
    assert parse_poly("1+q") == ONE + Q
    assert parse_poly("v^-1+v") == v_power(-1) + V
    assert parse_poly("-3v^2+q") == -3 * Q + Q
    assert parse_poly("v^2+q") == 2 * Q


def test_parse_rejects_garbage():
    for bad in ("", "+", "1++q", "x", "q^", "1 2"):
        with pytest.raises(ValueError):
            parse_poly(bad)


@given(polys)
def test_round_trip(p):
    assert parse_poly(str(p)) == p


def test_canonical_strings_round_trip():
    for text in (
        "0",
        "1",
        "v",
        "q",
        "v^-1+v",
        "1+q^2",
        "-1+q",
        "2q",
        "1-q+q^2",
        "v^-3",
        "-2v^-1+3v^2",
    ):
        assert str(parse_poly(text)) == text


def test_canonical_form_drops_zeros():
    p = LaurentPoly({3: 2, 1: 0, -2: -2})
    assert set(p.c) == {3, -2}
    assert LaurentPoly([(1, 2), (1, -2)]) == ZERO

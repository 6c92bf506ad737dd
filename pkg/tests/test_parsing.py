import pytest
from hypothesis import given
from hypothesis import strategies as st

from woundcert.errors import DivisionByZero, ElementSyntaxError, UnknownVariable
from woundcert.parsing import parse_element

from conftest import F2T, F3T, F2TU, elements


def test_polynomial():
    t = F2T.gen(0)
    assert parse_element("t^2 + 1", F2T) == t**2 + 1


def test_fraction():
    t = F3T.gen(0)
    assert parse_element("(1+t)/(t^3)", F3T) == (1 + t) / t**3


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_element("t + s", F2T)


def test_integers_reduced_mod_p():
    assert parse_element("7", F3T) == F3T.one
    assert parse_element("6", F3T) == F3T.zero


def test_whitespace_insignificant():
    assert parse_element(" t *t+ 1 ", F2T) == parse_element("t*t+1", F2T)


def test_leading_minus():
    assert parse_element("-1", F3T) == F3T.const(2)
    assert parse_element("-t + t", F3T) == F3T.zero


def test_negative_exponent():
    t = F3T.gen(0)
    assert parse_element("t^-2", F3T) == 1 / t**2


def test_products_and_precedence():
    t, u = F2TU.gens
    assert parse_element("t*u + u^2", F2TU) == t * u + u**2


def test_division_binds_loosest():
    t = F3T.gen(0)
    assert parse_element("1 + t/t + t", F3T) == (1 + t) / (t + t)


def test_syntax_error_carries_position():
    with pytest.raises(ElementSyntaxError) as exc:
        parse_element("t + ", F2T)
    assert exc.value.pos == 4


def test_double_slash_rejected():
    with pytest.raises(ElementSyntaxError):
        parse_element("1/t/t", F3T)


def test_stray_character():
    with pytest.raises(ElementSyntaxError):
        parse_element("t $ 1", F2T)


def test_zero_denominator():
    with pytest.raises(DivisionByZero):
        parse_element("1/(t - t)", F3T)


@given(st.data())
def test_roundtrip_f3t(data):
    a = data.draw(elements(F3T))
    assert parse_element(str(a), F3T) == a


@given(st.data())
def test_roundtrip_depth_two(data):
    a = data.draw(elements(F2TU, 1))
    assert parse_element(str(a), F2TU) == a


def test_roundtrip_bulk(rng):
    from woundcert.sampling import random_element

    for tower in (F2T, F3T, F2TU):
        for _ in range(1000 if tower.depth == 1 else 200):
            a = random_element(tower, rng)
            assert parse_element(str(a), tower) == a

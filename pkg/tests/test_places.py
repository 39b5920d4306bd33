"""
Tests for places of F_q(t)
"""

from fractions import Fraction

import pytest

from core.places import (count_irreducibles, enumerate_places, finite_place, infinity,
                         parse_place)


def test_enumerate_places_order():
    places = enumerate_places(2, 2)
    assert [str(p) for p in places] == ["inf", "t", "t+1", "t^2+t+1"]
    assert places[0].is_infinite


def test_enumerate_places_needs_positive_degree():
    with pytest.raises(ValueError):
        enumerate_places(2, 0)


def test_count_irreducibles():
    assert count_irreducibles(3, 2) == 3
    assert count_irreducibles(2, 3) == 2


def test_local_constants():
    inf = infinity(2)
    t = finite_place(2, (0, 1))
    quad = finite_place(2, (1, 1, 1))
    assert inf.order == -2 and t.order == 0
    assert inf.half_volume() == 2
    assert t.half_volume() == 1
    assert quad.degree == 2 and quad.q_v == 4
    assert quad.modulus(1) == Fraction(1, 4)
    assert inf.modulus(-1) == 2


def test_finite_place_rejects_bad_polynomials():
    with pytest.raises(ValueError):
        finite_place(2, (1, 0, 1))  # (t+1)^2
    with pytest.raises(ValueError):
        finite_place(3, (1, 2))  # not monic
    with pytest.raises(ValueError):
        finite_place(2, (1,))


@pytest.mark.parametrize("text, name", [
    ("inf", "inf"),
    ("oo", "inf"),
    ("t", "t"),
    ("[0,1]", "t"),
    ("1 1", "t+1"),
    ("[1, 1, 1]", "t^2+t+1"),
])
def test_parse_place(text, name):
    assert str(parse_place(2, text)) == name


def test_parse_place_rejects_garbage():
    with pytest.raises(ValueError):
        parse_place(2, "t-1")


def test_spec_round_trip():
    for place in enumerate_places(3, 2):
        assert parse_place(3, place.spec()) == place

"""
Tests for the tuple validators
"""

from fractions import Fraction

import pytest

from utils.helpers import calculate_hash, format_duration, format_rational, parse_rational
from utils.validators import (validate_choice, validate_h, validate_k_range, validate_place_spec,
                              validate_precision, validate_q)


@pytest.mark.parametrize("q, ok", [(2, True), (9, True), (16, True), (6, False), (32, False), ("x", False)])
def test_validate_q(q, ok):
    assert validate_q(q)[0] is ok


@pytest.mark.parametrize("spec, ok", [("inf", True), ("t", True), ("[0,1]", True), ("[0, 1, 1]", True),
                                      ("", False), ("t+1", False)])
def test_validate_place_spec(spec, ok):
    assert validate_place_spec(spec)[0] is ok


def test_validate_k_range():
    assert validate_k_range(0, 4) == (True, "")
    assert not validate_k_range(-1, 4)[0]
    assert not validate_k_range(3, 2)[0]
    assert not validate_k_range(0, 100)[0]


def test_validate_h():
    assert validate_h({0: Fraction(1)})[0]
    assert not validate_h({})[0]
    assert not validate_h({0: 0})[0]
    assert not validate_h({"a": 1})[0]


def test_validate_choice_and_precision():
    assert validate_choice("csv", ("csv", "json"), "format")[0]
    ok, message = validate_choice("xml", ("csv", "json"), "format")
    assert not ok and "format" in message
    assert validate_precision(12)[0]
    assert not validate_precision(0)[0]


def test_rational_helpers():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(-3) == "-3"
    assert parse_rational(" -5/10 ") == Fraction(-1, 2)
    with pytest.raises(ValueError):
        parse_rational("")
    assert format_duration(90) == "1.50 min"


def test_hash_ignores_key_order():
    assert calculate_hash({"q": 2, "h": {0: 1}}) == calculate_hash({"h": {0: 1}, "q": 2})
    assert calculate_hash({"q": 2}) != calculate_hash({"q": 3})

"""
Tests for the right-hand side of the limit formula
"""

from fractions import Fraction

import pytest

from core.arithmetic import GradedScalar
from core.class_vector import HFunction
from core.exceptions import EngineError, SupportError
from core.local_shell import shell
from core.places import enumerate_places, finite_place, infinity
from core.weil_rhs import (check_outside_vanishing, h_hats, local_pullback, log_prime,
                           log_prime_by_representatives, paired_quotient_trace, rhs_theorem31, support_radius_covered,
                           weil_local_terms)

INF = infinity(2)
T = finite_place(2, (0, 1))
T1 = finite_place(2, (1, 1))
QUAD = finite_place(2, (1, 1, 1))


def test_log_prime(place_set):
    assert log_prime(place_set, 1) == GradedScalar(1, 1)
    assert log_prime(place_set, 8) == GradedScalar(7, 1)
    assert log_prime_by_representatives(place_set, 3) == log_prime(place_set, 8)


@pytest.mark.parametrize("Lambda", [3, Fraction(1, 2), 0])
def test_log_prime_rejects_other_values(place_set, Lambda):
    with pytest.raises(EngineError):
        log_prime(place_set, Lambda)


def test_local_pullback():
    assert local_pullback(HFunction.delta(2, -1), T) == shell(T, 1)
    assert local_pullback(HFunction.delta(2, 1), INF) == shell(INF, -1)
    assert local_pullback(HFunction.delta(2, -1), QUAD).is_zero()
    assert local_pullback(HFunction.delta(2, -2), QUAD) == shell(QUAD, 1)


def test_weil_terms_of_single_classes(place_set):
    assert weil_local_terms(HFunction.delta(2, -1), place_set) == {
        INF: GradedScalar(1, 1), T: GradedScalar(1, 1)}
    assert weil_local_terms(HFunction.delta(2, 1), place_set) == {
        INF: GradedScalar(Fraction(1, 2), 1), T: GradedScalar(Fraction(1, 2), 1)}
    assert weil_local_terms(HFunction.delta(2, 0), place_set)[T] == GradedScalar(0, 1)


def test_weil_terms_are_breve_symmetric(place_set_three):
    h = HFunction.from_dict(2, {-2: 3, -1: Fraction(1, 2), 1: 5, 3: -1})
    assert weil_local_terms(h.breve(), place_set_three) == weil_local_terms(h, place_set_three)


def test_h_hats():
    h = HFunction.from_dict(2, {-1: 1, 1: 1})
    assert h_hats(h) == (GradedScalar(2, 1), GradedScalar(Fraction(5, 2), 1))


def test_rhs_for_identity_kernel(place_set):
    report = rhs_theorem31(8, HFunction.delta(2, 0), place_set)
    assert report.term_main == GradedScalar(14, 1)
    assert report.term_h0 == report.term_h1 == GradedScalar(1, 1)
    assert report.weil_total == GradedScalar(0, 1)
    assert report.total == GradedScalar(12, 1)
    record = report.to_record()
    assert record["rhs_total"] == 12
    assert record["weil[inf]"] == 0


def test_rhs_sums_local_terms(place_set):
    h = HFunction.from_dict(2, {-1: 1, 1: 1})
    report = rhs_theorem31(4, h, place_set)
    assert report.term_main == GradedScalar(0, 1)
    assert report.weil_total == GradedScalar(3, 1)
    assert report.total == GradedScalar(Fraction(-3, 2), 1)


@pytest.mark.parametrize("place", [p for p in enumerate_places(3, 2) if p.degree == 2])
@pytest.mark.parametrize("values", [{-1: 1}, {1: 1}, {-1: 2, 0: 3, 1: Fraction(-1, 2)}])
def test_terms_vanish_outside_s(place, values):
    h = HFunction.from_dict(3, values)
    vanishes, value = check_outside_vanishing(h, place, 1)
    assert vanishes
    assert value == GradedScalar(0, 1)


def test_outside_vanishing_preconditions(place_set):
    h = HFunction.from_dict(2, {-1: 1, 1: 1})
    with pytest.raises(EngineError):
        check_outside_vanishing(h, T, 1, place_set)
    with pytest.raises(EngineError):
        check_outside_vanishing(h, T1, 1, place_set)
    with pytest.raises(SupportError):
        check_outside_vanishing(HFunction.delta(2, 2), QUAD, 1, place_set)


def test_radius_condition(place_set, place_set_three):
    assert support_radius_covered(HFunction.delta(2, 0), place_set)
    assert not support_radius_covered(HFunction.delta(2, 1), place_set)
    assert support_radius_covered(HFunction.delta(2, 1), place_set_three)


@pytest.mark.parametrize("e, expected", [(-2, 2), (-1, 2), (0, 2), (1, 1), (2, Fraction(1, 2))])
def test_paired_quotient_trace_of_single_classes(e, expected):
    assert paired_quotient_trace(HFunction.delta(2, e)) == GradedScalar(expected, 1)


def test_paired_quotient_trace_differs_from_hat_sum_off_class_zero():
    h = HFunction.from_dict(2, {-1: 1, 1: 1})
    h0, h1 = h_hats(h)
    assert paired_quotient_trace(h) == GradedScalar(3, 1)
    assert h0 + h1 - paired_quotient_trace(h) == GradedScalar(Fraction(3, 2), 1)
    identity = HFunction.delta(2, 0)
    assert paired_quotient_trace(identity) == sum(h_hats(identity), GradedScalar(0, 1))


def test_paired_quotient_trace_is_breve_symmetric():
    h = HFunction.from_dict(2, {-2: 3, -1: Fraction(1, 2), 0: 7, 1: 5, 3: -1})
    assert paired_quotient_trace(h.breve()) == paired_quotient_trace(h)

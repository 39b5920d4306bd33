"""
Tests for place sets, the monoid R and periodization on A_S
"""

from fractions import Fraction

import pytest

from core.arithmetic import GradedScalar
from core.class_vector import ClassVector, HFunction
from core.exceptions import PlaceSetError, SupportError
from core.local_shell import ball, shell
from core.places import finite_place, infinity
from core.semilocal import (SemiLocalFunction, f_one, f_zero, functionals_l_lhat, lattice_points,
                            orbit_sum_E, orbit_sum_Ebar, orbit_sum_explicit, periodize_E,
                            representatives,
                            periodize_E_direct, periodize_Ebar, product_norm_support_check,
                            semilocal_multiplicative_integral, series_coefficients,
                            unit_coset_indicator, validate_place_set)

INF = infinity(2)
T = finite_place(2, (0, 1))
T1 = finite_place(2, (1, 1))
QUAD = finite_place(2, (1, 1, 1))


def unit_balls(place_set):
    """1_{O_inf} x 1_{O_t}"""
    return SemiLocalFunction.pure(place_set, (ball(INF, 0), ball(T, 0)))


def schwartz_zero_example(place_set):
    """A function in S_0 whose Ebar periodization is the unit vector at class 0"""
    return SemiLocalFunction(place_set, (
        (1, (ball(INF, 0), ball(T, 0))),
        (-3, (ball(INF, 0), ball(T, 1))),
        (2, (ball(INF, 0), ball(T, 2))),
    ))


def test_place_set_constants(place_set, place_set_three):
    assert place_set.c_S == 1
    assert place_set_three.c_S == 2
    assert place_set.period == 1
    assert place_set.tail_degree == 1
    assert place_set_three.tail_degree == 2
    assert place_set.anchor == T
    assert place_set.representative(3) == (0, -3)
    assert place_set.class_of((1, 2)) == -3
    assert place_set.unit_group_volume() == GradedScalar(1, 1)


def test_place_set_is_sorted():
    assert validate_place_set([T, INF]).places == (INF, T)


@pytest.mark.parametrize("places, bullets", [
    ([T], {"at_least_two_places", "character_orders"}),
    ([T, T1], {"character_orders"}),
    ([INF], {"at_least_two_places", "c_S_at_least_one"}),
    ([QUAD], {"at_least_two_places", "full_value_group", "character_orders", "representatives"}),
])
def test_place_set_bullets(places, bullets):
    with pytest.raises(PlaceSetError) as info:
        validate_place_set(places)
    assert set(info.value.bullets) == bullets


def test_infinity_with_a_quadratic_place_is_large_enough():
    place_set = validate_place_set([INF, QUAD])
    assert place_set.anchor == INF
    assert place_set.period == 2


def test_series_coefficients():
    assert series_coefficients((1, -2), (1, -1), 4) == (1, -1, -1, -1)
    assert series_coefficients((1, -1), (1, -2), 4) == (1, 1, 2, 4)


def test_lattice_points():
    assert lattice_points((1, 1), 2) == 3
    assert lattice_points((1, 2), 4) == 3
    assert lattice_points((1, 1), -1) == 0


def test_monoid_coefficients(place_set, place_set_three):
    monoid = place_set.monoid()
    assert [monoid.mobius(a) for a in range(4)] == [1, -1, -1, -1]
    assert [monoid.count(a) for a in range(4)] == [1, 1, 2, 4]
    three = place_set_three.monoid()
    assert [three.count(a) for a in range(4)] == [1, 0, 1, 2]
    assert [three.mobius(a) for a in range(4)] == [1, 0, -1, -2]
    assert three.elements(2) == [(1, 1, 1)]


@pytest.mark.parametrize("degree", range(5))
def test_mobius_series_matches_enumeration(place_set_three, degree):
    monoid = place_set_three.monoid()
    assert monoid.mobius(degree) == monoid.mobius_sum_direct(degree)
    assert monoid.count(degree) == len(monoid.elements(degree))


def test_canonical_equality(place_set):
    f = unit_balls(place_set)
    g = (SemiLocalFunction.pure(place_set, (shell(INF, 0), ball(T, 0)))
         + SemiLocalFunction.pure(place_set, (ball(INF, 1), ball(T, 0))))
    assert f.equals(g)
    assert not f.equals(g.scale(2))
    assert (f - g).is_zero()


def test_pure_needs_one_factor_per_place(place_set):
    with pytest.raises(ValueError):
        SemiLocalFunction.pure(place_set, (ball(T, 0),))


def test_unit_balls_example(place_set):
    f = unit_balls(place_set)
    assert functionals_l_lhat(f) == (1, GradedScalar(2, 0))
    expected_dual = SemiLocalFunction.pure(place_set, (ball(INF, 2, 2), ball(T, 0)))
    assert f.fourier().equals(expected_dual)
    assert f.fourier().value_at_zero() == 2
    E = periodize_E_direct(f)
    for d in range(-4, 3):
        assert E(d) == max(0, 1 - d)
    assert orbit_sum_Ebar(f, -1) == 3
    assert orbit_sum_Ebar(f, -3) == 2 ** 4 - 1
    assert orbit_sum_Ebar(f, 1) == 0


def test_orbit_sum_against_enumeration(place_set):
    f = unit_balls(place_set)
    for d in range(-2, 3):
        assert orbit_sum_explicit(f, d, box=6) == orbit_sum_E(f, d)
    assert orbit_sum_explicit(f, -1, box=6, r_degree=1) == orbit_sum_Ebar(f, -1)


def test_orbit_sum_with_three_places(place_set_three):
    f = SemiLocalFunction.pure(place_set_three, (ball(INF, 0), shell(T, 0), ball(T1, 0)))
    for d in range(-2, 2):
        assert orbit_sum_explicit(f, d, box=4) == orbit_sum_E(f, d)


def test_ebar_needs_schwartz_zero(place_set):
    with pytest.raises(SupportError):
        periodize_Ebar(unit_balls(place_set))


def test_schwartz_zero_periodization(place_set):
    f = schwartz_zero_example(place_set)
    assert f.in_schwartz_zero()
    assert periodize_Ebar(f) == ClassVector.unit(2, 1, 0)
    assert periodize_E(f) == periodize_E_direct(f)
    assert periodize_E(f)(-6) == -1
    assert product_norm_support_check(f, 0) == (True, True)


def test_ebar_duality(place_set):
    f = schwartz_zero_example(place_set)
    left = periodize_Ebar(f)
    right = periodize_Ebar(f.fourier())
    for d in range(-3, 4):
        assert left(d) == Fraction(2) ** (-d) * right(-d)


def test_unit_coset_indicator(place_set):
    E = periodize_E_direct(unit_coset_indicator(place_set, 2))
    assert E == ClassVector.unit(2, 1, 2)


def test_f_one(place_set):
    f1 = f_one(place_set, 1)
    assert periodize_E_direct(f1) == ClassVector.finite(2, 1, {-1: 1, 0: 1, 1: 1})
    assert f1.value_at_zero() == 0
    assert f1.fourier_at_zero() == Fraction(7, 4)
    assert f_zero(place_set, 1).equals(f1.fourier())


def test_multiplicative_integral(place_set):
    g = SemiLocalFunction.pure(place_set, (shell(INF, 1), shell(T, 0)))
    assert semilocal_multiplicative_integral(g) == GradedScalar(1, 1)
    assert semilocal_multiplicative_integral(g, 1) == GradedScalar(2, 1)
    with pytest.raises(SupportError):
        semilocal_multiplicative_integral(unit_balls(place_set))


def test_multiplicative_integral_matches_periodized_hats(place_set):
    g = SemiLocalFunction(place_set, (
        (2, (shell(INF, 1), shell(T, 0))),
        (Fraction(1, 3), (shell(INF, -1), shell(T, -1))),
        (1, (shell(INF, 0), shell(T, 2))),
    ))
    h = HFunction.from_dict(2, {e: orbit_sum_E(g, e) for e in range(-4, 5)})
    assert {e: v for e, v in h.values if v != 0} == {-2: 1, -1: 2, 2: Fraction(1, 3)}
    assert semilocal_multiplicative_integral(g) == h.hat_zero() == GradedScalar(Fraction(10, 3), 1)
    assert semilocal_multiplicative_integral(g, 1) == h.hat_one() == GradedScalar(Fraction(97, 12), 1)


def test_representatives_cover_each_class_once(place_set_three):
    vectors = representatives(place_set_three, -2, 3)
    assert [place_set_three.class_of(v) for v in vectors] == list(range(-2, 4))
    assert len(set(vectors)) == 6


def test_text_round_trip(place_set):
    f = schwartz_zero_example(place_set)
    assert SemiLocalFunction.from_text(place_set, f.to_text()).equals(f)

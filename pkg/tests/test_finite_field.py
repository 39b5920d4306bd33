"""
Tests for finite fields and polynomials over them
"""

import pytest

from core.finite_field import (char_chi, factor_monic, field, format_polynomial,
                               irreducibles_by_degree, mobius_mu, monic_polynomials,
                               poly_divmod, poly_mul, prime_power)


def test_prime_power():
    assert prime_power(2) == (2, 1)
    assert prime_power(9) == (3, 2)
    with pytest.raises(ValueError):
        prime_power(6)
    with pytest.raises(ValueError):
        prime_power(1)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_field_axioms(q):
    F = field(q)
    for a in F.elements():
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
    assert len({F.power(a, q - 1) for a in range(1, q)}) == 1


def test_f4_has_no_zero_divisors():
    F = field(4)
    assert all(F.mul(a, b) != 0 for a in range(1, 4) for b in range(1, 4))


@pytest.mark.parametrize("q, counts", [
    (2, {1: 2, 2: 1, 3: 2, 4: 3}),
    (3, {1: 3, 2: 3, 3: 8}),
])
def test_irreducible_counts(q, counts):
    found = irreducibles_by_degree(q, max(counts))
    assert {degree: len(polys) for degree, polys in found.items()} == counts


def test_monic_polynomials_of_degree_zero():
    assert list(monic_polynomials(2, 0)) == [(1,)]
    assert len(list(monic_polynomials(3, 2))) == 9


def test_divmod_inverts_multiplication():
    F = field(3)
    f = (1, 2, 0, 1)
    g = (2, 1)
    quotient, remainder = poly_divmod(F, poly_mul(F, f, g), g)
    assert quotient == f
    assert remainder == ()


def test_factor_and_mobius():
    # t^2 + t = t (t + 1) over F_2
    assert factor_monic(2, (0, 1, 1)) == {(0, 1): 1, (1, 1): 1}
    assert mobius_mu(2, (0, 1, 1)) == 1
    assert mobius_mu(2, (0, 0, 1)) == 0
    assert mobius_mu(2, (1, 1, 1)) == -1
    assert mobius_mu(2, (1,)) == 1


def test_additive_character_of_f2():
    assert char_chi(0, 2).exponent == 0
    assert char_chi(1, 2).exponent == 1
    assert abs(char_chi(1, 2).to_complex() + 1) < 1e-12


def test_format_polynomial():
    assert format_polynomial((1, 1, 1)) == "t^2+t+1"
    assert format_polynomial((0, 1)) == "t"

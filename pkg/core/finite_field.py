"""
Finite fields F_q and polynomial arithmetic over them
"""

import cmath
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

logger = logging.getLogger(__name__)


def prime_power(q):
    """Return (p, m) with q = p**m, or raise ValueError"""
    factors = factorint(q)
    if q < 2 or len(factors) != 1:
        raise ValueError(f"q = {q} is not a prime power")
    (p, m), = factors.items()
    return int(p), int(m)


class FiniteField:
    """F_q with elements labelled 0..q-1 by their base-p digit vectors.

    Multiplication goes through exponent tables built from a primitive
    polynomial of degree m over F_p; addition is digitwise mod p.
    """

    def __init__(self, q):
        self.q = q
        self.p, self.m = prime_power(q)
        self.modulus = self._primitive_modulus()
        self._build_tables()
        logger.debug(f"Built F_{q} with modulus {self.modulus}")

    def _primitive_modulus(self):
        p, m = self.p, self.m
        if m == 1:
            return None
        for tail in itertools.product(range(p), repeat=m):
            coeffs = [1] + list(tail)  # high to low, monic
            if coeffs[-1] == 0 or not gf_irreducible_p(coeffs, p, ZZ):
                continue
            if self._generator_order(coeffs) == self.q - 1:
                return tuple(coeffs)
        raise ValueError(f"No primitive polynomial found for q = {self.q}")

    def _generator_order(self, coeffs):
        current = self._times_x(self._digits(1), coeffs)
        order = 1
        while current != self._digits(1):
            current = self._times_x(current, coeffs)
            order += 1
        return order

    def _digits(self, label):
        digits = []
        for _ in range(self.m):
            digits.append(label % self.p)
            label //= self.p
        return tuple(digits)

    def _label(self, digits):
        label = 0
        for digit in reversed(digits):
            label = label * self.p + digit
        return label

    def _times_x(self, digits, coeffs):
        # digits are low-to-high coefficients of a residue mod the modulus
        p, m = self.p, self.m
        top = digits[-1]
        shifted = (0,) + digits[:-1]
        # x^m = -(c_1 x^{m-1} + ... + c_m)
        reduction = [(-c) % p for c in reversed(coeffs[1:])]
        return tuple((shifted[i] + top * reduction[i]) % p for i in range(m))

    def _build_tables(self):
        q = self.q
        self.exp = [0] * (2 * q)
        self.log = [None] * q
        if self.m == 1:
            generator = next(g for g in range(1, q) if self._order_mod_p(g) == q - 1)
            value = 1
            for i in range(q - 1):
                self.exp[i] = value
                self.log[value] = i
                value = value * generator % q
        else:
            digits = self._digits(1)
            for i in range(q - 1):
                label = self._label(digits)
                self.exp[i] = label
                self.log[label] = i
                digits = self._times_x(digits, self.modulus)
        for i in range(q - 1, 2 * q):
            self.exp[i] = self.exp[i % (q - 1)]

    def _order_mod_p(self, g):
        order, value = 1, g % self.p
        while value != 1:
            value = value * g % self.p
            order += 1
        return order

    def elements(self):
        return range(self.q)

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        return self._label(tuple((x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))))

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        return self._label(tuple((-x) % self.p for x in self._digits(a)))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def power(self, a, n):
        if a == 0:
            return 0 if n > 0 else 1
        return self.exp[(self.log[a] * n) % (self.q - 1)]

    def trace_to_prime(self, a):
        """Tr_{F_q/F_p}(a) as an integer in 0..p-1"""
        total = 0
        for i in range(self.m):
            total = self.add(total, self.power(a, self.p ** i))
        return total


@lru_cache(maxsize=None)
def field(q):
    return FiniteField(q)


@dataclass(frozen=True)
class RootOfUnity:
    """The root of unity exp(2 pi i exponent / order)"""

    order: int
    exponent: int

    def __mul__(self, other):
        if other.order != self.order:
            raise ValueError("Roots of unity of different orders")
        return RootOfUnity(self.order, (self.exponent + other.exponent) % self.order)

    def to_complex(self):
        return cmath.exp(2j * cmath.pi * self.exponent / self.order)


def char_chi(a, q):
    """The base additive character chi(a) = zeta_p^{Tr(a)} of F_q"""
    F = field(q)
    return RootOfUnity(F.p, F.trace_to_prime(a))


# Polynomials over F_q are tuples of element labels, low degree first, no trailing zeros.

def poly_trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_degree(f):
    return len(f) - 1 if f else -1


def poly_add(F, f, g):
    n = max(len(f), len(g))
    f = tuple(f) + (0,) * (n - len(f))
    g = tuple(g) + (0,) * (n - len(g))
    return poly_trim(F.add(a, b) for a, b in zip(f, g))


def poly_mul(F, f, g):
    if not f or not g:
        return ()
    result = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            result[i + j] = F.add(result[i + j], F.mul(a, b))
    return poly_trim(result)


def poly_divmod(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    remainder = list(f)
    quotient = [0] * max(len(f) - len(g) + 1, 0)
    lead_inv = F.inv(g[-1])
    while len(poly_trim(remainder)) >= len(g):
        remainder = list(poly_trim(remainder))
        shift = len(remainder) - len(g)
        factor = F.mul(remainder[-1], lead_inv)
        quotient[shift] = factor
        for i, b in enumerate(g):
            remainder[shift + i] = F.sub(remainder[shift + i], F.mul(factor, b))
    return poly_trim(quotient), poly_trim(remainder)


def monic_polynomials(q, degree):
    """All monic polynomials of the given degree, lexicographic on coefficients"""
    for tail in itertools.product(range(q), repeat=degree):
        yield tuple(tail) + (1,)


@lru_cache(maxsize=None)
def irreducibles_by_degree(q, max_degree):
    """Monic irreducibles grouped by degree, found by sieving out products"""
    F = field(q)
    found = {}
    for degree in range(1, max_degree + 1):
        reducible = set()
        for d in range(1, degree // 2 + 1):
            for g in found[d]:
                for h in monic_polynomials(q, degree - d):
                    reducible.add(poly_mul(F, g, h))
        found[degree] = [f for f in monic_polynomials(q, degree) if f not in reducible]
    return found


def factor_monic(q, f):
    """Factor a monic polynomial into {irreducible: multiplicity} by trial division"""
    F = field(q)
    factors = {}
    irreducibles = irreducibles_by_degree(q, max(poly_degree(f), 1))
    remaining = tuple(f)
    for degree in sorted(irreducibles):
        for g in irreducibles[degree]:
            if poly_degree(remaining) < degree:
                break
            while True:
                quotient, remainder = poly_divmod(F, remaining, g)
                if remainder:
                    break
                factors[g] = factors.get(g, 0) + 1
                remaining = quotient
    return factors


def mobius_mu(q, f):
    """Moebius function of a monic polynomial over F_q"""
    factors = factor_monic(q, f)
    if any(multiplicity > 1 for multiplicity in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def format_polynomial(f):
    """Human readable form in the variable t, e.g. t^2+t+1"""
    terms = []
    for power in range(len(f) - 1, -1, -1):
        c = f[power]
        if c == 0:
            continue
        coeff = "" if (c == 1 and power > 0) else str(c)
        if power == 0:
            terms.append(str(c))
        elif power == 1:
            terms.append(f"{coeff}t")
        else:
            terms.append(f"{coeff}t^{power}")
    return "+".join(terms) or "0"

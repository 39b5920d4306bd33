"""
Semi-local adeles A_S: place sets, Schwartz-Bruhat functions and periodization
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from sympy.polys.domains import QQ, ZZ
from sympy.polys.ring_series import rs_mul, rs_series_inversion
from sympy.polys.rings import ring

from core.arithmetic import GradedScalar, as_fraction
from core.class_vector import ClassVector, upward_convolution
from core.exceptions import PlaceSetError, SupportError
from core.finite_field import (field, mobius_mu, monic_polynomials, poly_degree,
                               poly_divmod, poly_mul)
from core.local_shell import additive_integral, fourier_shell, from_text as shell_from_text, shell
from utils.helpers import format_rational, parse_rational

logger = logging.getLogger(__name__)

BULLETS = (
    "at_least_two_places",
    "full_value_group",
    "character_orders",
    "c_S_at_least_one",
    "representatives",
)


@lru_cache(maxsize=None)
def series_coefficients(numerator, denominator, count):
    """First count power series coefficients of numerator/denominator (integer tuples, low first)"""
    R, x = ring("x", QQ)
    num = sum((c * x ** i for i, c in enumerate(numerator)), R.zero)
    den = sum((c * x ** i for i, c in enumerate(denominator)), R.zero)
    expansion = rs_mul(num, rs_series_inversion(den, x, count), x, count)
    coefficients = dict(expansion)
    return tuple(as_fraction(coefficients.get((i,), QQ.zero)) for i in range(count))


@lru_cache(maxsize=None)
def lattice_points(parts, total):
    """Number of i in N^len(parts) with sum parts[v] * i_v = total"""
    if total < 0:
        return 0
    if not parts:
        return 1 if total == 0 else 0
    head, rest = parts[0], parts[1:]
    return sum(lattice_points(rest, total - head * i) for i in range(total // head + 1))


@dataclass(frozen=True)
class PlaceSet:
    """A validated, large enough set S of places of F_q(t)"""

    q: int
    places: tuple
    q_0: int
    k_0: int
    anchor: object
    mobius_numerator: tuple
    mobius_denominator: tuple

    @property
    def c_S(self):
        """prod_{v in S} q_v^{1 + n(v)} = q_0^{k_0}"""
        return Fraction(self.q_0) ** self.k_0

    @property
    def degrees(self):
        return tuple(place.degree for place in self.places)

    @property
    def finite_places(self):
        return tuple(place for place in self.places if not place.is_infinite)

    @property
    def period(self):
        """lcm of the local degrees; tails are polynomial per residue class mod this"""
        return lcm(*self.degrees)

    @property
    def tail_degree(self):
        return len(self.places) - 1

    def index(self, place):
        return self.places.index(place)

    def class_of(self, valuations):
        """log_q |x| for the valuation vector of x"""
        return -sum(f * j for f, j in zip(self.degrees, valuations))

    def representative(self, d):
        """Valuation vector of pi_S^{-d}"""
        return tuple(-d if place == self.anchor else 0 for place in self.places)

    def unit_group_volume(self):
        """vol(O_S^x) = (q - 1) log q; one class of k_S^x O_S^x has volume log q"""
        return GradedScalar(self.q - 1, 1)

    def monoid(self):
        return MonoidR(self)

    def __str__(self):
        return "{" + ", ".join(str(place) for place in self.places) + "}"


def validate_place_set(places):
    """Check the largeness conditions and build a PlaceSet"""
    places = tuple(sorted(set(places), key=lambda place: place.sort_key()))
    if not places:
        raise PlaceSetError(["at_least_two_places"])
    q = places[0].q
    if any(place.q != q for place in places):
        raise ValueError("Places over different constant fields")
    violated = []
    if len(places) < 2:
        violated.append("at_least_two_places")
    if gcd(*(place.degree for place in places)) != 1:
        violated.append("full_value_group")
    if not any(place.is_infinite for place in places):
        violated.append("character_orders")
    k_0 = sum(place.degree * (1 + place.order) for place in places)
    if k_0 < 0:
        violated.append("c_S_at_least_one")
    anchor = _choose_anchor(places)
    if anchor is None:
        violated.append("representatives")
    if violated:
        logger.error(f"Place set {[str(p) for p in places]} rejected: {', '.join(violated)}")
        raise PlaceSetError(violated)
    place_set = PlaceSet(q, places, q, k_0, anchor, (1, -q), _mobius_denominator(places))
    logger.debug(f"Validated S = {place_set} with c_S = {place_set.c_S}")
    return place_set


def _choose_anchor(places):
    """The place carrying pi_S: t if present, else infinity, else any degree one place"""
    for place in places:
        if not place.is_infinite and place.poly == (0, 1):
            return place
    for place in places:
        if place.degree == 1:
            return place
    return None


def _mobius_denominator(places):
    """Coefficients of prod over finite v in S of (1 - x^{deg v}), low degree first"""
    R, x = ring("x", ZZ)
    product = R.one
    for place in places:
        if not place.is_infinite:
            product *= 1 - x ** place.degree
    terms = dict(product.terms())
    return tuple(int(terms.get((i,), 0)) for i in range(product.degree() + 1))


@dataclass(frozen=True)
class MonoidR:
    """R = k_S^0 / k_S^x: monic polynomials coprime to the finite places of S"""

    place_set: PlaceSet

    def mobius_coefficients(self, count):
        """M_a = sum of mu(r) over deg r = a, from (1 - q x) / prod (1 - x^{deg P})"""
        ps = self.place_set
        return series_coefficients(ps.mobius_numerator, ps.mobius_denominator, count)

    def counting_coefficients(self, count):
        """N_a = #{r in R : deg r = a}, the inverse series of M"""
        ps = self.place_set
        return series_coefficients(ps.mobius_denominator, ps.mobius_numerator, count)

    def mobius(self, a):
        return self.mobius_coefficients(_chunk(a))[a] if a >= 0 else Fraction(0)

    def count(self, a):
        return self.counting_coefficients(_chunk(a))[a] if a >= 0 else Fraction(0)

    def is_coprime(self, r):
        F = field(self.place_set.q)
        return all(poly_divmod(F, r, place.poly)[1] for place in self.place_set.finite_places)

    def elements(self, degree):
        """All r in R of the given degree"""
        return [r for r in monic_polynomials(self.place_set.q, degree) if self.is_coprime(r)]

    def mobius_sum_direct(self, degree):
        """sum of mu(r) over r in R of the given degree, by enumeration"""
        return sum(mobius_mu(self.place_set.q, r) for r in self.elements(degree))


def _chunk(a):
    return 32 * (a // 32 + 1)


@dataclass(frozen=True)
class SemiLocalFunction:
    """sum_i c_i prod_v f_{i,v}(x_v): an O_S^x-invariant Schwartz-Bruhat function on A_S"""

    place_set: PlaceSet
    terms: tuple = ()

    def __post_init__(self):
        merged = {}
        for coefficient, factors in self.terms:
            coefficient = as_fraction(coefficient)
            factors = tuple(factors)
            if coefficient == 0 or any(f.is_zero() for f in factors):
                continue
            merged[factors] = merged.get(factors, Fraction(0)) + coefficient
        terms = tuple((c, factors) for factors, c in merged.items() if c != 0)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def pure(cls, place_set, factors, coefficient=1):
        if len(factors) != len(place_set.places):
            raise ValueError("Need one local factor per place of S")
        return cls(place_set, ((coefficient, tuple(factors)),))

    @classmethod
    def zero(cls, place_set):
        return cls(place_set, ())

    def __add__(self, other):
        if other.place_set != self.place_set:
            raise ValueError("Functions on different place sets")
        return SemiLocalFunction(self.place_set, self.terms + other.terms)

    def scale(self, c):
        c = as_fraction(c)
        return SemiLocalFunction(self.place_set, tuple((c * coefficient, factors) for coefficient, factors in self.terms))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __call__(self, valuations):
        """Value at a point with the given valuation vector; None marks a zero coordinate"""
        return sum((c * _product(f(j) for f, j in zip(factors, valuations)) for c, factors in self.terms), Fraction(0))

    def fourier(self):
        return SemiLocalFunction(self.place_set, tuple(
            (c, tuple(fourier_shell(f) for f in factors)) for c, factors in self.terms))

    def value_at_zero(self):
        return sum((c * _product(f.tail_value for f in factors) for c, factors in self.terms), Fraction(0))

    def fourier_at_zero(self):
        """f^(0) = integral of f over A_S"""
        return sum((c * _product(additive_integral(f).value for f in factors) for c, factors in self.terms), Fraction(0))

    def in_schwartz_zero(self):
        return self.value_at_zero() == 0 and self.fourier_at_zero() == 0

    def grid(self):
        """Per place (lo, hi): f is constant on each shell in [lo, hi) and on pi^hi O_v"""
        bounds = []
        for v in range(len(self.place_set.places)):
            factors = [factors[v] for _, factors in self.terms]
            lo = min((f.j_min for f in factors), default=0)
            hi = max((f.j_tail for f in factors), default=0)
            bounds.append((lo, max(lo, hi)))
        return bounds

    def cells(self):
        """{cell: value} for the nonzero cells; a cell coordinate None is the ball pi^hi O_v"""
        bounds = self.grid()
        axes = [list(range(lo, hi)) + [None] for lo, hi in bounds]
        table = {}
        for cell in itertools.product(*axes):
            point = tuple(hi if j is None else j for j, (_, hi) in zip(cell, bounds))
            value = sum((c * _product(f(j) for f, j in zip(factors, point)) for c, factors in self.terms), Fraction(0))
            if value != 0:
                table[cell] = value
        return table

    def is_zero(self):
        return not self.cells()

    def equals(self, other):
        return (self - other).is_zero()

    def to_text(self):
        """One record per term: coefficient | factor | factor ..."""
        return "\n".join(
            format_rational(c) + " | " + " | ".join(f.to_text() for f in factors)
            for c, factors in self.terms)

    @classmethod
    def from_text(cls, place_set, text):
        terms = []
        for line in text.strip().splitlines():
            fields = [field_text.strip() for field_text in line.split("|")]
            factors = tuple(shell_from_text(place_set.q, field_text) for field_text in fields[1:])
            if tuple(f.place for f in factors) != place_set.places:
                raise ValueError(f"Factors of '{line}' do not match S = {place_set}")
            terms.append((parse_rational(fields[0]), factors))
        return cls(place_set, tuple(terms))


def _product(values):
    result = Fraction(1)
    for value in values:
        result *= value
    return result


def product_norm_support_check(f, k):
    """(primal, dual): whether f, resp. f^, vanishes at every x with |x| > q^k"""
    return _norm_bounded(f, k), _norm_bounded(f.fourier(), k)


def _norm_bounded(f, k):
    bounds = f.grid()
    degrees = f.place_set.degrees
    for cell in f.cells():
        lowest = sum(deg * (hi if j is None else j) for deg, j, (_, hi) in zip(degrees, cell, bounds))
        if lowest < -k:
            return False
    return True


def functionals_l_lhat(f):
    """(f(0), f^(0)), the values of l and l^ on E_S(f)"""
    return f.value_at_zero(), GradedScalar(f.fourier_at_zero(), 0)


def _term_class_bounds(place_set, factors):
    degrees = place_set.degrees
    top = -sum(deg * f.j_min for deg, f in zip(degrees, factors))
    cutoff = sum(deg * (1 - f.j_tail) for deg, f in zip(degrees, factors))
    return top, cutoff


def orbit_sum_E(f, d):
    """sum over gamma in k_S^x of f(gamma pi_S^{-d}), without the q^{d/2} factor.

    S-units c * prod P^{n_P} realise every valuation vector of total degree 0,
    so this is (q - 1) times the sum of f over the points of class d.
    """
    place_set = f.place_set
    parts = place_set.degrees
    total = Fraction(0)
    for c, factors in f.terms:
        ball_lists = [list(g.balls().items()) for g in factors]
        for choice in itertools.product(*ball_lists):
            weight = _product(coefficient for _, coefficient in choice)
            offset = sum(deg * m for deg, (m, _) in zip(parts, choice))
            total += c * weight * lattice_points(tuple(sorted(parts)), -d - offset)
    return (place_set.q - 1) * total


def orbit_sum_Ebar(f, d):
    """sum over gamma in k_S^0 of f(gamma pi_S^{-d}): the S-unit sums of r gamma over r in R"""
    monoid = f.place_set.monoid()
    top = _function_top(f)
    if top is None:
        return Fraction(0)
    return sum((monoid.count(a) * orbit_sum_E(f, d + a) for a in range(top - d + 1)), Fraction(0))


def _function_top(f):
    tops = [_term_class_bounds(f.place_set, factors)[0] for _, factors in f.terms]
    return max(tops, default=None)


def periodize_E_direct(f):
    """E_S(f) in the weighted model, from the lattice form of the orbit sum"""
    place_set = f.place_set
    if not f.terms:
        return ClassVector.zero(place_set.q, place_set.period)
    bounds = [_term_class_bounds(place_set, factors) for _, factors in f.terms]
    top = max(b[0] for b in bounds)
    cutoff = min(b[1] for b in bounds)
    return ClassVector.from_evaluator(place_set.q, place_set.period, place_set.tail_degree,
                                      top, cutoff, lambda d: orbit_sum_E(f, d))


def periodize_Ebar(f):
    """Ebar_S(f) in the weighted model; finitely supported for f in S_0(A_S)"""
    place_set = f.place_set
    if not f.in_schwartz_zero():
        logger.error("Ebar periodization requested outside S_0(A_S)")
        raise SupportError("Ebar_S(f) diverges unless f(0) = 0 = f^(0)")
    top = _function_top(f)
    if top is None:
        return ClassVector.zero(place_set.q, place_set.period)
    dual_top = _function_top(f.fourier())
    floor = -dual_top if dual_top is not None else top
    lowest = floor - place_set.period * (place_set.tail_degree + 1)
    e_values = {d: orbit_sum_E(f, d) for d in range(lowest, top + 1)}
    monoid = place_set.monoid()
    values = {d: sum((monoid.count(a) * e_values[d + a] for a in range(top - d + 1)), Fraction(0))
              for d in range(lowest, top + 1)}
    if any(values[d] != 0 for d in range(lowest, floor)):
        logger.error(f"Ebar_S(f) does not vanish below class {floor}")
        raise SupportError(f"Ebar_S(f) does not vanish below class {floor}")
    return ClassVector.finite(place_set.q, place_set.period, values)


def periodize_E(f):
    """E_S(f) in the weighted model; for f in S_0 through Moebius inversion of Ebar_S(f)"""
    place_set = f.place_set
    if not f.in_schwartz_zero():
        return periodize_E_direct(f)
    monoid = place_set.monoid()
    return upward_convolution(periodize_Ebar(f), monoid.mobius, place_set.tail_degree)


def orbit_sum_explicit(f, d, box, r_degree=0):
    """Brute-force orbit sum over gamma = c * prod P^{n_P} * r with |n_P| <= box, deg r <= r_degree.

    Valuations are computed by polynomial division, independent of the
    lattice description. r_degree = 0 gives E_S, larger values truncate Ebar_S.
    """
    place_set = f.place_set
    F = field(place_set.q)
    finite = place_set.finite_places
    monoid = place_set.monoid()
    base = place_set.representative(d)
    total = Fraction(0)
    r_values = [r for a in range(r_degree + 1) for r in monoid.elements(a)]
    for exponents in itertools.product(range(-box, box + 1), repeat=len(finite)):
        numerator, denominator = (1,), (1,)
        for place, n in zip(finite, exponents):
            for _ in range(abs(n)):
                if n > 0:
                    numerator = poly_mul(F, numerator, place.poly)
                else:
                    denominator = poly_mul(F, denominator, place.poly)
        for r in r_values:
            top = poly_mul(F, numerator, r)
            valuations = []
            for place in place_set.places:
                if place.is_infinite:
                    valuations.append(poly_degree(denominator) - poly_degree(top))
                else:
                    valuations.append(_valuation(F, top, place.poly) - _valuation(F, denominator, place.poly))
            point = tuple(j + b for j, b in zip(valuations, base))
            total += (place_set.q - 1) * f(point)
    return total


def _valuation(F, g, p):
    count = 0
    while True:
        quotient, remainder = poly_divmod(F, g, p)
        if remainder:
            return count
        g = quotient
        count += 1


def unit_coset_indicator(place_set, d):
    """1_{a O_S^x} for a = pi_S^{-d}, so |a| = q^d"""
    return coset_indicator(place_set, place_set.representative(d))


def coset_indicator(place_set, valuations):
    """1_{a O_S^x} for the element a with the given valuation vector"""
    factors = tuple(shell(place, j) for place, j in zip(place_set.places, valuations))
    return SemiLocalFunction.pure(place_set, factors)


def representatives(place_set, low, high):
    """Valuation vectors of A(q^low, q^high) = {pi_S^{-d} : low <= d <= high}"""
    return [place_set.representative(d) for d in range(low, high + 1)]


def f_one(place_set, k, low=None):
    """f_{1,Lambda} = (q-1)^{-1} sum over A(c_S/Lambda, Lambda) of 1_{a O_S^x}"""
    if low is None:
        low = place_set.k_0 - k
    result = SemiLocalFunction.zero(place_set)
    for valuations in representatives(place_set, low, k):
        result = result + coset_indicator(place_set, valuations)
    return result.scale(Fraction(1, place_set.q - 1))


def f_zero(place_set, k):
    """f_{0,Lambda}, the Fourier transform of f_{1,Lambda}"""
    return f_one(place_set, k).fourier()


def semilocal_multiplicative_integral(g, weight_exponent=0):
    """integral over A_S^x of g(x) |x|^{-weight_exponent} d^x x, in log q units"""
    if any(f.tail_value != 0 for _, factors in g.terms for f in factors):
        raise SupportError("g is not compactly supported on A_S^x")
    place_set = g.place_set
    q = Fraction(place_set.q)
    total = Fraction(0)
    for cell, value in g.cells().items():
        total += value * q ** (-weight_exponent * place_set.class_of(cell))
    return place_set.unit_group_volume() * total

"""
Functions on the degree-graded idele class set, in the weighted L^2 model
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from config.settings import Settings
from core.arithmetic import GradedScalar, as_fraction
from core.exceptions import SupportError

logger = logging.getLogger(__name__)

# tails are polynomials in the class variable d
TAIL_RING, _d = ring("d", QQ)
_D = sympy.Symbol("d")
_Z = sympy.Symbol("z")


def to_qq(value):
    value = as_fraction(value)
    return QQ(value.numerator, value.denominator)


def tail_polynomial(coeffs):
    """A TAIL_RING element from coefficients listed low degree first"""
    if isinstance(coeffs, PolyElement):
        return coeffs
    return TAIL_RING.from_dict({(i,): to_qq(c) for i, c in enumerate(coeffs) if c != 0})


def tail_coefficients(poly):
    """Coefficients of a tail polynomial, low degree first"""
    if not poly:
        return ()
    terms = dict(poly.terms())
    return tuple(as_fraction(terms.get((i,), QQ.zero)) for i in range(poly.degree() + 1))


def fit_polynomial(points):
    """Interpolating polynomial through (x, y) pairs"""
    if all(y == 0 for _, y in points):
        return TAIL_RING.zero
    data = [(sympy.Integer(x), sympy.Rational(y.numerator, y.denominator)) for x, y in points]
    return TAIL_RING.from_expr(sympy.expand(sympy.interpolate(data, _D)))


@lru_cache(maxsize=None)
def _moment_expression(k):
    expression = 1 / (1 - _Z)
    for _ in range(k):
        expression = sympy.together(_Z * sympy.diff(expression, _Z))
    return expression


@lru_cache(maxsize=None)
def geometric_moment(k, z):
    """sum_{n >= 0} n^k z^n for a rational 0 < z < 1"""
    value = _moment_expression(k).subs(_Z, sympy.Rational(z.numerator, z.denominator))
    return as_fraction(value)


def _residue_top(cutoff, residue, period):
    """Largest d < cutoff with d = residue mod period"""
    return cutoff - 1 - ((cutoff - 1 - residue) % period)


@dataclass(frozen=True, eq=False)
class ClassVector:
    """v(d) on classes d = log_q |x|.

    Values for d >= cutoff are listed in head (zero when absent); below the
    cutoff v agrees with tails[d mod period], a polynomial in d.
    """

    q: int
    period: int
    cutoff: int
    head: tuple = ()
    tails: tuple = ()

    def __post_init__(self):
        head = tuple(sorted((int(d), as_fraction(v)) for d, v in dict(self.head).items() if v != 0 and d >= self.cutoff))
        tails = tuple(tail_polynomial(tail) for tail in self.tails)
        if not any(tails):
            tails = ()
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "tails", tails)
        object.__setattr__(self, "_lookup", dict(head))

    @classmethod
    def zero(cls, q, period):
        return cls(q, period, 0)

    @classmethod
    def finite(cls, q, period, values):
        """A finitely supported vector from {d: value}"""
        values = {d: v for d, v in values.items() if v != 0}
        cutoff = min(values, default=0)
        return cls(q, period, cutoff, tuple(values.items()))

    @classmethod
    def unit(cls, q, period, d):
        return cls.finite(q, period, {d: Fraction(1)})

    @classmethod
    def from_evaluator(cls, q, period, degree, top, cutoff, evaluate, checks=Settings.TAIL_CHECK_POINTS):
        """Build a vector from exact values, fitting the tail below cutoff per residue class"""
        cutoff = min(cutoff, top + 1)
        head = {d: evaluate(d) for d in range(cutoff, top + 1)}
        tails = []
        for residue in range(period):
            start = _residue_top(cutoff, residue, period)
            points = [(start - period * n, as_fraction(evaluate(start - period * n))) for n in range(degree + 1 + checks)]
            tail = fit_polynomial(points[:degree + 1])
            for d, value in points[degree + 1:]:
                if as_fraction(tail(d)) != value:
                    logger.error(f"Tail did not settle below class {cutoff} (residue {residue})")
                    raise SupportError(f"Tail below class {cutoff} is not polynomial of degree <= {degree}")
            tails.append(tail)
        return cls(q, period, cutoff, tuple(head.items()), tuple(tails))

    @classmethod
    def from_window(cls, q, period, degree, start, values, cutoff):
        """Rebuild a vector from its values on [start, start + len(values))"""
        table = {start + i: as_fraction(v) for i, v in enumerate(values)}
        head = {d: v for d, v in table.items() if d >= cutoff}
        tails = []
        for residue in range(period):
            top = _residue_top(cutoff, residue, period)
            points = [(top - period * n, table[top - period * n]) for n in range(degree + 1)]
            tails.append(fit_polynomial(points))
        return cls(q, period, cutoff, tuple(head.items()), tuple(tails))

    def has_tail(self):
        return bool(self.tails)

    def is_zero(self):
        return not self.head and not self.tails

    @property
    def top(self):
        """Highest class with a nonzero value (None for the zero vector)"""
        if self.head:
            return self.head[-1][0]
        return self.cutoff - 1 if self.tails else None

    @property
    def bottom(self):
        """Lowest nonzero class of a finitely supported vector"""
        if self.tails:
            raise SupportError("Vector has an infinite tail")
        return self.head[0][0] if self.head else None

    def __call__(self, d):
        if d >= self.cutoff:
            return self._lookup.get(d, Fraction(0))
        if not self.tails:
            return Fraction(0)
        return as_fraction(self.tails[d % self.period](d))

    value_at = __call__

    def _check(self, other):
        if other.q != self.q or other.period != self.period:
            raise ValueError("Class vectors over different place sets")

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def _combine(self, other, sign):
        self._check(other)
        if self.is_zero():
            return other.scale(sign)
        if other.is_zero():
            return self
        cutoff = min(self.cutoff, other.cutoff)
        top = max(self.top, other.top)
        head = {d: self(d) + sign * other(d) for d in range(cutoff, top + 1)}
        tails = ()
        if self.tails or other.tails:
            left = self.tails or (TAIL_RING.zero,) * self.period
            right = other.tails or (TAIL_RING.zero,) * self.period
            tails = tuple(a + b * sign for a, b in zip(left, right))
        return ClassVector(self.q, self.period, cutoff, tuple(head.items()), tails)

    def scale(self, c):
        c = as_fraction(c)
        if c == 0:
            return ClassVector.zero(self.q, self.period)
        return ClassVector(self.q, self.period, self.cutoff,
                           tuple((d, c * v) for d, v in self.head),
                           tuple(tail * to_qq(c) for tail in self.tails))

    def __neg__(self):
        return self.scale(-1)

    def shift(self, e):
        """The vector d -> v(d + e)"""
        tails = ()
        if self.tails:
            tails = tuple(self.tails[(r + e) % self.period].compose(_d, _d + e) for r in range(self.period))
        return ClassVector(self.q, self.period, self.cutoff - e, tuple((d - e, v) for d, v in self.head), tails)

    def reflect(self):
        """d -> q^{-d} v(-d), defined on finitely supported vectors"""
        if self.tails:
            raise SupportError("Reflection needs a finitely supported vector")
        return ClassVector.finite(self.q, self.period, {-d: Fraction(self.q) ** d * v for d, v in self.head})

    def __eq__(self, other):
        if not isinstance(other, ClassVector):
            return NotImplemented
        return (self - other).is_zero()

    def window(self, start, stop):
        return [self(d) for d in range(start, stop)]

    def inner(self, other):
        """Weighted pairing sum_d q^d v(d) w(d) as a rational"""
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Fraction(0)
        q = Fraction(self.q)
        cutoff = min(self.cutoff, other.cutoff)
        top = min(self.top, other.top)
        total = sum((q ** d * self(d) * other(d) for d in range(cutoff, top + 1)), Fraction(0))
        if self.tails and other.tails:
            z = q ** (-self.period)
            for residue in range(self.period):
                product = self.tails[residue] * other.tails[residue]
                if not product:
                    continue
                start = _residue_top(cutoff, residue, self.period)
                series = product.compose(_d, start - self.period * _d)
                total += q ** start * sum((as_fraction(b) * geometric_moment(k, z) for (k,), b in series.terms()), Fraction(0))
        return total

    def norm_squared(self):
        return self.inner(self)

    def __str__(self):
        head = ", ".join(f"{d}: {v}" for d, v in self.head)
        tail = f"; tail below {self.cutoff}" if self.tails else ""
        return f"ClassVector({{{head}}}{tail})"


def inner_product(u, w):
    """<u, w> = sum_d q^d u(d) w(d), each class carrying one log q unit"""
    return GradedScalar(u.inner(w), 1)


@dataclass(frozen=True)
class HFunction:
    """A finitely supported test function h on graded classes"""

    q: int
    values: tuple

    def __post_init__(self):
        values = tuple(sorted((int(e), as_fraction(v)) for e, v in dict(self.values).items() if v != 0))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_dict(cls, q, values):
        return cls(q, tuple(values.items()))

    @classmethod
    def delta(cls, q, e, value=1):
        return cls(q, ((e, value),))

    def __call__(self, e):
        return dict(self.values).get(e, Fraction(0))

    def support(self):
        return [e for e, _ in self.values]

    def radius(self):
        """Smallest r with h supported in classes |e| <= r"""
        return max((abs(e) for e in self.support()), default=0)

    def at_one(self):
        """h(1), the value on the class of norm 1"""
        return self(0)

    def breve(self):
        """h^(e) = q^e h(-e), the weighted form of |x| h(1/x)"""
        return HFunction(self.q, tuple((-e, Fraction(self.q) ** (-e) * v) for e, v in self.values))

    def hat_zero(self):
        return GradedScalar(sum((v for _, v in self.values), Fraction(0)), 1)

    def hat_one(self):
        return GradedScalar(sum((Fraction(self.q) ** (-e) * v for e, v in self.values), Fraction(0)), 1)

    def apply(self, vector):
        """sum_e h(e) v(. + e) without the unit"""
        result = ClassVector.zero(vector.q, vector.period)
        for e, value in self.values:
            result = result + vector.shift(e).scale(value)
        return result

    def __str__(self):
        return " + ".join(f"{v}*delta_{e}" for e, v in self.values) or "0"


def upward_convolution(vector, coefficient, degree, floor=None, checks=Settings.TAIL_CHECK_POINTS):
    """w(d) = sum_{a >= 0} coefficient(a) v(d + a).

    Without a floor the input must be finitely supported and the result
    carries a fitted tail. With a floor the result is taken to vanish below
    it, which is verified on a few periods under the floor.
    """
    if vector.is_zero():
        return vector
    top = vector.top

    def evaluate(d):
        return sum((coefficient(a) * vector(d + a) for a in range(top - d + 1)), Fraction(0))

    if floor is None:
        cutoff = vector.bottom - 2
        return ClassVector.from_evaluator(vector.q, vector.period, degree, top, cutoff, evaluate)

    for d in range(floor - vector.period * (degree + 1 + checks), floor):
        if evaluate(d) != 0:
            logger.error(f"Convolution does not vanish at class {d} below floor {floor}")
            raise SupportError(f"Convolution does not vanish below class {floor}")
    return ClassVector.finite(vector.q, vector.period, {d: evaluate(d) for d in range(floor, top + 1)})

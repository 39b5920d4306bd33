"""
Exact scalars graded by the formal unit log q
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from core.exceptions import DegreeMismatchError


def as_fraction(value):
    """Coerce ints, Fractions, strings and sympy rationals to Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    numerator = getattr(value, "numerator", None)
    denominator = getattr(value, "denominator", None)
    if numerator is not None and denominator is not None:
        # sympy Rational and gmpy mpq expose numerator/denominator (possibly as methods)
        if callable(numerator):
            numerator, denominator = numerator(), denominator()
        return Fraction(int(numerator), int(denominator))
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"Cannot convert {value!r} to an exact rational")


@total_ordering
@dataclass(frozen=True)
class GradedScalar:
    """Exact rational times (log q)^degree"""

    value: Fraction
    degree: int = 0

    def __post_init__(self):
        object.__setattr__(self, "value", as_fraction(self.value))

    @classmethod
    def units(cls, value):
        """A degree-1 quantity: value * log q"""
        return cls(value, 1)

    def _coerce(self, other):
        if isinstance(other, GradedScalar):
            return other
        return GradedScalar(as_fraction(other), 0)

    def __add__(self, other):
        other = self._coerce(other)
        if other.degree != self.degree:
            raise DegreeMismatchError(self.degree, other.degree)
        return GradedScalar(self.value + other.value, self.degree)

    __radd__ = __add__

    def __neg__(self):
        return GradedScalar(-self.value, self.degree)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return GradedScalar(self.value * other.value, self.degree + other.degree)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("GradedScalar division by zero")
        return GradedScalar(1 / self.value, -self.degree)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, GradedScalar):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self.value == other.value and self.degree == other.degree

    def __hash__(self):
        return hash((self.value, self.degree))

    def __lt__(self, other):
        other = self._coerce(other)
        if other.degree != self.degree:
            raise DegreeMismatchError(self.degree, other.degree, "compare")
        return self.value < other.value

    def __abs__(self):
        return GradedScalar(abs(self.value), self.degree)

    def is_zero(self):
        return self.value == 0

    def to_float(self, q=None):
        """Float value; with q given the unit log q is evaluated as ln(q)"""
        result = float(self.value)
        if q is not None and self.degree:
            result *= math.log(q) ** self.degree
        return result

    def __str__(self):
        if self.degree == 0:
            return str(self.value)
        unit = "log q" if self.degree == 1 else f"(log q)^{self.degree}"
        return f"{self.value} {unit}"


ZERO_UNITS = GradedScalar(0, 1)

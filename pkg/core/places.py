"""
Places of the rational function field F_q(t)
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from core.finite_field import format_polynomial, irreducibles_by_degree, prime_power

logger = logging.getLogger(__name__)

INFINITY = "infinity"
FINITE = "finite"


@dataclass(frozen=True)
class Place:
    """A place v of F_q(t): a monic irreducible P, or the degree valuation at infinity.

    The additive character is the dt-character, so the order n(v) is 0 at
    finite places and -2 at infinity.
    """

    q: int
    kind: str
    poly: tuple = None

    @property
    def is_infinite(self):
        return self.kind == INFINITY

    @property
    def degree(self):
        return 1 if self.is_infinite else len(self.poly) - 1

    @property
    def q_v(self):
        return self.q ** self.degree

    @property
    def order(self):
        """n(v), the order of the local character"""
        return -2 if self.is_infinite else 0

    def sort_key(self):
        if self.is_infinite:
            return (0, 0, ())
        return (1, self.degree, self.poly)

    def modulus(self, j):
        """|pi_v^j|_v = q_v^{-j}"""
        return Fraction(self.q_v) ** (-j)

    def half_volume(self):
        """q_v^{-n(v)/2}: the self-dual volume of O_v"""
        return Fraction(self.q_v) ** (-(self.order // 2))

    def spec(self):
        """Specifier string used in configuration files"""
        if self.is_infinite:
            return "inf"
        return "[" + ",".join(str(c) for c in self.poly) + "]"

    def __str__(self):
        if self.is_infinite:
            return "inf"
        return format_polynomial(self.poly)


def infinity(q):
    return Place(q, INFINITY)


def finite_place(q, coeffs):
    """The finite place of a monic irreducible given low-to-high"""
    coeffs = tuple(int(c) for c in coeffs)
    if not coeffs or coeffs[-1] != 1:
        raise ValueError(f"Polynomial {coeffs} is not monic")
    if any(not 0 <= c < q for c in coeffs):
        raise ValueError(f"Coefficients {coeffs} are not elements of F_{q}")
    degree = len(coeffs) - 1
    if degree < 1 or coeffs not in irreducibles_by_degree(q, degree)[degree]:
        raise ValueError(f"Polynomial {format_polynomial(coeffs)} is not irreducible over F_{q}")
    return Place(q, FINITE, coeffs)


def enumerate_places(q, max_degree):
    """Infinity followed by all monic irreducibles of degree <= max_degree"""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    prime_power(q)
    places = [infinity(q)]
    irreducibles = irreducibles_by_degree(q, max_degree)
    for degree in range(1, max_degree + 1):
        places.extend(Place(q, FINITE, poly) for poly in irreducibles[degree])
    logger.debug(f"Enumerated {len(places)} places of F_{q}(t) up to degree {max_degree}")
    return places


def count_irreducibles(q, degree):
    return len(irreducibles_by_degree(q, degree)[degree])


_SPEC_PATTERN = re.compile(r"^\[?\s*(\d+(?:\s*[, ]\s*\d+)*)\s*\]?$")


def parse_place(q, text):
    """Parse 'inf', 't', 't+1' style shorthand or a coefficient list like [1,1]"""
    text = text.strip()
    if text.lower() in ("inf", "infinity", "oo"):
        return infinity(q)
    if text == "t":
        return finite_place(q, (0, 1))
    match = _SPEC_PATTERN.match(text)
    if not match:
        raise ValueError(f"Cannot parse place specifier '{text}'")
    coeffs = [int(c) for c in re.split(r"[,\s]+", match.group(1))]
    return finite_place(q, coeffs)


"""
Right-hand side of the limit formula: main term, h^(0), h^(1) and the Weil local terms
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from core.arithmetic import ZERO_UNITS, GradedScalar
from core.exceptions import EngineError, SupportError
from core.local_shell import ShellFunction, principal_value
from core.places import enumerate_places
from core.semilocal import representatives

logger = logging.getLogger(__name__)


def log_prime(place_set, Lambda):
    """log' Lambda: the volume of {1/Lambda <= |a| <= Lambda}, one log q per class"""
    Lambda = Fraction(Lambda)
    k = _exponent(place_set.q_0, Lambda)
    if k is None or k < 0:
        raise EngineError(f"Lambda = {Lambda} is not q_0^k with k >= 0")
    return GradedScalar(2 * k + 1, 1)


def log_prime_by_representatives(place_set, k):
    """The same volume as vol(O_S^x) / (q - 1) times #A(1/Lambda, Lambda)"""
    count = len(representatives(place_set, -k, k))
    return place_set.unit_group_volume() * Fraction(count, place_set.q - 1)


def _exponent(base, value):
    if value <= 0:
        return None
    k = 0
    while value > 1:
        value /= base
        k += 1
    return k if value == 1 else None


def h_hats(h):
    """(h^(0), h^(1)) = (integral of h d^x x, integral of h |x|^{-1} d^x x)"""
    return h.hat_zero(), h.hat_one()


def local_pullback(h, place):
    """The restriction of h to k_v^x as a function of the shell: j -> h(-f_v j)"""
    f = place.degree
    shells = [-e // f for e in h.support() if e % f == 0]
    if not shells:
        return ShellFunction(place, 0, (), 0)
    low, high = min(shells), max(shells)
    return ShellFunction(place, low, tuple(h(-f * j) for j in range(low, high + 1)), 0)


def weil_local_terms(h, place_set):
    """{v: principal value of h restricted to k_v^x} over v in S"""
    return {place: principal_value(local_pullback(h, place)) for place in place_set.places}


@dataclass
class RHSReport:
    term_main: GradedScalar
    term_h0: GradedScalar
    term_h1: GradedScalar
    weil_terms: dict = field(default_factory=dict)

    @property
    def weil_total(self):
        return sum(self.weil_terms.values(), ZERO_UNITS)

    @property
    def total(self):
        return self.term_main - self.term_h0 - self.term_h1 + self.weil_total

    def to_record(self):
        """Flat record of rationals; every entry carries one log q unit"""
        record = {"rhs_main": self.term_main.value, "rhs_h0": self.term_h0.value,
                  "rhs_h1": self.term_h1.value, "rhs_weil": self.weil_total.value,
                  "rhs_total": self.total.value}
        for place, term in self.weil_terms.items():
            record[f"weil[{place}]"] = term.value
        return record


def rhs_theorem31(Lambda, h, place_set):
    """2 h(1) log' Lambda - h^(0) - h^(1) + sum over v in S of the Weil terms"""
    try:
        main = log_prime(place_set, Lambda) * (2 * h.at_one())
        h0, h1 = h_hats(h)
        return RHSReport(main, h0, h1, weil_local_terms(h, place_set))
    except Exception as e:
        logger.error(f"Failed to assemble the right-hand side: {e}")
        raise


def check_outside_vanishing(h, place, r, place_set=None):
    """For v outside S with q_v > q^r the Weil term of h supported in |e| <= r vanishes.

    Returns (True, value) after checking the term is zero.
    """
    if place_set is not None and place in place_set.places:
        raise EngineError(f"Place {place} lies in S")
    if h.radius() > r:
        raise SupportError(f"h is not supported in classes |e| <= {r}")
    if place.degree <= r:
        raise EngineError(f"Need q_v > q^{r}, but {place} has degree {place.degree}")
    value = principal_value(local_pullback(h, place))
    return value.is_zero(), value


def support_radius_covered(h, place_set):
    """Whether S holds every place with q_v <= q^r for the support radius r of h"""
    r = h.radius()
    if r == 0:
        return True
    return all(place in place_set.places for place in enumerate_places(place_set.q, r))


def paired_quotient_trace(h):
    """tr (Q_{S,Lambda} - Q_{S,Lambda,0}) U(h) as the exact engine finds it.

    The quotient is spanned by the images of f_{1,Lambda} and f_{0,Lambda},
    and both carry the same eigenvalue: h^(0) for the part of h on classes
    e <= 0, h^(1) for the part on classes e > 0. The sum h^(0) + h^(1) in the
    limit formula agrees with this only for h carried by class 0.
    """
    q = Fraction(h.q)
    small = sum((v for e, v in h.values if e <= 0), Fraction(0))
    large = sum((q ** (-e) * v for e, v in h.values if e > 0), Fraction(0))
    return GradedScalar(2 * (small + large), 1)

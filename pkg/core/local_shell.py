"""
O_v^x-invariant Schwartz-Bruhat functions on a local field k_v
"""

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from core.arithmetic import GradedScalar, as_fraction
from core.exceptions import SupportError
from core.finite_field import field
from core.places import parse_place
from utils.helpers import format_rational, parse_rational

logger = logging.getLogger(__name__)

# Coset depth used by the refinement oracle for the principal value
REFINEMENT_DEPTH = 2


@dataclass(frozen=True)
class ShellFunction:
    """f(x) = values[v(x) - j_min] on shells, tail_value on pi^{j_min + len(values)} O_v.

    f vanishes for v(x) < j_min and equals tail_value at x = 0. Instances are
    kept in canonical form so that == is equality of functions.
    """

    place: object
    j_min: int
    values: tuple
    tail_value: Fraction

    def __post_init__(self):
        values = [as_fraction(v) for v in self.values]
        tail = as_fraction(self.tail_value)
        j_min = self.j_min
        while values and values[-1] == tail:
            values.pop()
        while values and values[0] == 0:
            values.pop(0)
            j_min += 1
        if not values and tail == 0:
            j_min = 0
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "tail_value", tail)
        object.__setattr__(self, "j_min", j_min)

    @property
    def j_tail(self):
        """First valuation of the constant ball"""
        return self.j_min + len(self.values)

    def __call__(self, j):
        """Value on the shell of valuation j; j=None means the point 0"""
        if j is None or j >= self.j_tail:
            return self.tail_value
        if j < self.j_min:
            return Fraction(0)
        return self.values[j - self.j_min]

    def is_zero(self):
        return not self.values and self.tail_value == 0

    def shell_range(self):
        return range(self.j_min, self.j_tail)

    def balls(self):
        """Coefficients c_m with f = sum_m c_m 1_{pi^m O_v}"""
        coefficients = {}
        previous = Fraction(0)
        for j in range(self.j_min, self.j_tail + 1):
            current = self(j)
            if current != previous:
                coefficients[j] = current - previous
            previous = current
        return coefficients

    def __add__(self, other):
        _same_place(self, other)
        low = min(self.j_min, other.j_min)
        high = max(self.j_tail, other.j_tail)
        values = [self(j) + other(j) for j in range(low, high)]
        return ShellFunction(self.place, low, tuple(values), self.tail_value + other.tail_value)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_fraction(c)
        return ShellFunction(self.place, self.j_min, tuple(c * v for v in self.values), c * self.tail_value)

    def __mul__(self, other):
        """Pointwise product"""
        _same_place(self, other)
        low = max(self.j_min, other.j_min)
        high = max(self.j_tail, other.j_tail, low)
        values = [self(j) * other(j) for j in range(low, high)]
        return ShellFunction(self.place, low, tuple(values), self.tail_value * other.tail_value)

    def to_text(self):
        entries = ", ".join(f"({j}, {format_rational(self(j))})" for j in self.shell_range())
        return f"{self.place.spec()}; {self.j_min}; [{entries}]; tail {format_rational(self.tail_value)}"

    def __str__(self):
        return self.to_text()


def _same_place(f, g):
    if f.place != g.place:
        raise ValueError(f"Functions live on different places: {f.place} and {g.place}")


def zero(place):
    return ShellFunction(place, 0, (), 0)


def ball(place, m, coefficient=1):
    """coefficient * 1_{pi^m O_v}"""
    return ShellFunction(place, m, (), coefficient)


def shell(place, j, coefficient=1):
    """coefficient * 1_{pi^j O_v^x}"""
    return ShellFunction(place, j, (coefficient,), 0)


def from_balls(place, coefficients):
    """Sum of c_m 1_{pi^m O_v} over the given {m: c_m}"""
    coefficients = {m: as_fraction(c) for m, c in coefficients.items() if c != 0}
    if not coefficients:
        return zero(place)
    low, high = min(coefficients), max(coefficients)
    values = []
    running = Fraction(0)
    for j in range(low, high):
        running += coefficients.get(j, 0)
        values.append(running)
    return ShellFunction(place, low, tuple(values), running + coefficients[high])


def from_text(q, text):
    """Inverse of ShellFunction.to_text"""
    parts = [part.strip() for part in text.split(";")]
    if len(parts) != 4 or not parts[3].startswith("tail"):
        raise ValueError(f"Malformed shell function '{text}'")
    place = parse_place(q, parts[0])
    j_min = int(parts[1])
    entries = re.findall(r"\(\s*(-?\d+)\s*,\s*([-\d/]+)\s*\)", parts[2])
    values = {int(j): parse_rational(v) for j, v in entries}
    top = max(values, default=j_min - 1) + 1
    tail = parse_rational(parts[3][len("tail"):])
    return ShellFunction(place, j_min, tuple(values.get(j, Fraction(0)) for j in range(j_min, top)), tail)


def modulus(place, j):
    """|x|_v = q_v^{-j} for v(x) = j"""
    return GradedScalar(place.modulus(j), 0)


def fourier_shell(f):
    """Fourier transform for the self-dual measure of the dt-character.

    1_{pi^m O_v} goes to q_v^{-m-n/2} 1_{pi^{-m-n} O_v}.
    """
    place = f.place
    n = place.order
    image = {}
    for m, c in f.balls().items():
        target = -m - n
        image[target] = image.get(target, 0) + c * Fraction(place.q_v) ** (-m - n // 2)
    return from_balls(place, image)


def additive_integral(f):
    """Integral of f against the self-dual additive measure"""
    place = f.place
    total = sum((c * place.modulus(m) * place.half_volume() for m, c in f.balls().items()), Fraction(0))
    return GradedScalar(total, 0)


def mult_volume(place, shells):
    """Weil-normalized multiplicative volume of a union of distinct shells, in log q units"""
    return GradedScalar(place.degree * len(set(shells)), 1)


def principal_value(h):
    """The normalized principal value of h(u)/|u-1| against d^x u, in log q units"""
    _require_compact_on_units(h)
    place = h.place
    total = Fraction(0)
    for j in h.shell_range():
        if j < 0:
            total += h(j) * Fraction(place.q_v) ** j
        elif j > 0:
            total += h(j)
    return GradedScalar(place.degree * total, 1)


def _require_compact_on_units(h):
    if h.tail_value != 0:
        raise SupportError(f"Function on {h.place} does not vanish near 0")


def _coset_valuations(place, j, depth):
    """v(u - 1) for a representative u of each coset of 1 + pi^depth O_v in pi^j O_v^x"""
    residue = field(place.q_v)
    low = min(j, 0)
    valuations = []
    for digits in itertools.product(range(place.q_v), repeat=depth):
        if digits[0] == 0:
            continue
        expansion = [0] * (j + depth - low)
        for i, digit in enumerate(digits):
            expansion[j - low + i] = digit
        if -low < len(expansion):
            expansion[-low] = residue.sub(expansion[-low], 1)
        first = next((i for i, digit in enumerate(expansion) if digit != 0), None)
        valuations.append(low + first if first is not None else j + depth)
    return valuations


def principal_value_by_refinement(h, depth=REFINEMENT_DEPTH, exact=True):
    """Principal value summed coset by coset over a finite refinement of each shell.

    The unit shell contributes h_0 times the normalized value 0 of 1_{O_v^x}.
    With exact=False the sum runs through numpy floats.
    """
    _require_compact_on_units(h)
    place = h.place
    total_exact = Fraction(0)
    total_float = 0.0
    for j in h.shell_range():
        if j == 0 or h(j) == 0:
            continue
        valuations = _coset_valuations(place, j, depth)
        volume = Fraction(place.degree, len(valuations))
        if exact:
            total_exact += h(j) * volume * sum(Fraction(place.q_v) ** v for v in valuations)
        else:
            weights = np.power(float(place.q_v), np.array(valuations, dtype=float))
            total_float += float(h(j)) * float(volume) * float(np.sum(weights))
    if exact:
        return GradedScalar(total_exact, 1)
    return total_float


def plancherel_pairing(f, g):
    """Integral of f * g; real valued since O_v^x-invariant functions are even"""
    return additive_integral(f * g)

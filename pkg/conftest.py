"""
Shared fixtures and hypothesis strategies
"""

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.local_shell import ShellFunction  # noqa: E402
from core.places import enumerate_places, finite_place, infinity  # noqa: E402
from core.semilocal import validate_place_set  # noqa: E402

SMALL_PLACES = enumerate_places(2, 2)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@st.composite
def shell_functions(draw, places=SMALL_PLACES, compact=False):
    """Random shell-constant functions at one of the given places"""
    place = draw(st.sampled_from(places))
    j_min = draw(st.integers(min_value=-4, max_value=3))
    values = draw(st.lists(rationals, max_size=5))
    tail = Fraction(0) if compact else draw(rationals)
    return ShellFunction(place, j_min, tuple(values), tail)


@pytest.fixture(scope="session")
def place_set():
    """S = {inf, t} over F_2"""
    return validate_place_set([infinity(2), finite_place(2, (0, 1))])


@pytest.fixture(scope="session")
def place_set_three():
    """S = {inf, t, t+1} over F_2"""
    return validate_place_set([infinity(2), finite_place(2, (0, 1)), finite_place(2, (1, 1))])

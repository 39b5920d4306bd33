"""
Data validation utilities
"""

import re

from config.settings import Settings
from core.finite_field import prime_power


def validate_q(q):
    """Validate the size of the constant field"""
    try:
        q = int(q)
    except (TypeError, ValueError):
        return False, "q must be an integer"

    if q > Settings.MAX_Q:
        return False, f"q too large (max {Settings.MAX_Q})"

    try:
        prime_power(q)
    except ValueError:
        return False, f"q = {q} is not a prime power"

    return True, ""


def validate_place_spec(spec):
    """Validate a place specifier: 'inf' or a coefficient list like [0,1]"""
    if not spec:
        return False, "Place specifier cannot be empty"

    if spec.strip().lower() in ("inf", "infinity", "t"):
        return True, ""

    if not re.match(r'^\[\s*\d+(\s*,\s*\d+)*\s*\]$', spec.strip()):
        return False, f"Place specifier '{spec}' must be 'inf' or a list of coefficients, low degree first"

    return True, ""


def validate_k_range(k_min, k_max):
    """Validate the range of Lambda exponents"""
    if k_min < 0:
        return False, "k_min must be at least 0"

    if k_max < k_min:
        return False, "k_max must be at least k_min"

    if k_max > Settings.MAX_K:
        return False, f"k_max too large (max {Settings.MAX_K})"

    return True, ""


def validate_h(h_values):
    """Validate a kernel h given as {class: value}"""
    if not h_values:
        return False, "h must have at least one nonzero value"

    if any(not isinstance(e, int) for e in h_values):
        return False, "h classes must be integers"

    if all(value == 0 for value in h_values.values()):
        return False, "h must have at least one nonzero value"

    return True, ""


def validate_choice(value, choices, name):
    """Validate a value against a fixed set of options"""
    if value not in choices:
        return False, f"{name} must be one of {', '.join(choices)}"

    return True, ""


def validate_precision(precision):
    """Validate the float-mode display precision"""
    if not 1 <= precision <= 17:
        return False, "precision must be between 1 and 17"

    return True, ""

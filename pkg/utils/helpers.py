"""
Utility helper functions
"""

import json
import os
import hashlib
from fractions import Fraction


def format_rational(value):
    """Format a rational as 'num/den' (or 'num' for integers)"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text):
    """Parse 'num/den', an integer or a decimal into a Fraction"""
    text = str(text).strip()
    if not text:
        raise ValueError("Empty rational")
    return Fraction(text)


def format_scalar(scalar):
    """Format a GradedScalar value, dropping the unit"""
    return format_rational(scalar.value)


def calculate_hash(data):
    """Calculate hash of data"""
    if isinstance(data, dict):
        data = json.dumps(data, sort_keys=True, default=str)
    elif not isinstance(data, str):
        data = str(data)

    return hashlib.md5(data.encode()).hexdigest()


def ensure_directory(directory):
    """Ensure directory exists"""
    if directory and not os.path.exists(directory):
        os.makedirs(directory)


def format_duration(seconds):
    """Get duration in human readable format"""
    for unit, size in (('h', 3600.0), ('min', 60.0)):
        if seconds >= size:
            return f"{seconds / size:.2f} {unit}"

    return f"{seconds:.3f} s"

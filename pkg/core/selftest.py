"""
Oracle suites run by the selftest command
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from config.settings import Settings
from core.class_vector import HFunction
from core.local_shell import (ShellFunction, additive_integral, ball, fourier_shell,
                              principal_value, principal_value_by_refinement, shell)
from core.places import enumerate_places, infinity, finite_place
from core.semilocal import (SemiLocalFunction, orbit_sum_E, orbit_sum_explicit,
                            periodize_Ebar, validate_place_set)
from core.trace_engine import (SubspaceBasis, apply_T, apply_T_prime, build_tilde_Q,
                               project_trace, small_class_eigenvalue, small_class_eigenvalue_expected)
from core.weil_rhs import paired_quotient_trace

logger = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str = ""


def random_shell_function(rng, place, compact=False):
    j_min = rng.randint(-3, 2)
    values = tuple(Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))) for _ in range(rng.randint(0, 4)))
    tail = 0 if compact else Fraction(rng.randint(-2, 2))
    return ShellFunction(place, j_min, values, tail)


def suite_fourier_involution(fourier=fourier_shell, samples=50, seed=1):
    rng = random.Random(seed)
    for place in enumerate_places(2, 2):
        for _ in range(samples):
            f = random_shell_function(rng, place)
            if fourier(fourier(f)) != f:
                return False, f"double transform differs at {place}: {f}"
            if fourier(f)(None) != additive_integral(f).value:
                return False, f"f^(0) differs from the integral at {place}: {f}"
    return True, f"{samples} functions per place"


def suite_principal_value(samples=50, seed=2):
    rng = random.Random(seed)
    for place in enumerate_places(2, 2):
        for _ in range(samples):
            h = random_shell_function(rng, place, compact=True)
            closed = principal_value(h)
            if principal_value_by_refinement(h) != closed:
                return False, f"exact refinement differs at {place}: {h}"
            numeric = principal_value_by_refinement(h, exact=False)
            if abs(numeric - float(closed.value)) > Settings.FLOAT_TOLERANCE:
                return False, f"float refinement differs at {place}: {h}"
    return True, f"{samples} kernels per place"


def _small_functions(place_set):
    inf, t = place_set.places
    return [
        SemiLocalFunction.pure(place_set, (ball(inf, 0), ball(t, 0))),
        SemiLocalFunction.pure(place_set, (ball(inf, 1), shell(t, -1))),
        SemiLocalFunction.pure(place_set, (shell(inf, 0), ball(t, 1)), 3),
    ]


def suite_orbit_sums():
    place_set = validate_place_set([infinity(2), finite_place(2, (0, 1))])
    for f in _small_functions(place_set):
        for d in range(-2, 3):
            if orbit_sum_E(f, d) != orbit_sum_explicit(f, d, box=6):
                return False, f"orbit sum differs at class {d}"
    return True, "E_S against explicit S-unit enumeration"


def suite_spaces(k=1):
    """Duality, Moebius round trip, the eigenvalue check and basis independence on one Lambda"""
    place_set = validate_place_set([infinity(2), finite_place(2, (0, 1))])
    spaces = build_tilde_Q(place_set, k)
    results = []
    ok = True
    for f in spaces.zero.sources():
        left = periodize_Ebar(f)
        right = periodize_Ebar(f.fourier())
        if any(left(d) != Fraction(2) ** (-d) * right(-d) for d in range(-k - 1, k + 2)):
            ok = False
    results.append(SuiteResult("duality", ok))

    ok = True
    for vector in spaces.zero.vectors:
        if apply_T_prime(apply_T(vector, place_set, -k), place_set) != vector:
            ok = False
    monoid = place_set.monoid()
    ok = ok and all(monoid.mobius(a) == monoid.mobius_sum_direct(a) for a in range(4))
    results.append(SuiteResult("mobius_round_trip", ok))

    ok = all(small_class_eigenvalue(spaces, e) == small_class_eigenvalue_expected(place_set, k, e)
             for e in (0, -1))
    results.append(SuiteResult("small_class_eigenvalue", ok))

    h = HFunction.from_dict(2, {-1: 1, 1: 1})
    basis = spaces.basis("full")
    extended = SubspaceBasis(basis.vectors + [basis.vectors[0] + basis.vectors[-1]])
    ok = project_trace(basis, h) == project_trace(extended, h)
    results.append(SuiteResult("basis_independence", ok))

    quotient = project_trace(basis, h) - project_trace(spaces.basis("zero"), h)
    results.append(SuiteResult("quotient_pairing", quotient == paired_quotient_trace(h), f"{quotient}"))

    exact = project_trace(basis, h).to_float(2)
    numeric = project_trace(basis, h, mode="float")
    results.append(SuiteResult("float_vs_exact", abs(exact - numeric) < Settings.FLOAT_TOLERANCE,
                               f"{exact} vs {numeric}"))
    return results


def run_selftest(fourier=fourier_shell):
    """Run every suite; a suite that raises counts as failed"""
    results = []
    for name, suite in (("fourier_involution", lambda: suite_fourier_involution(fourier)),
                        ("principal_value", suite_principal_value),
                        ("orbit_sums", suite_orbit_sums)):
        try:
            passed, detail = suite()
        except Exception as e:
            logger.error(f"Suite {name} raised: {e}")
            passed, detail = False, str(e)
        results.append(SuiteResult(name, passed, detail))
    try:
        results.extend(suite_spaces())
    except Exception as e:
        logger.error(f"Space suites raised: {e}")
        results.append(SuiteResult("spaces", False, str(e)))
    for result in results:
        logger.info(f"{result.name}: {'pass' if result.passed else 'FAIL'} {result.detail}")
    return results

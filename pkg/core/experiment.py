"""
Experiment harness: one report row per Lambda = q^k
"""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import repeat

import numpy as np

from config.settings import Settings
from core.class_vector import HFunction
from core.places import parse_place
from core.semilocal import validate_place_set
from core.trace_engine import build_tilde_Q, traces_for
from core.weil_rhs import paired_quotient_trace, rhs_theorem31, support_radius_covered
from utils.helpers import calculate_hash, format_rational

logger = logging.getLogger(__name__)


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce a table"""

    q: int = Settings.DEFAULT_Q
    places: tuple = Settings.DEFAULT_PLACES
    h: dict = field(default_factory=lambda: {0: Fraction(1)})
    k_min: int = Settings.DEFAULT_K_MIN
    k_max: int = Settings.DEFAULT_K_MAX
    depth: int = None
    format: str = Settings.DEFAULT_FORMAT
    mode: str = "exact"
    precision: int = Settings.DEFAULT_PRECISION

    def place_set(self):
        return validate_place_set([parse_place(self.q, spec) for spec in self.places])

    def hfunction(self):
        return HFunction.from_dict(self.q, self.h)


@dataclass
class TraceReport:
    """Traces, right-hand side and gaps for one Lambda"""

    q: int
    k: int
    Lambda: int
    dims: dict
    trQ0: object
    trQbar0: object
    trQfull: object
    rhs: object
    seconds: float = 0.0
    paired: object = None

    def _value(self, scalar, mode):
        if mode == "float":
            return scalar if isinstance(scalar, float) else scalar.to_float(self.q)
        return scalar.value

    def values(self, mode="exact"):
        rhs = self.rhs
        trQ0 = self._value(self.trQ0, mode)
        trQbar0 = self._value(self.trQbar0, mode)
        trQfull = self._value(self.trQfull, mode)
        main = self._value(rhs.term_main, mode)
        h0 = self._value(rhs.term_h0, mode)
        h1 = self._value(rhs.term_h1, mode)
        weil = self._value(rhs.weil_total, mode)
        total = main - h0 - h1 + weil
        return {
            "k": self.k,
            "Lambda": self.Lambda,
            "dimQ0": self.dims["dimQ0"],
            "dimQbar0": self.dims["dimQbar0"],
            "trQ0": trQ0,
            "trQbar0": trQbar0,
            "trQfull": trQfull,
            "rhs_main": main,
            "rhs_h0": h0,
            "rhs_h1": h1,
            "rhs_weil": weil,
            "gap_identity": trQ0 - trQbar0,
            "gap_thm31": trQ0 - total,
            "gap_lemma35": (trQfull - trQ0) - (h0 + h1),
        }

    def quotient_mismatch(self, mode="exact"):
        """(tr Q - tr Q_0) minus the paired eigenvalue value; None when not recorded"""
        if self.paired is None:
            return None
        return (self._value(self.trQfull, mode) - self._value(self.trQ0, mode)) - self._value(self.paired, mode)

    def to_row(self, mode="exact", precision=Settings.DEFAULT_PRECISION):
        """Row of the report table; exact values as 'num/den'"""
        row = self.values(mode)
        for column in Settings.CSV_COLUMNS[2:]:
            if column.startswith("dim"):
                continue
            if mode == "float":
                row[column] = round(float(row[column]), precision)
            else:
                row[column] = format_rational(row[column])
        return row


def compute_row(config, place_set, h, k):
    """Build the spaces for Lambda = q^k and assemble one report"""
    started = time.perf_counter()
    try:
        spaces = build_tilde_Q(place_set, k, config.depth)
        trQ0, trQbar0, trQfull = traces_for(spaces, h, config.mode)
        Lambda = place_set.q_0 ** k
        rhs = rhs_theorem31(Lambda, h, place_set)
    except Exception as e:
        logger.error(f"Failed to compute row k={k}: {e}")
        raise
    seconds = time.perf_counter() - started
    logger.info(f"k={k} done in {seconds:.2f} s")
    return TraceReport(place_set.q, k, Lambda, spaces.dimensions(), trQ0, trQbar0, trQfull, rhs, seconds,
                       paired_quotient_trace(h))


def run_experiment(config, jobs=Settings.DEFAULT_JOBS):
    """Report rows for k = k_min..k_max, ordered by k whatever the completion order"""
    place_set = config.place_set()
    h = config.hfunction()
    if not support_radius_covered(h, place_set):
        logger.warning(f"h has support radius {h.radius()} but S lacks places of degree <= {h.radius()}; "
                       "the identity gap need not vanish")
    ks = list(range(config.k_min, config.k_max + 1))
    logger.info(f"Running config {calculate_hash(asdict(config))[:8]}: q={config.q} S={place_set} h={h} "
                f"for k in {ks[0]}..{ks[-1]}")
    if jobs <= 1:
        return [compute_row(config, place_set, h, k) for k in ks]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(compute_row, repeat(config), repeat(place_set), repeat(h), ks))


def decay_rate(reports, column, mode="exact"):
    """Slope of log|gap| against k (information only); None without two nonzero gaps"""
    points = []
    for report in reports:
        value = report.values(mode)[column]
        if value != 0:
            points.append((report.k, math.log(abs(float(value)))))
    if len(points) < 2:
        return None
    ks, logs = np.array(points).T
    slope, _ = np.polyfit(ks, logs, 1)
    return float(slope)

"""
Sample kernels h and stock experiment configurations
"""

from fractions import Fraction

from core.class_vector import HFunction
from core.experiment import ExperimentConfig

# Named test kernels as {class e: h(e)}; classes are log_q |x|
SAMPLE_KERNELS = {
    "delta0": {0: Fraction(1)},
    "delta_pm1": {-1: Fraction(1), 1: Fraction(1)},
    "small_class": {-1: Fraction(1)},
    "ramp": {-1: Fraction(1), 0: Fraction(2), 1: Fraction(3)},
    "asym": {-2: Fraction(1, 2), 1: Fraction(-1)},
}

DEFAULT_CONFIG = """\
# Trace identity sweep over Lambda = q^k
q = 2
places = inf, [0,1]
k_min = 0
k_max = 6
depth = auto
format = csv
mode = exact
precision = 12
h[0] = 1
"""


class SampleDataLoader:
    """Build kernels and configurations for a given field size"""

    def __init__(self, q=2):
        self.q = q

    def kernel(self, name):
        """HFunction for a named kernel; 'small_class' is scaled to (q-1) delta_{-1}"""
        if name not in SAMPLE_KERNELS:
            raise KeyError(f"Unknown kernel '{name}'; choose from {', '.join(SAMPLE_KERNELS)}")
        values = dict(SAMPLE_KERNELS[name])
        if name == "small_class":
            values = {e: value * (self.q - 1) for e, value in values.items()}
        return HFunction.from_dict(self.q, values)

    def load_all(self):
        """All sample kernels by name"""
        return {name: self.kernel(name) for name in SAMPLE_KERNELS}

    def config(self, name="delta0", places=("inf", "[0,1]"), k_max=4):
        """A stock configuration running one named kernel"""
        return ExperimentConfig(q=self.q, places=tuple(places), h=dict(self.kernel(name).values),
                                k_min=0, k_max=k_max)

"""
Finite-dimensional C-invariant spaces Q_{S,Lambda}, their Gram data and traces of P U(h)
"""

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from config.settings import Settings
from core.arithmetic import GradedScalar, as_fraction
from core.class_vector import ClassVector, HFunction, inner_product, upward_convolution
from core.exceptions import SaturationError
from core.local_shell import additive_integral, ball
from core.semilocal import (SemiLocalFunction, f_one, lattice_points, periodize_E_direct,
                            periodize_Ebar)

logger = logging.getLogger(__name__)


def to_domain_matrix(rows, shape=None):
    """Exact QQ matrix from nested lists of rationals"""
    rows = [[QQ(as_fraction(x).numerator, as_fraction(x).denominator) for x in row] for row in rows]
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    return DomainMatrix(rows, shape, QQ)


def from_domain_matrix(matrix):
    """Nested lists of Fractions"""
    return [[as_fraction(x) for x in row] for row in matrix.to_Matrix().tolist()]


def pseudo_inverse(gram):
    """Moore-Penrose inverse through the full-rank factorization G = C R.

    C holds the pivot columns of G and R the nonzero rows of rref(G), so
    G^+ = R^T (R R^T)^{-1} (C^T C)^{-1} C^T.
    """
    n = gram.shape[0]
    reduced, pivots = gram.rref()
    r = len(pivots)
    if r == 0:
        return DomainMatrix.zeros((n, n), QQ)
    C = gram.extract(list(range(n)), list(pivots))
    R = reduced.extract(list(range(r)), list(range(n)))
    Rt, Ct = R.transpose(), C.transpose()
    return Rt * (R * Rt).inv() * (Ct * C).inv() * Ct


@dataclass
class SubspaceBasis:
    """Generating vectors of a subspace together with exact Gram data"""

    vectors: list
    gram: object = field(init=False)
    rank: int = field(init=False)
    gram_pinv: object = field(init=False)

    def __post_init__(self):
        n = len(self.vectors)
        rows = [[self.vectors[i].inner(self.vectors[j]) for j in range(n)] for i in range(n)]
        self.gram = to_domain_matrix(rows, (n, n))
        self.rank = self.gram.rank() if n else 0
        self.gram_pinv = pseudo_inverse(self.gram) if n else None

    def __len__(self):
        return len(self.vectors)

    def coordinates(self, vector):
        """Coefficients c with P_V vector = sum_i c_i b_i (minimal norm for dependent generators)"""
        if not self.vectors:
            return []
        pairing = to_domain_matrix([[b.inner(vector)] for b in self.vectors], (len(self.vectors), 1))
        return [row[0] for row in from_domain_matrix(self.gram_pinv * pairing)]

    def project(self, vector):
        result = ClassVector.zero(vector.q, vector.period)
        for c, b in zip(self.coordinates(vector), self.vectors):
            result = result + b.scale(c)
        return result


def operator_U(h):
    """U(h) in the weighted model: v -> sum_e h(e) v(. + e), one log q unit"""

    def apply(vector):
        return h.apply(vector)

    apply.degree = 1
    return apply


def operator_matrix(basis, h):
    """A_ij = <b_i, U(h) b_j> as rationals (unit degree 2)"""
    U = operator_U(h)
    images = [U(b) for b in basis.vectors]
    return [[b.inner(image) for image in images] for b in basis.vectors]


def project_trace(basis, h, mode="exact"):
    """tr(P_V U(h)) = tr(G^+ A)"""
    if not basis.vectors:
        return GradedScalar(0, 1) if mode == "exact" else 0.0
    A = operator_matrix(basis, h)
    n = len(basis.vectors)
    if mode == "float":
        G = np.array([[float(x) for x in row] for row in from_domain_matrix(basis.gram)])
        M = np.array([[float(x) for x in row] for row in A])
        return float(np.trace(np.linalg.pinv(G) @ M)) * math.log(h.q)
    pinv = from_domain_matrix(basis.gram_pinv)
    total = sum((pinv[i][j] * A[j][i] for i in range(n) for j in range(n)), Fraction(0))
    return GradedScalar(total, 1)


def apply_T(vector, place_set, floor):
    """T: E_S(f) -> Ebar_S(f), convolution with the counts N_a of R"""
    monoid = place_set.monoid()
    return upward_convolution(vector, monoid.count, place_set.tail_degree, floor=floor)


def apply_T_prime(vector, place_set):
    """T': Ebar_S(f) -> E_S(f), convolution with the Moebius sums M_a = sum mu(r)"""
    monoid = place_set.monoid()
    return upward_convolution(vector, monoid.mobius, place_set.tail_degree)


def fourier_bar(vector):
    """Fbar v(d) = q^{-d} v(-d); sends Ebar_S(f) to Ebar_S(f^)"""
    return vector.reflect()


def _ball_floors(place_set, depth):
    """One valuation vector m in [-depth, depth + 1]^S for each reachable value of sum_v f_v m_v"""
    floors = {}
    for m in itertools.product(range(-depth, depth + 2), repeat=len(place_set.places)):
        floors.setdefault(sum(f * j for f, j in zip(place_set.degrees, m)), m)
    return floors


@dataclass
class CellSystem:
    """Ball tensors 1_{prod pi^{m_v} O_v} admissible for Q~_{S,Lambda} at one depth.

    E_S of a ball tensor depends on m only through s = sum_v f_v m_v, so one
    tensor is kept per admissible s. Its support reaches class -s and the
    support of its transform reaches class s + sum_v f_v n(v); both must stay
    at most k.
    """

    place_set: object
    k: int
    depth: int
    cells: list
    window_start: int
    window_stop: int
    cutoff: int
    window: list
    value_at_zero_row: list
    fourier_at_zero_row: list

    def cell_function(self, cell):
        return SemiLocalFunction.pure(self.place_set, [ball(place, m) for place, m in zip(self.place_set.places, cell)])

    def function(self, coefficients):
        """sum_cells x_cell 1_cell as a SemiLocalFunction"""
        terms = []
        for x, cell in zip(coefficients, self.cells):
            if x != 0:
                terms.append((x, self.cell_function(cell).terms[0][1]))
        return SemiLocalFunction(self.place_set, tuple(terms))


def cell_E_value(place_set, cell, d):
    """E_S(1_cell)(d): (q-1) times the lattice points of class d inside the ball tensor"""
    offset = sum(f * m for f, m in zip(place_set.degrees, cell))
    return (place_set.q - 1) * lattice_points(tuple(sorted(place_set.degrees)), -d - offset)


def build_cell_system(place_set, k, depth):
    """Admissible ball tensors, their E-images on a window of classes and the values of l, l^"""
    if depth < k + max(-place.order for place in place_set.places) + 1:
        raise ValueError(f"Depth {depth} too small for Lambda = q^{k}")
    places = place_set.places
    dual_shift = sum(place.degree * place.order for place in places)
    floors = _ball_floors(place_set, depth)
    cells = [floors[s] for s in sorted(floors) if -s <= k and s + dual_shift <= k]

    L, g = place_set.period, place_set.tail_degree
    cutoff = -depth * sum(place_set.degrees)
    start = cutoff - L * (g + 1)
    stop = k + 1
    window = [[cell_E_value(place_set, cell, d) for d in range(start, stop)] for cell in cells]

    value_row = [Fraction(1) for _ in cells]
    fourier_row = []
    for cell in cells:
        value = Fraction(1)
        for place, m in zip(places, cell):
            value *= additive_integral(ball(place, m)).value
        fourier_row.append(value)

    logger.debug(f"k={k} depth={depth}: {len(cells)} admissible ball tensors")
    return CellSystem(place_set, k, depth, cells, start, stop, cutoff, window, value_row, fourier_row)


@dataclass
class SolvedSpace:
    """Independent solutions of a cell system with their E-images"""

    system: CellSystem
    coefficients: list
    vectors: list

    @property
    def dimension(self):
        return len(self.vectors)

    def sources(self):
        return [self.system.function(x) for x in self.coefficients]

    def functional_l(self):
        row = self.system.value_at_zero_row
        return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for x in self.coefficients]

    def functional_lhat(self):
        row = self.system.fourier_at_zero_row
        return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for x in self.coefficients]


def solve_space(system, schwartz_zero):
    """Combinations of the cells whose E-images are independent; with schwartz_zero, those killed by l and l^"""
    rows = [system.value_at_zero_row, system.fourier_at_zero_row] if schwartz_zero else []
    n = len(system.cells)
    if rows:
        null = from_domain_matrix(to_domain_matrix(rows, (len(rows), n)).nullspace())
    else:
        null = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if not null:
        return SolvedSpace(system, [], [])
    images = from_domain_matrix(to_domain_matrix(null) * to_domain_matrix(system.window))
    _, pivots = to_domain_matrix(images).transpose().rref()
    place_set = system.place_set
    vectors = [ClassVector.from_window(place_set.q, place_set.period, place_set.tail_degree,
                                       system.window_start, images[i], system.cutoff) for i in pivots]
    return SolvedSpace(system, [null[i] for i in pivots], vectors)


@dataclass
class QSpaces:
    """Q_{S,Lambda}, Q_{S,Lambda,0} and Qbar_{S,Lambda,0} restricted to O_S^x-invariants"""

    place_set: object
    k: int
    depth: int
    full: SolvedSpace
    zero: SolvedSpace
    history: list = field(default_factory=list)
    _bases: dict = field(default_factory=dict, repr=False)

    def basis(self, name):
        """'full', 'zero', 'zero_bar' (via T) or 'zero_bar_direct' (orbit sums of the sources)"""
        if name not in self._bases:
            if name == "full":
                basis = SubspaceBasis(self.full.vectors)
            elif name == "zero":
                basis = SubspaceBasis(self.zero.vectors)
            elif name == "zero_bar":
                basis = SubspaceBasis([apply_T(v, self.place_set, -self.k) for v in self.zero.vectors])
            elif name == "zero_bar_direct":
                basis = SubspaceBasis([periodize_Ebar(f) for f in self.zero.sources()])
            else:
                raise ValueError(f"Unknown space '{name}'")
            self._bases[name] = basis
        return self._bases[name]

    def dimensions(self):
        return {"k": self.k, "depth": self.depth, "dimQ": self.full.dimension,
                "dimQ0": self.zero.dimension, "dimQbar0": self.basis("zero_bar").rank}


def build_at_depth(place_set, k, depth):
    system = build_cell_system(place_set, k, depth)
    return QSpaces(place_set, k, depth, solve_space(system, False), solve_space(system, True))


def build_tilde_Q(place_set, k, depth=None):
    """Bases of Q_{S,Lambda} and Q_{S,Lambda,0} for Lambda = q^k, saturated in depth"""
    if depth is not None:
        spaces = build_at_depth(place_set, k, depth)
        spaces.history = [(depth, spaces.full.dimension, spaces.zero.dimension)]
        return spaces

    depth = k + Settings.DEPTH_MARGIN
    history = []
    for _ in range(Settings.MAX_DEPTH_STEPS):
        started = time.perf_counter()
        spaces = build_at_depth(place_set, k, depth)
        history.append((depth, spaces.full.dimension, spaces.zero.dimension))
        logger.debug(f"k={k} depth={depth}: dim Q={history[-1][1]} dim Q0={history[-1][2]} "
                     f"({time.perf_counter() - started:.2f} s)")
        recent = history[-(Settings.SATURATION_RUNS + 1):]
        if len(recent) == Settings.SATURATION_RUNS + 1 and len({entry[1:] for entry in recent}) == 1:
            spaces.history = history
            logger.info(f"k={k}: dimensions saturated at depth {depth} (dim Q={history[-1][1]}, dim Q0={history[-1][2]})")
            return spaces
        depth += 1
    logger.error(f"k={k}: dimensions did not stabilise: {history}")
    raise SaturationError(f"Dimensions for Lambda = q^{k} did not stabilise by depth {depth - 1}")


def traces_for(spaces, h, mode="exact"):
    """(tr Q_{S,Lambda,0} U(h), tr Qbar_{S,Lambda,0} U(h), tr Q_{S,Lambda} U(h))"""
    return (project_trace(spaces.basis("zero"), h, mode),
            project_trace(spaces.basis("zero_bar"), h, mode),
            project_trace(spaces.basis("full"), h, mode))


def _E_f_one(place_set, k, low=None):
    return periodize_E_direct(f_one(place_set, k, low))


def lhat_of_projection(spaces, vector):
    """l^(Q_{S,Lambda} v) from the coordinates of the projection"""
    basis = spaces.basis("full")
    lhat = spaces.full.functional_lhat()
    return sum((c * value for c, value in zip(basis.coordinates(vector), lhat)), Fraction(0))


def small_class_eigenvalue(spaces, e):
    """Coefficient of E(f_{1,Lambda}) in Q_{S,Lambda} U(h) E(f_{1,Lambda}) mod Q_{S,Lambda,0}, h = (q-1) delta_e"""
    place_set = spaces.place_set
    f1 = f_one(place_set, spaces.k)
    h = HFunction.delta(place_set.q, e, place_set.q - 1)
    image = operator_U(h)(periodize_E_direct(f1))
    return GradedScalar(lhat_of_projection(spaces, image) / f1.fourier_at_zero(), 1)


def small_class_eigenvalue_expected(place_set, k, e):
    """vol(O_S^x) |b|^{-1} (c_S - Lambda^2 q_0 |b|) / (c_S - Lambda^2 q_0) with |b| = q^e"""
    q0 = Fraction(place_set.q_0)
    b = q0 ** e
    Lambda = q0 ** k
    c_S = place_set.c_S
    return place_set.unit_group_volume() * ((c_S - Lambda ** 2 * q0 * b) / (b * (c_S - Lambda ** 2 * q0)))


def large_class_eigenvalue(spaces, e):
    """Same coefficient for h = (q-1) delta_e with e >= 0, on f^1 built over A(c_S |b| / Lambda, Lambda)"""
    place_set = spaces.place_set
    f1 = f_one(place_set, spaces.k, low=place_set.k_0 - spaces.k + e)
    h = HFunction.delta(place_set.q, e, place_set.q - 1)
    image = operator_U(h)(periodize_E_direct(f1))
    return GradedScalar(lhat_of_projection(spaces, image) / f1.fourier_at_zero(), 1)


@dataclass
class EigenvectorSplit:
    k: int
    e_one: ClassVector
    q_one: ClassVector
    ratio: Fraction
    orthogonal: bool


def eigenvector_split(spaces):
    """E(f_{1,Lambda}) = e_{1,Lambda} + q_{1,Lambda} with q_{1,Lambda} in Q_{S,Lambda,0}"""
    vector = _E_f_one(spaces.place_set, spaces.k)
    basis = spaces.basis("zero")
    q_one = basis.project(vector)
    e_one = vector - q_one
    orthogonal = all(e_one.inner(b) == 0 for b in basis.vectors)
    norm = vector.norm_squared()
    ratio = q_one.norm_squared() / norm if norm else Fraction(0)
    return EigenvectorSplit(spaces.k, e_one, q_one, ratio, orthogonal)


def dimension_table(place_set, k_values, depth=None):
    """Saturated dimensions per k"""
    rows = []
    for k in k_values:
        spaces = build_tilde_Q(place_set, k, depth)
        row = spaces.dimensions()
        row["history"] = spaces.history
        rows.append(row)
    return rows

"""Membership tests and boundary curves for the feasible region of
normalized count coordinates (x_1, ..., x_n): the hypercube [-1, 1]^n,
positive semidefiniteness of the unit-diagonal symmetric Toeplitz Gram
matrix with first row (1, x_1, ..., x_n) checked through all principal
minors, and the arithmetic half-spaces encoding that counts over extension
fields can only grow.

Everything is exact: entries are rationals or elements of Q(sqrt(q)),
determinants come from fraction-free elimination, and boundary membership
(a zero minor, a zero half-space slack) counts as inside, matching the
non-strict inequalities that define the region.

The order is capped at n = 6 because the minor count is 2^(n+1) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

from .errors import GenusZero, NegativeRadicand, OrderTooLarge, OutOfCube
from .exactnum import Expr, SurdValue

MAX_ORDER = 6

Exact = Union[Fraction, SurdValue]
ExactLike = Union[int, Fraction, SurdValue]


def _sign(v: Exact) -> int:
    if isinstance(v, SurdValue):
        return v.sign()
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class GramSpec:
    """The (n+1) x (n+1) symmetric Toeplitz Gram matrix with unit diagonal
    and first row (1, x_1, ..., x_n), given by the tuple x."""

    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))

    @property
    def n(self) -> int:
        return len(self.x)

    def entry(self, i: int, j: int) -> ExactLike:
        d = abs(i - j)
        return Fraction(1) if d == 0 else self.x[d - 1]

    def submatrix(self, indices: Sequence[int]) -> list[list[ExactLike]]:
        """Rows/columns selected by 1-based indices."""
        return [[self.entry(i, j) for j in indices] for i in indices]


def exact_det(matrix: list[list[ExactLike]]) -> Exact:
    """Determinant by fraction-free (Bareiss) elimination: every division is
    by a previous pivot and is exact over Q or Q(sqrt(q))."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [[_promote(v) for v in row] for row in matrix]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if _sign(m[k][k]) == 0:
            pivot_row = next(
                (r for r in range(k + 1, n) if _sign(m[r][k]) != 0), None
            )
            if pivot_row is None:
                return Fraction(0)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def _promote(v: ExactLike) -> Exact:
    if isinstance(v, int):
        return Fraction(v)
    return v


def principal_minor(spec: GramSpec, indices: Sequence[int]) -> Exact:
    """Exact principal minor for a nonempty subset of {1, ..., n+1}."""
    idx = sorted(set(indices))
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 1 or idx[-1] > spec.n + 1:
        raise ValueError(f"indices out of range 1..{spec.n + 1}: {indices}")
    return exact_det(spec.submatrix(idx))


@dataclass(frozen=True)
class RegionVerdict:
    """Outcome of a region membership test, with stable identifiers for every
    violated constraint ("cube.x1.hi", "minor{1,3,4}", "h2", ...)."""

    in_cube: bool
    in_psd: bool
    in_arith: bool
    failing_constraints: tuple[str, ...]

    @property
    def member(self) -> bool:
        return self.in_cube and self.in_psd and self.in_arith


def in_region(q: int, g: int, x: Sequence[ExactLike]) -> RegionVerdict:
    """Exact membership of (x_1, ..., x_n) in the feasible region for (q, g):
    hypercube, all 2^(n+1) - 1 principal minors nonnegative, and the
    half-space slacks h_i <= 0 for 2 <= i <= n (the line i = 1 carries no
    arithmetic constraint).  Boundary points are members."""
    if g < 1:
        raise GenusZero("region membership needs genus >= 1")
    n = len(x)
    if n < 1:
        raise ValueError("need at least one coordinate")
    if n > MAX_ORDER:
        raise OrderTooLarge(f"order {n} > {MAX_ORDER} (minor count explodes)")
    xs = [_coerce_surd(q, v) for v in x]
    failing: list[str] = []

    in_cube = True
    for i, xi in enumerate(xs, start=1):
        if xi.sign() > 0 and (xi - 1).sign() > 0:
            failing.append(f"cube.x{i}.hi")
            in_cube = False
        elif (xi + 1).sign() < 0:
            failing.append(f"cube.x{i}.lo")
            in_cube = False

    spec = GramSpec(tuple(xs))
    in_psd = True
    for size in range(1, n + 2):
        for idx in combinations(range(1, n + 2), size):
            if _sign(principal_minor(spec, idx)) < 0:
                failing.append("minor{" + ",".join(map(str, idx)) + "}")
                in_psd = False

    in_arith = True
    root_q = SurdValue(q, Fraction(0), Fraction(1))
    for i in range(2, n + 1):
        power = _root_power(q, i - 1)
        slack = xs[i - 1] - xs[0] / power - (root_q / (2 * g)) * (power - 1 / power)
        if slack.sign() > 0:
            failing.append(f"h{i}")
            in_arith = False

    return RegionVerdict(in_cube, in_psd, in_arith, tuple(failing))


def _coerce_surd(q: int, v: ExactLike) -> SurdValue:
    if isinstance(v, SurdValue):
        return SurdValue(q, v.a, v.b) if v.b == 0 else v
    return SurdValue(q, _promote(v), Fraction(0))


def _root_power(q: int, k: int) -> SurdValue:
    """sqrt(q)^k inside Q(sqrt(q))."""
    if k % 2 == 0:
        return SurdValue(q, Fraction(q ** (k // 2)), Fraction(0))
    return SurdValue(q, Fraction(0), Fraction(q ** ((k - 1) // 2)))


def x2_lower_parabola(x1: ExactLike) -> Exact:
    """Least feasible x_2 for a given x_1 at order 2: the parabola
    2*x_1^2 - 1."""
    v = _promote(x1)
    if isinstance(v, SurdValue):
        if v.sign() > 0 and (v - 1).sign() > 0 or (v + 1).sign() < 0:
            raise OutOfCube(f"x1 = {v!r} outside [-1, 1]")
    elif not -1 <= v <= 1:
        raise OutOfCube(f"x1 = {v} outside [-1, 1]")
    return 2 * v * v - 1


def x2_lower_hyperbola(q: int, g: int, x1: ExactLike) -> Expr:
    """Least feasible x_2 for a given x_1 once the order-3 constraints are
    projected to the (x_1, x_2) plane: the smaller root

        -x_1 - sqrt(x_1^2/q + (1/q + 1 + c) x_1 + 1 + c),
        c = (q^2 - 1) / (2g*sqrt(q)),

    of the boundary hyperbola, which passes through (-1, 1).  Returned as an
    expression tree; comparisons go through certified enclosures."""
    if g < 1:
        raise GenusZero("order-3 floor needs genus >= 1")
    x = Expr.wrap(_promote(x1))
    c = Expr.wrap(SurdValue(q, Fraction(0), Fraction(q * q - 1, 2 * g * q)))
    radicand = (
        x * x / Expr.const(q)
        + (Expr.const(Fraction(1, q)) + Expr.const(1) + c) * x
        + Expr.const(1)
        + c
    )
    return Expr.const(0) - x - radicand.sqrt()


def deg2_from_x(q: int, g: int, x1: ExactLike, x2: ExactLike) -> Exact:
    """Degree-2 closed points from the first two normalized coordinates:
    g*sqrt(q)*(x_1 - sqrt(q)*x_2) + (q^2 - q)/2."""
    if g < 1:
        raise GenusZero("needs genus >= 1")
    root_q = SurdValue(q, Fraction(0), Fraction(1))
    v = g * root_q * (_coerce_surd(q, x1) - root_q * _coerce_surd(q, x2)) + Fraction(
        q * q - q, 2
    )
    return v.as_fraction() if v.is_rational else v


def psd_by_decomposition(matrix: list[list[Fraction]]) -> bool:
    """Independent PSD test for rational symmetric matrices: recursive
    Schur-complement elimination (an LDL^T pass that never needs square
    roots).  A zero pivot forces its whole row/column to vanish on a PSD
    matrix.  Used as the oracle against the all-minors route."""
    m = [[Fraction(v) for v in row] for row in matrix]
    n = len(m)
    for k in range(n):
        pivot = m[k][k]
        if pivot < 0:
            return False
        if pivot == 0:
            if any(m[k][j] != 0 for j in range(k, n)):
                return False
            continue
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] -= m[i][k] * m[k][j] / pivot
    return True

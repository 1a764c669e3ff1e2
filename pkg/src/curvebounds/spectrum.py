"""Optimal and maximal curves: the N_q(g) catalog, exact values and ranges
for the maximum point count N_q(g, pi) at prescribed geometric genus g and
arithmetic genus pi, existence tests for delta-optimal curves, the genus
spectrum of maximal curves over a square field, and the zeta function of a
maximal curve with exact count extraction.

Terminology (standard in the rational-points literature):

* N_q(g) is the maximum count over F_q on a *smooth* curve of genus g; the
  catalog holds known values or intervals, e.g. from manypoints.org.
* A curve of geometric genus g and arithmetic genus pi is *delta-optimal*
  when it has N_q(g) + pi - g points, and *maximal* when it has
  q + 1 + g*[2*sqrt(q)] + pi - g points.
* Gamma_q is the set of pairs (g, pi) realized by a maximal curve over F_q
  (q a square).

The classifier prefers structural reasons (genus gaps, the arithmetic-genus
cap) over catalog lookups, so verdicts stay stable when catalog data is
refined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bounds import (
    deg2_lower,
    deg2_upper_second_optimal,
    deg2_upper_third_optimal,
    ihara_genus,
    third_order_genus,
)
from .errors import (
    BelowValidityThreshold,
    CatalogMiss,
    CatalogParseError,
    NotSquare,
    WeilWindowViolation,
)
from .exactnum import SurdValue
from .gf import prime_power

IN_SPECTRUM = "InSpectrum"
EXCLUDED = "Excluded"
UNKNOWN = "Unknown"

#: reason codes carried by SpectrumVerdict
REASONS = (
    "GenusGap",
    "PiAboveMax",
    "NormalizationNotMaximal",
    "ProvenFamily",
    "HermitianPoint",
    "RationalRange",
    "CatalogMiss",
    "IffBoundHolds",
)


def floor_2sqrt(q: int) -> int:
    """[2*sqrt(q)]."""
    return math.isqrt(4 * q)


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog row: N_q(g) is known to lie in [lo, hi] (lo == hi means
    the value is exact), with a free-text source citation."""

    q: int
    g: int
    lo: int
    hi: int
    source: str

    def __post_init__(self):
        window_lo = self.q + 1 - math.isqrt(4 * self.g * self.g * self.q)
        window_hi = self.q + 1 + self.g * floor_2sqrt(self.q)
        if not (window_lo <= self.lo <= self.hi <= window_hi):
            raise WeilWindowViolation(
                f"N_{self.q}({self.g}) in [{self.lo}, {self.hi}] violates the "
                f"Weil window [{window_lo}, {window_hi}]"
            )

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


#: values forced by the bound tables and exact-value results shipped with the
#: package; a loaded catalog file overrides these row by row
_SEED_ROWS = (
    (2, 2, 6, 6, "builtin"),
    (2, 3, 7, 7, "builtin"),
    (4, 4, 14, 14, "builtin"),
)


class Catalog:
    """Immutable (q, g) -> CatalogEntry map with the builtin seed applied
    first and file rows overriding it."""

    def __init__(self, entries: dict[tuple[int, int], CatalogEntry]):
        self._entries = dict(entries)

    def lookup(self, q: int, g: int) -> Optional[CatalogEntry]:
        return self._entries.get((q, g))

    def get(self, q: int, g: int) -> CatalogEntry:
        entry = self.lookup(q, g)
        if entry is None:
            raise CatalogMiss(f"no catalog row for N_{q}({g})")
        return entry

    def __len__(self) -> int:
        return len(self._entries)


def catalog_load(path=None) -> Catalog:
    """Builtin seed plus, when a path is given, rows from a TSV file
    ``q<TAB>g<TAB>lo<TAB>hi<TAB>source`` ('#' comments, UTF-8).  File rows
    replace seed rows with the same (q, g)."""
    entries = {
        (q, g): CatalogEntry(q, g, lo, hi, src) for q, g, lo, hi, src in _SEED_ROWS
    }
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.rstrip("\n")
                if not line.strip() or line.lstrip().startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 5:
                    raise CatalogParseError(
                        f"{path}:{lineno}: expected 5 tab-separated fields"
                    )
                try:
                    q, g, lo, hi = (int(x) for x in parts[:4])
                except ValueError as exc:
                    raise CatalogParseError(f"{path}:{lineno}: {exc}") from None
                entries[(q, g)] = CatalogEntry(q, g, lo, hi, parts[4])
    return Catalog(entries)


_DEFAULT_CATALOG: Optional[Catalog] = None


def default_catalog() -> Catalog:
    """Catalog loaded from the packaged reference data file."""
    global _DEFAULT_CATALOG
    if _DEFAULT_CATALOG is None:
        from importlib import resources

        ref = resources.files("curvebounds").joinpath("data/nq_catalog.tsv")
        with resources.as_file(ref) as path:
            _DEFAULT_CATALOG = catalog_load(path)
    return _DEFAULT_CATALOG


# ---------------------------------------------------------------------------
# exact values and ranges for N_q(g, pi)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointsRange:
    """Known range for N_q(g, pi); lo == hi means the value is exact."""

    lo: int
    hi: int

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


#: individually proved exact values at genus >= 2
_FIXED_TRIPLES = {
    (2, 2, 3): 6,
    (2, 3, 4): 7,
    (4, 4, 5): 14,
}


def _genus_one_branch(q: int) -> tuple[bool, int]:
    """(deficient, m) for genus 1: the optimum over F_q is q + 1 + m with
    m = [2*sqrt(q)], except in the deficient case (p divides m, q neither a
    square nor prime) where it is q + m."""
    p, e = prime_power(q)
    m = floor_2sqrt(q)
    plain = (m % p != 0) or (e % 2 == 0) or (e == 1)
    return (not plain), m


def max_rational_points(q: int, g: int, pi: int, catalog: Catalog) -> Optional[PointsRange]:
    """Best known value or range for the maximum number of points over F_q on
    a curve of geometric genus g and arithmetic genus pi, or None when the
    catalog has nothing to offer.

    Exact branches: genus 0 (with its one-step monotone extension), both
    genus-1 cases, the small-genus range where the defect is fully realized,
    and three individually proved triples.  Everything else falls back to the
    sandwich N_q(g) <= N_q(g, pi) <= N_q(g) + pi - g around catalog data.
    """
    if g < 0 or pi < g:
        raise ValueError("need 0 <= g <= pi")
    half = (q * q - q) // 2
    if g == 0:
        if pi <= half:
            return PointsRange(q + 1 + pi, q + 1 + pi)
        if pi == half + 1:
            # monotone in pi, and the exact branch just failed
            return PointsRange(q + 1 + half, q + 1 + half)
        return PointsRange(q + 1, q + 1 + pi)
    if g == 1:
        deficient, m = _genus_one_branch(q)
        if deficient:
            cap = 1 + (q * q + q + m * (1 - m)) // 2
            n1max = q + m
            if pi <= cap:
                return PointsRange(q + m + pi - 1, q + m + pi - 1)
        else:
            cap = 1 + (q * q + q - m * (m + 1)) // 2
            n1max = q + 1 + m
            if pi <= cap:
                return PointsRange(q + m + pi, q + m + pi)
        return PointsRange(n1max, n1max + pi - 1)
    fixed = _FIXED_TRIPLES.get((q, g, pi))
    if fixed is not None:
        return PointsRange(fixed, fixed)
    entry = catalog.lookup(q, g)
    if (
        entry is not None
        and entry.exact
        and Fraction(g) < ihara_genus(q)
        and SurdValue(q, Fraction(half - g * (q - 1) - pi), Fraction(-g)).sign() >= 0
    ):
        # defect fully realized: pi <= (q^2-q)/2 - g(q + sqrt(q) - 1)
        return PointsRange(entry.lo + pi - g, entry.lo + pi - g)
    if entry is None:
        return None
    return PointsRange(entry.lo, entry.hi + pi - g)


@dataclass(frozen=True)
class ExistenceVerdict:
    """Outcome of a delta-optimal existence test."""

    answer: str  # "yes" | "no" | "unknown"
    reason: str


def delta_optimal_exists(q: int, g: int, pi: int, catalog: Catalog) -> ExistenceVerdict:
    """Does a delta-optimal curve of geometric genus g and arithmetic genus
    pi exist over F_q?

    "no" when the defect pi - g exceeds the second-order (or, above its
    genus threshold, third-order) cap on degree-2 closed points of an optimal
    smooth curve; "yes" when pi == g, at genus 0 within the rational range,
    or below ihara_genus(q) within the ceiling of the degree-2 lower bound;
    otherwise "unknown".
    """
    if g < 0 or pi < g:
        raise ValueError("need 0 <= g <= pi")
    if g == 0:
        if pi <= (q * q - q) // 2:
            return ExistenceVerdict("yes", "rational-range")
        return ExistenceVerdict("no", "rational-range-exceeded")
    if pi == g:
        return ExistenceVerdict("yes", "optimal-smooth-curve")
    defect = pi - g
    entry = catalog.lookup(q, g)
    if entry is not None and entry.exact:
        if defect > deg2_upper_second_optimal(q, g, catalog).truncated.value:
            return ExistenceVerdict("no", "second-order-cap")
        try:
            third = deg2_upper_third_optimal(q, g, catalog)
        except BelowValidityThreshold:
            third = None
        if third is not None and defect > third.truncated.value:
            return ExistenceVerdict("no", "third-order-cap")
    if Fraction(g) < ihara_genus(q) and defect <= deg2_lower(q, g).truncated.value:
        return ExistenceVerdict("yes", "lower-bound-range")
    if entry is None:
        return ExistenceVerdict("unknown", "catalog-miss")
    return ExistenceVerdict("unknown", "between-bounds")


# ---------------------------------------------------------------------------
# genus spectrum of maximal curves (square q)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumVerdict:
    """Classification of a (q, g, pi) triple for maximal-curve existence."""

    status: str  # IN_SPECTRUM | EXCLUDED | UNKNOWN
    reason: str  # one of REASONS
    pi_max: Optional[int] = None


def _require_square(q: int) -> int:
    s = math.isqrt(q)
    if s * s != q:
        raise NotSquare(f"q = {q} is not a perfect square")
    return s


def hermitian_genus(q: int) -> int:
    """sqrt(q)(sqrt(q) - 1)/2: the largest genus of a maximal smooth curve
    over F_q, attained only by the Hermitian curve."""
    s = _require_square(q)
    return s * (s - 1) // 2


def second_spectrum_genus(q: int) -> int:
    """floor((sqrt(q) - 1)^2 / 4): the largest maximal-curve genus below the
    Hermitian one (first gap)."""
    s = _require_square(q)
    return (s - 1) ** 2 // 4


def third_spectrum_genus(q: int) -> int:
    """floor((q - sqrt(q) + 4) / 6): the next realized genus threshold
    (second gap, as printed in the source tables)."""
    s = _require_square(q)
    return (q - s + 4) // 6


def max_arithmetic_genus(q: int, g: int) -> int:
    """Largest arithmetic genus pi of a maximal curve over square F_q with
    geometric genus g:

        g + (q^2 + (2g - 1)q - 2g*sqrt(q)(2*sqrt(q) + 1)) / 2
          = (1 - q - sqrt(q)) * g + (q^2 - q) / 2

    (the second summand of the first form is the number of degree-2 closed
    points on a smooth maximal curve of genus g).  Both closed forms are
    computed and must agree."""
    s = _require_square(q)
    direct = g + (q * q + (2 * g - 1) * q - 2 * g * s * (2 * s + 1)) // 2
    linear = (1 - q - s) * g + (q * q - q) // 2
    assert direct == linear, (q, g, direct, linear)
    return direct


def classify_maximal(q: int, g: int, pi: int, catalog: Catalog) -> SpectrumVerdict:
    """Is (g, pi) in the genus spectrum Gamma_q of maximal curves over F_q?

    Structural checks run first: the arithmetic-genus cap, the genus gaps,
    the Hermitian point, the rational row, and the two proved families at
    second_spectrum_genus and third_spectrum_genus.  Only then is the catalog
    consulted for whether a maximal smooth curve of genus g exists at all
    (N_q(g) equal to the first-order count bound)."""
    s = _require_square(q)
    if g < 0 or pi < g:
        raise ValueError("need 0 <= g <= pi")
    g1 = hermitian_genus(q)
    g2 = second_spectrum_genus(q)
    g3 = third_spectrum_genus(q)
    pi_max = max_arithmetic_genus(q, g)
    if pi > pi_max:
        return SpectrumVerdict(EXCLUDED, "PiAboveMax", pi_max)
    if g > g1 or g2 < g < g1:
        # first-gap exclusion; g3 is never strictly between g2 and g1
        # (g3 <= g2 for q >= 25, and g3 coincides with g2 or g1 below that),
        # so this cannot shadow the proved families
        return SpectrumVerdict(EXCLUDED, "GenusGap", pi_max)
    if g == g1:
        # pi_max equals g1 here, so pi == g1: the Hermitian curve itself
        return SpectrumVerdict(IN_SPECTRUM, "HermitianPoint", pi_max)
    if g == 0:
        return SpectrumVerdict(IN_SPECTRUM, "RationalRange", pi_max)
    if g in (g2, g3):
        return SpectrumVerdict(IN_SPECTRUM, "ProvenFamily", pi_max)
    entry = catalog.lookup(q, g)
    weil = q + 1 + 2 * g * s
    if entry is not None:
        if entry.exact and entry.lo == weil:
            return SpectrumVerdict(IN_SPECTRUM, "IffBoundHolds", pi_max)
        if entry.hi < weil:
            return SpectrumVerdict(EXCLUDED, "NormalizationNotMaximal", pi_max)
    return SpectrumVerdict(UNKNOWN, "CatalogMiss", pi_max)


def enumerate_spectrum(
    q: int, catalog: Catalog
) -> list[tuple[int, int, SpectrumVerdict]]:
    """Classify every lattice point of the triangle 0 <= g, g <= pi,
    pi <= max_arithmetic_genus(q, g), ordered by (g, pi)."""
    _require_square(q)
    out = []
    g = 0
    while True:
        pi_max = max_arithmetic_genus(q, g)
        if pi_max < g:
            break
        for pi in range(g, pi_max + 1):
            out.append((g, pi, classify_maximal(q, g, pi, catalog)))
        g += 1
    return out


def spectrum_counts(rows: list[tuple[int, int, SpectrumVerdict]]) -> dict[str, int]:
    counts = {IN_SPECTRUM: 0, EXCLUDED: 0, UNKNOWN: 0}
    for _, _, verdict in rows:
        counts[verdict.status] += 1
    return counts


# ---------------------------------------------------------------------------
# zeta functions of maximal curves
# ---------------------------------------------------------------------------


def _poly_mul(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def _poly_pow(f: tuple[int, ...], n: int) -> tuple[int, ...]:
    result = (1,)
    base = f
    while n:
        if n & 1:
            result = _poly_mul(result, base)
        base = _poly_mul(base, base)
        n >>= 1
    return result


@dataclass(frozen=True)
class ZetaFunction:
    """Zeta function P(T) / ((1 - T)(1 - qT)) with integer numerator P,
    P(0) = 1, stored as ascending coefficients."""

    q: int
    numerator: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(self.numerator))
        assert self.numerator[0] == 1

    def counts(self, n: int) -> list[int]:
        """Point counts N_1..N_n over F_{q^i} from the power-series identity
        T * d/dT log Z(T) = sum_i N_i T^i, using exact integer series
        division (P(0) = 1 keeps everything integral)."""
        if n < 1:
            raise ValueError("need n >= 1")
        p = self.numerator
        c = [0] * (n + 1)
        for i in range(1, n + 1):
            acc = i * p[i] if i < len(p) else 0
            for k in range(1, i):
                if i - k < len(p):
                    acc -= c[k] * p[i - k]
            c[i] = acc
        return [self.q**i + 1 + c[i] for i in range(1, n + 1)]


def zeta_maximal(q: int, g: int, pi: int) -> ZetaFunction:
    """Zeta function of a maximal curve of geometric genus g and arithmetic
    genus pi over F_q:

        (qT^2 + [2*sqrt(q)]T + 1)^g * (1 + T)^(pi - g) / ((1 - T)(1 - qT)).
    """
    if g < 0 or pi < g:
        raise ValueError("need 0 <= g <= pi")
    m = floor_2sqrt(q)
    numerator = _poly_mul(_poly_pow((1, m, q), g), _poly_pow((1, 1), pi - g))
    assert len(numerator) - 1 == g + pi
    return ZetaFunction(q, numerator)


def zeta_point_counts(z: ZetaFunction, n: int) -> list[int]:
    """Counts N_1..N_n extracted from a zeta function."""
    return z.counts(n)

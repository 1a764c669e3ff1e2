"""Closed-form bounds on point counts and on the number of degree-2 closed
points of a smooth curve over F_q, as exact expressions with certified
integer truncations.

Upper bounds are reported as floors and lower bounds as ceilings: the bounded
quantities are integers, so this loses nothing and is what makes the printed
tables integer-valued.  sqrt(q) is kept symbolic even for square q and folds
at construction, so there is a single code path.

Two genus thresholds recur:

* ``ihara_genus(q)`` = (q - sqrt(q))/2, above which the second-order count
  bound beats the first-order one;
* ``third_order_genus(q)`` = (q-1)*sqrt(q/2), above which the third-order
  machinery is proved.

Evaluation below a threshold is permitted, but the result carries validity
metadata so callers (e.g. table rendering) can leave those cells empty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BelowValidityThreshold, CatalogMiss, GenusZero
from .exactnum import (
    DEFAULT_MAX_BITS,
    CertifiedInt,
    Expr,
    SurdValue,
    interval_floor,
    surd_ceil,
    surd_floor,
)

UPPER_DEG2 = "upper_deg2"
LOWER_DEG2 = "lower_deg2"
UPPER_N1 = "upper_n1"


@dataclass(frozen=True)
class BoundResult:
    """An exact bound expression with its certified integer truncation.

    ``truncated`` is the floor for upper bounds and the ceiling for the lower
    bound.  ``genus_threshold`` is the genus above which the bound is proved
    (None when unconditional) and ``valid`` records whether the inputs met it.
    ``positive`` is set on the lower bound only: whether the exact value is
    positive, which happens exactly below ihara_genus(q).
    """

    exact: Expr
    truncated: CertifiedInt
    kind: str
    genus_threshold: Optional[SurdValue] = None
    valid: bool = True
    positive: Optional[bool] = None

    def __int__(self) -> int:
        return self.truncated.value


def ihara_genus(q: int) -> SurdValue:
    """(q - sqrt(q)) / 2."""
    return SurdValue(q, Fraction(q, 2), Fraction(-1, 2))


def third_order_genus(q: int) -> SurdValue:
    """(q - 1) * sqrt(q/2), written as ((q-1)/2) * sqrt(2q)."""
    return SurdValue(2 * q, Fraction(0), Fraction(q - 1, 2))


def _sqrt_q(q: int) -> Expr:
    return Expr.root_of(q)


def deg2_upper_first(q: int, g: int) -> BoundResult:
    """First-order upper bound on degree-2 closed points:
    (q^2 - q)/2 + g*(q + sqrt(q)), straight from the count windows over
    F_q and F_{q^2}."""
    val = SurdValue(q, Fraction(q * q - q, 2) + g * q, Fraction(g))
    return BoundResult(Expr.wrap(val), surd_floor(val), UPPER_DEG2)


def deg2_upper_second(q: int, g: int, n1: int) -> BoundResult:
    """Second-order upper bound at a given count N1 over F_q:
    (q^2 + 1 + 2gq - (N1 - (q+1))^2 / g - N1) / 2.  Exact rational."""
    if g < 1:
        raise GenusZero("second-order bound needs genus >= 1")
    val = Fraction(
        q * q + 1 + 2 * g * q - Fraction((n1 - (q + 1)) ** 2, g) - n1, 2
    )
    return BoundResult(Expr.const(val), surd_floor(val), UPPER_DEG2)


def deg2_upper_third(
    q: int, g: int, n1: int, max_bits: int = DEFAULT_MAX_BITS
) -> BoundResult:
    """Third-order upper bound at a given count N1 over F_q:

        sqrt(N1^2/4 + alpha*N1 + beta) - (1+sqrt(q))/2 * N1
            + (q^2 + 1 + sqrt(q)(q+1)) / 2

    with alpha = -((2q+2)g*sqrt(q) + q^3 + q + 2)/4 and
    beta = (4q^2 g^2 + 2g(q^3+q^2+q+1)sqrt(q) + q^4 + q^3 + q + 1)/4.
    Proved for g >= third_order_genus(q); evaluation below the threshold is
    allowed but flagged invalid."""
    if g < 1:
        raise GenusZero("third-order bound needs genus >= 1")
    s = _sqrt_q(q)
    alpha = Expr.const(Fraction(-1, 4)) * (
        Expr.const(2 * g * (q + 1)) * s + Expr.const(q**3 + q + 2)
    )
    beta = Expr.const(Fraction(1, 4)) * (
        Expr.const(4 * q * q * g * g + q**4 + q**3 + q + 1)
        + Expr.const(2 * g * (q**3 + q * q + q + 1)) * s
    )
    radicand = Expr.const(Fraction(n1 * n1, 4)) + alpha * Expr.const(n1) + beta
    val = (
        radicand.sqrt()
        - Expr.const(Fraction(n1, 2)) * (Expr.const(1) + s)
        + Expr.const(Fraction(1, 2)) * (Expr.const(q * q + 1) + Expr.const(q + 1) * s)
    )
    threshold = third_order_genus(q)
    return BoundResult(
        val,
        interval_floor(val, "floor", max_bits=max_bits),
        UPPER_DEG2,
        genus_threshold=threshold,
        valid=threshold <= g,
    )


def deg2_upper_second_optimal(q: int, g: int, catalog) -> BoundResult:
    """Second-order bound evaluated at N1 = N_q(g) from the catalog: an upper
    bound for the degree-2 closed points of any optimal curve of genus g."""
    return deg2_upper_second(q, g, _exact_nq(catalog, q, g))


def deg2_upper_third_optimal(
    q: int, g: int, catalog, max_bits: int = DEFAULT_MAX_BITS
) -> BoundResult:
    """Third-order analogue of deg2_upper_second_optimal.  Below the genus
    threshold the bound is not proved and this raises BelowValidityThreshold,
    mirroring the empty cells of the printed table."""
    if g < 1:
        raise GenusZero("third-order bound needs genus >= 1")
    if not (third_order_genus(q) <= g):
        raise BelowValidityThreshold(
            f"g = {g} is below the third-order genus threshold for q = {q}"
        )
    return deg2_upper_third(q, g, _exact_nq(catalog, q, g), max_bits=max_bits)


def deg2_upper_best(
    q: int, g: int, catalog, max_bits: int = DEFAULT_MAX_BITS
) -> BoundResult:
    """The better of the second- and (when proved) third-order bounds at
    N1 = N_q(g)."""
    best = deg2_upper_second_optimal(q, g, catalog)
    try:
        third = deg2_upper_third_optimal(q, g, catalog, max_bits=max_bits)
    except BelowValidityThreshold:
        return best
    return third if third.truncated.value < best.truncated.value else best


def deg2_lower(q: int, g: int) -> BoundResult:
    """Lower bound on degree-2 closed points: (q^2 - q)/2 - g*(q + sqrt(q)),
    reported as a ceiling.  Positive exactly when g < ihara_genus(q)."""
    val = SurdValue(q, Fraction(q * q - q, 2) - g * q, Fraction(-g))
    return BoundResult(
        Expr.wrap(val),
        surd_ceil(val),
        LOWER_DEG2,
        positive=val.sign() > 0,
    )


def weil_upper(q: int, g: int) -> BoundResult:
    """First-order upper bound on the count over F_q: q + 1 + 2g*sqrt(q)."""
    val = SurdValue(q, Fraction(q + 1), Fraction(2 * g))
    return BoundResult(Expr.wrap(val), surd_floor(val), UPPER_N1)


def ihara_upper(q: int, g: int, max_bits: int = DEFAULT_MAX_BITS) -> BoundResult:
    """Second-order upper bound on the count over F_q:
    q + 1 + (sqrt((8q+1)g^2 + 4q(q-1)g) - g)/2.  Beats weil_upper exactly
    when g >= ihara_genus(q); always evaluable."""
    rad = Expr.const((8 * q + 1) * g * g + 4 * q * (q - 1) * g)
    val = Expr.const(q + 1) + (rad.sqrt() - Expr.const(g)) / Expr.const(2)
    threshold = ihara_genus(q)
    return BoundResult(
        val,
        interval_floor(val, "floor", max_bits=max_bits),
        UPPER_N1,
        genus_threshold=threshold,
        valid=threshold <= g,
    )


def weil_third_upper(q: int, g: int, max_bits: int = DEFAULT_MAX_BITS) -> BoundResult:
    """Third-order upper bound on the count over F_q:

        q + 1 + (sqrt(a + b/g + c/g^2) - (q-1)/q + 2*sqrt(q)(q-1)^2/(gq)) * g*sqrt(q)

    with a = 5 + 8/sqrt(q) - 1/q^2,
         b = (q-1)/(q*sqrt(q)) * (q^2 + 2q - 1 - (4q - 4)*sqrt(q)),
         c = (q-1)/(4q) * (q^3 - 5q^2 - 5q + 1 - (8q + 8)*sqrt(q)).
    Proved for g >= third_order_genus(q)."""
    if g < 1:
        raise GenusZero("third-order count bound needs genus >= 1")
    s = _sqrt_q(q)
    a = Expr.const(5) + Expr.const(8) / s - Expr.const(Fraction(1, q * q))
    b = (Expr.const(q - 1) / (Expr.const(q) * s)) * (
        Expr.const(q * q + 2 * q - 1) + Expr.const(4 - 4 * q) * s
    )
    c = Expr.const(Fraction(q - 1, 4 * q)) * (
        Expr.const(q**3 - 5 * q * q - 5 * q + 1) + Expr.const(-(8 * q + 8)) * s
    )
    inner = (
        (a + b / Expr.const(g) + c / Expr.const(g * g)).sqrt()
        - Expr.const(Fraction(q - 1, q))
        + Expr.const(Fraction(2 * (q - 1) ** 2, g * q)) * s
    )
    val = Expr.const(q + 1) + inner * Expr.const(g) * s
    threshold = third_order_genus(q)
    return BoundResult(
        val,
        interval_floor(val, "floor", max_bits=max_bits),
        UPPER_N1,
        genus_threshold=threshold,
        valid=threshold <= g,
    )


def _exact_nq(catalog, q: int, g: int) -> int:
    entry = catalog.lookup(q, g)
    if entry is None:
        raise CatalogMiss(f"no catalog value for N_{q}({g})")
    if entry.lo != entry.hi:
        raise CatalogMiss(
            f"N_{q}({g}) only known as [{entry.lo}, {entry.hi}], exact value required"
        )
    return entry.lo

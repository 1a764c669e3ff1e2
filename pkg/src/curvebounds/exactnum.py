"""Exact arithmetic over the rationals and over quadratic extensions Q(sqrt(r)),
plus certified integer truncation of expressions with nested square roots.

Three layers:

* ``Fraction`` (stdlib) is the rational type; ``Rational`` is an alias.
* ``SurdValue`` is an exact element ``a + b*sqrt(radicand)``.  Signs and
  comparisons are decided by squaring, never by floating point, because the
  quantities of interest routinely sit close to integer boundaries.
* ``Expr`` is a small closed expression algebra (constants, +, -, *, /, sqrt)
  evaluated either exactly (when the value collapses into some Q(sqrt(d)))
  or by outward-rounded interval arithmetic with doubling precision.

Interval endpoints are exact ``Fraction`` values; rounding enters only at
square roots, via integer square roots at a controlled bit count, so every
enclosure is rigorous at every precision.

All values are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import NegativeRadicand, PrecisionExhausted

Rational = Fraction

RationalLike = Union[int, Fraction]

INITIAL_PRECISION_BITS = 128
DEFAULT_MAX_BITS = 4096

#: primes up to this limit are peeled off when extracting square factors of a
#: square-root argument; larger unresolved cofactors force the interval path
_TRIAL_LIMIT = 100_000


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a rational, or None if x is not a perfect square."""
    if x < 0:
        return None
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _square_split(m: int) -> Optional[tuple[int, int]]:
    """Write m = s^2 * d with d squarefree.  Returns (s, d), or None when the
    squarefree part cannot be certified by trial division at this scale."""
    assert m > 0
    s, d = 1, 1
    f = 2
    while f * f <= m and f < _TRIAL_LIMIT:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            s *= f ** (e // 2)
            if e % 2:
                d *= f
        f += 1 if f == 2 else 2
    if m > 1:
        r = math.isqrt(m)
        if r * r == m:
            s *= r
        elif m < _TRIAL_LIMIT * _TRIAL_LIMIT:
            # no factor below the trial limit, so m is prime, hence squarefree
            d *= m
        else:
            return None
    return s, d


@dataclass(frozen=True, eq=False)
class SurdValue:
    """Exact element ``a + b*sqrt(radicand)`` of Q(sqrt(radicand)).

    The radicand is a positive integer kept as context; if it is a perfect
    square the irrational part folds into ``a`` at construction, so ``b != 0``
    guarantees sqrt(radicand) is irrational and the representation is unique.
    """

    radicand: int
    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        if self.radicand <= 0:
            raise ValueError("radicand must be a positive integer")
        a = _as_fraction(self.a)
        b = _as_fraction(self.b)
        r = math.isqrt(self.radicand)
        if r * r == self.radicand:
            a, b = a + b * r, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    # -- representation ---------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self!r} is irrational")
        return self.a

    def __repr__(self) -> str:
        if self.b == 0:
            return f"SurdValue({self.a})"
        return f"SurdValue({self.a} + {self.b}*sqrt({self.radicand}))"

    def __float__(self) -> float:
        # debugging/printing convenience only; never used for decisions
        return float(self.a) + float(self.b) * math.sqrt(self.radicand)

    # -- coercion ----------------------------------------------------------

    def _pair(self, other: object) -> Optional[tuple["SurdValue", "SurdValue"]]:
        if isinstance(other, (int, Fraction)):
            return self, SurdValue(self.radicand, _as_fraction(other), Fraction(0))
        if isinstance(other, SurdValue):
            if other.radicand == self.radicand:
                return self, other
            if other.b == 0:
                return self, SurdValue(self.radicand, other.a, Fraction(0))
            if self.b == 0:
                return SurdValue(other.radicand, self.a, Fraction(0)), other
            raise ValueError(
                f"cannot mix radicands {self.radicand} and {other.radicand}"
            )
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: object) -> "SurdValue":
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return SurdValue(x.radicand, x.a + y.a, x.b + y.b)

    __radd__ = __add__

    def __neg__(self) -> "SurdValue":
        return SurdValue(self.radicand, -self.a, -self.b)

    def __sub__(self, other: object) -> "SurdValue":
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return SurdValue(x.radicand, x.a - y.a, x.b - y.b)

    def __rsub__(self, other: object) -> "SurdValue":
        return (-self).__add__(other)

    def __mul__(self, other: object) -> "SurdValue":
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return SurdValue(
            x.radicand,
            x.a * y.a + x.b * y.b * x.radicand,
            x.a * y.b + x.b * y.a,
        )

    __rmul__ = __mul__

    def _inverse(self) -> "SurdValue":
        # 1/(a + b*sqrt(r)) = (a - b*sqrt(r)) / (a^2 - b^2 r); the norm is
        # nonzero for nonzero values because sqrt(r) is irrational when b != 0
        norm = self.a * self.a - self.b * self.b * self.radicand
        if norm == 0:
            raise ZeroDivisionError("division by zero SurdValue")
        return SurdValue(self.radicand, self.a / norm, -self.b / norm)

    def __truediv__(self, other: object) -> "SurdValue":
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return x * y._inverse()

    def __rtruediv__(self, other: object) -> "SurdValue":
        return self._inverse().__mul__(other)

    # -- order --------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign, by case analysis and squaring: never floating point."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 * r
        lhs, rhs = a * a, b * b * self.radicand
        if lhs == rhs:
            return 0  # unreachable for non-square radicand, kept for safety
        if a > 0:
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def _cmp(self, other: object) -> int:
        pair = self._pair(other)
        if pair is None:
            raise TypeError(f"cannot compare SurdValue with {type(other).__name__}")
        x, y = pair
        return (x - y).sign()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, SurdValue)):
            try:
                return self._cmp(other) == 0
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.radicand))

    def __lt__(self, other: object) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: object) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: object) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: object) -> bool:
        return self._cmp(other) >= 0

    # -- truncation -----------------------------------------------------------

    def floor(self) -> int:
        """Greatest integer <= value, decided entirely by exact sign tests."""
        a, b = self.a, self.b
        if b == 0:
            return math.floor(a)
        # seed with an integer guess, then correct with exact comparisons
        t = b * b * self.radicand
        root = math.isqrt(t.numerator // t.denominator)
        m = math.floor(a) + (root if b > 0 else -(root + 2))
        while (self - (m + 1)).sign() >= 0:
            m += 1
        while (self - m).sign() < 0:
            m -= 1
        return m

    def ceil(self) -> int:
        return -(-self).floor()


@dataclass(frozen=True)
class CertifiedInt:
    """Integer truncation of a real value together with how it was certified.

    ``mode`` is "exact" when the value collapsed into some Q(sqrt(d)) and the
    truncation was decided by exact sign tests, or "interval" when an
    outward-rounded enclosure of width < 1 pinned the unique integer;
    ``precision_bits`` records the working precision of that enclosure.
    """

    value: int
    direction: str  # "floor" | "ceil"
    mode: str  # "exact" | "interval"
    precision_bits: Optional[int] = None

    def __post_init__(self) -> None:
        if self.direction not in ("floor", "ceil"):
            raise ValueError(f"bad direction {self.direction!r}")
        if self.mode not in ("exact", "interval"):
            raise ValueError(f"bad mode {self.mode!r}")

    def __int__(self) -> int:
        return self.value


def surd_sign(v: SurdValue) -> int:
    """Exact sign of a + b*sqrt(r): -1, 0 or +1."""
    return v.sign()


def surd_floor(v: Union[SurdValue, Fraction, int]) -> CertifiedInt:
    """Greatest integer <= v, certified by the exact path."""
    if isinstance(v, SurdValue):
        return CertifiedInt(v.floor(), "floor", "exact")
    return CertifiedInt(math.floor(_as_fraction(v)), "floor", "exact")


def surd_ceil(v: Union[SurdValue, Fraction, int]) -> CertifiedInt:
    """Least integer >= v, certified by the exact path."""
    if isinstance(v, SurdValue):
        return CertifiedInt(v.ceil(), "ceil", "exact")
    return CertifiedInt(math.ceil(_as_fraction(v)), "ceil", "exact")


# ---------------------------------------------------------------------------
# expression trees
# ---------------------------------------------------------------------------


class _ExactFail(Exception):
    """Internal: expression does not collapse into a single Q(sqrt(d))."""


class _ZeroStraddle(Exception):
    """Internal: interval division by an enclosure containing zero."""


ExprLike = Union["Expr", int, Fraction, SurdValue]


@dataclass(frozen=True)
class Expr:
    """Immutable expression tree over the closed algebra
    {constants, +, -, *, /, sqrt}."""

    op: str  # "const" | "add" | "sub" | "mul" | "div" | "sqrt"
    args: tuple = ()
    value: Optional[Fraction] = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(x: RationalLike) -> "Expr":
        return Expr("const", value=_as_fraction(x))

    @staticmethod
    def root_of(q: RationalLike) -> "Expr":
        """sqrt(q) as a leaf expression."""
        return Expr.const(q).sqrt()

    @staticmethod
    def wrap(x: ExprLike) -> "Expr":
        if isinstance(x, Expr):
            return x
        if isinstance(x, SurdValue):
            if x.b == 0:
                return Expr.const(x.a)
            return Expr.const(x.a) + Expr.const(x.b) * Expr.root_of(x.radicand)
        return Expr.const(x)

    def sqrt(self) -> "Expr":
        return Expr("sqrt", (self,))

    # -- operators -----------------------------------------------------------

    def _binop(self, op: str, other: ExprLike, swap: bool = False) -> "Expr":
        if not isinstance(other, (Expr, int, Fraction, SurdValue)):
            return NotImplemented
        other = Expr.wrap(other)
        return Expr(op, (other, self) if swap else (self, other))

    def __add__(self, other: ExprLike) -> "Expr":
        return self._binop("add", other)

    def __radd__(self, other: ExprLike) -> "Expr":
        return self._binop("add", other, swap=True)

    def __sub__(self, other: ExprLike) -> "Expr":
        return self._binop("sub", other)

    def __rsub__(self, other: ExprLike) -> "Expr":
        return self._binop("sub", other, swap=True)

    def __mul__(self, other: ExprLike) -> "Expr":
        return self._binop("mul", other)

    def __rmul__(self, other: ExprLike) -> "Expr":
        return self._binop("mul", other, swap=True)

    def __truediv__(self, other: ExprLike) -> "Expr":
        return self._binop("div", other)

    def __rtruediv__(self, other: ExprLike) -> "Expr":
        return self._binop("div", other, swap=True)

    def __neg__(self) -> "Expr":
        return Expr.const(0) - self

    def __repr__(self) -> str:
        if self.op == "const":
            return f"{self.value}"
        if self.op == "sqrt":
            return f"sqrt({self.args[0]!r})"
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[self.op]
        return f"({self.args[0]!r} {sym} {self.args[1]!r})"

    # -- evaluation ------------------------------------------------------------

    def exact(self) -> Optional[Union[Fraction, SurdValue]]:
        """Exact value when the tree collapses into Q(sqrt(d)) for a single d,
        else None.  Raises NegativeRadicand if any sqrt argument is certainly
        negative on the exact path."""
        try:
            return _exact_eval(self)
        except _ExactFail:
            return None

    def interval(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rigorous enclosure [lo, hi] at the given working precision."""
        return _interval_eval(self, bits)

    def __float__(self) -> float:
        lo, hi = self.interval(64)
        return float((lo + hi) / 2)


def _exact_add(x, y):
    return x + y


def _exact_sub(x, y):
    return x - y


def _exact_mul(x, y):
    return x * y


def _exact_div(x, y):
    if isinstance(y, Fraction) and y == 0:
        raise ZeroDivisionError("division by exact zero")
    return x / y


def _exact_sqrt(x: Union[Fraction, SurdValue]) -> Union[Fraction, SurdValue]:
    if isinstance(x, SurdValue) and x.b == 0:
        x = x.a
    if isinstance(x, Fraction):
        if x < 0:
            raise NegativeRadicand(f"sqrt of negative rational {x}")
        if x == 0:
            return Fraction(0)
        r = rational_sqrt(x)
        if r is not None:
            return r
        split = _square_split(x.numerator * x.denominator)
        if split is None:
            raise _ExactFail
        s, d = split
        # sqrt(n/m) = sqrt(n*m)/m = s*sqrt(d)/m
        return SurdValue(d, Fraction(0), Fraction(s, x.denominator))
    # sqrt of a genuine surd: solve (c + d*sqrt(r))^2 = x inside Q(sqrt(r))
    sgn = x.sign()
    if sgn < 0:
        raise NegativeRadicand(f"sqrt of negative value {x!r}")
    if sgn == 0:
        return Fraction(0)
    norm = rational_sqrt(x.a * x.a - x.b * x.b * x.radicand)
    if norm is None:
        raise _ExactFail
    for c2 in ((x.a + norm) / 2, (x.a - norm) / 2):
        if c2 <= 0:
            continue
        c = rational_sqrt(c2)
        if c is None:
            continue
        d = x.b / (2 * c)
        root = SurdValue(x.radicand, c, d)
        if root.sign() < 0:
            root = -root
        if root * root == x:
            return root
    raise _ExactFail


def _exact_eval(e: Expr) -> Union[Fraction, SurdValue]:
    if e.op == "const":
        return e.value
    if e.op == "sqrt":
        return _exact_sqrt(_exact_eval(e.args[0]))
    x = _exact_eval(e.args[0])
    y = _exact_eval(e.args[1])
    try:
        return {"add": _exact_add, "sub": _exact_sub, "mul": _exact_mul,
                "div": _exact_div}[e.op](x, y)
    except ValueError:
        # mixed irrational radicands do not fit one quadratic extension
        raise _ExactFail from None


def _sqrt_down(x: Fraction, bits: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    s = 1 << bits
    return Fraction(math.isqrt(n * d * s * s), d * s)


def _sqrt_up(x: Fraction, bits: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    s = 1 << bits
    t = n * d * s * s
    r = math.isqrt(t)
    if r * r != t:
        r += 1
    return Fraction(r, d * s)


def _interval_eval(e: Expr, bits: int) -> tuple[Fraction, Fraction]:
    if e.op == "const":
        return e.value, e.value
    if e.op == "sqrt":
        lo, hi = _interval_eval(e.args[0], bits)
        if hi < 0:
            raise NegativeRadicand(f"sqrt argument has certified upper bound {hi} < 0")
        if lo < 0:
            lo = Fraction(0)
        return _sqrt_down(lo, bits), _sqrt_up(hi, bits)
    a, b = _interval_eval(e.args[0], bits)
    c, d = _interval_eval(e.args[1], bits)
    if e.op == "add":
        return a + c, b + d
    if e.op == "sub":
        return a - d, b - c
    if e.op == "mul":
        products = (a * c, a * d, b * c, b * d)
        return min(products), max(products)
    if e.op == "div":
        if c <= 0 <= d:
            raise _ZeroStraddle
        rc, rd = 1 / d, 1 / c
        products = (a * rc, a * rd, b * rc, b * rd)
        return min(products), max(products)
    raise AssertionError(f"unknown op {e.op}")


def _truncate(lo: Fraction, hi: Fraction, direction: str) -> Optional[int]:
    if direction == "floor":
        klo, khi = math.floor(lo), math.floor(hi)
    else:
        klo, khi = math.ceil(lo), math.ceil(hi)
    return klo if klo == khi else None


def interval_floor(
    expr: Expr,
    direction: str = "floor",
    max_bits: int = DEFAULT_MAX_BITS,
    force_interval: bool = False,
) -> CertifiedInt:
    """Certified integer truncation of an expression tree.

    Tries the exact path first: when the tree collapses into a single
    Q(sqrt(d)) the truncation is decided by exact sign tests.  Otherwise the
    tree is evaluated with outward-rounded interval arithmetic, doubling the
    working precision from INITIAL_PRECISION_BITS until the enclosure pins a
    unique integer or ``max_bits`` is exceeded.

    ``force_interval`` skips the exact path; it exists so tests can exercise
    the interval machinery against the exact oracle.

    Raises NegativeRadicand when a sqrt argument has a certified negative
    upper bound, PrecisionExhausted when the value cannot be separated from
    an integer within ``max_bits`` (e.g. the value *is* that integer but is
    only reachable through the interval path).
    """
    if direction not in ("floor", "ceil"):
        raise ValueError(f"bad direction {direction!r}")
    if not force_interval:
        val = expr.exact()
        if val is not None:
            if direction == "floor":
                cert = surd_floor(val)
            else:
                cert = surd_ceil(val)
            return cert
    bits = INITIAL_PRECISION_BITS
    while bits <= max_bits:
        try:
            lo, hi = _interval_eval(expr, bits)
        except _ZeroStraddle:
            pass
        else:
            k = _truncate(lo, hi, direction)
            if k is not None:
                return CertifiedInt(k, direction, "interval", bits)
        bits *= 2
    raise PrecisionExhausted(
        f"no unique {direction} within {max_bits} bits for {expr!r}"
    )

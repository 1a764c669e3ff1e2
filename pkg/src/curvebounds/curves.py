"""Projective plane curves over small finite fields: parsing, brute-force
point counts over extension fields, degree-2 closed points, and the
normalized count coordinates used by the feasibility region.

Counting is done on the plane model by the standard affine decomposition of
P^2: (x:y:1), then (x:1:0), then (1:0:0), so every point is visited exactly
once.  For a singular plane model this counts points of the model, not of its
normalization; the shipped fixtures use smooth models only.  The geometric
genus is fixture metadata supplied by the caller, never computed here, and
absolute irreducibility is likewise the caller's responsibility.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CurveSyntaxError,
    GenusZero,
    NegativeDifference,
    NotHomogeneous,
    OddDifference,
    TooLarge,
    ZeroPolynomial,
)
from .exactnum import SurdValue
from .gf import DEFAULT_ORDER_LIMIT, ExtensionField, FieldCtx, FieldElem

Monomial = tuple[int, int, int]


@dataclass(frozen=True)
class PlaneCurve:
    """Homogeneous trivariate form over F_q, as a sorted tuple of
    ((i, j, k), coefficient) with i + j + k = degree and coefficient != 0."""

    ctx: FieldCtx
    degree: int
    terms: tuple[tuple[Monomial, FieldElem], ...]

    def __post_init__(self):
        if not self.terms:
            raise ZeroPolynomial("curve has no nonzero terms")
        for (i, j, k), c in self.terms:
            if i + j + k != self.degree:
                raise NotHomogeneous(
                    f"term x^{i}*y^{j}*z^{k} has degree {i + j + k}, expected {self.degree}"
                )
            if c == self.ctx.zero:
                raise ZeroPolynomial("zero coefficient stored in curve terms")

    def scaled(self, c: FieldElem) -> "PlaneCurve":
        """The same zero locus: every coefficient multiplied by nonzero c."""
        if c == self.ctx.zero:
            raise ValueError("scaling by zero")
        return PlaneCurve(
            self.ctx,
            self.degree,
            tuple((m, self.ctx.mul(c, a)) for m, a in self.terms),
        )


_VARS = {"x": 0, "y": 1, "z": 2}


def _tokenize(text: str) -> list:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(int(text[i:j]))
            i = j
        elif ch in _VARS:
            tokens.append(ch)
            i += 1
        else:
            raise CurveSyntaxError(f"unexpected character {ch!r} at position {i}")
    return tokens


def parse_curve(text: str, ctx: FieldCtx) -> PlaneCurve:
    """Parse a polynomial in x, y, z with integer coefficients, e.g.
    "x^3 + y^2*z + y*z^2" or "y^2*z - x^3 + x*z^2"."""
    tokens = _tokenize(text)
    if not tokens:
        raise CurveSyntaxError("empty polynomial")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos] if pos < len(tokens) else None
        pos += 1
        return tok

    def parse_factor() -> tuple[int, list[int]]:
        tok = take()
        if isinstance(tok, int):
            return tok, [0, 0, 0]
        if tok in _VARS:
            exps = [0, 0, 0]
            exp = 1
            if peek() == "^":
                take()
                e = take()
                if not isinstance(e, int):
                    raise CurveSyntaxError("exponent must be an integer")
                exp = e
            exps[_VARS[tok]] = exp
            return 1, exps
        raise CurveSyntaxError(f"expected coefficient or variable, got {tok!r}")

    def parse_term() -> tuple[int, Monomial]:
        coeff, exps = parse_factor()
        while peek() == "*":
            take()
            c2, e2 = parse_factor()
            coeff *= c2
            exps = [a + b for a, b in zip(exps, e2)]
        return coeff, tuple(exps)

    monomials: dict[Monomial, int] = {}
    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if take() == "-" else 1
    while True:
        coeff, mono = parse_term()
        monomials[mono] = monomials.get(mono, 0) + sign * coeff
        tok = peek()
        if tok is None:
            break
        if tok not in ("+", "-"):
            raise CurveSyntaxError(f"expected '+' or '-', got {tok!r}")
        sign = -1 if take() == "-" else 1

    degrees = {sum(m) for m in monomials}
    if len(degrees) > 1:
        raise NotHomogeneous(f"mixed total degrees {sorted(degrees)}")
    terms = []
    for mono in sorted(monomials):
        c = ctx.element_from_int(monomials[mono])
        if c != ctx.zero:
            terms.append((mono, c))
    if not terms:
        raise ZeroPolynomial("polynomial vanishes after reduction into the field")
    degree = degrees.pop()
    if degree < 1:
        raise ZeroPolynomial("constant polynomial does not define a curve")
    return PlaneCurve(ctx, degree, tuple(terms))


def _embedded_terms(curve: PlaneCurve, ext: FieldCtx):
    if isinstance(ext, ExtensionField) and ext is not curve.ctx:
        return [(m, ext.embed(c)) for m, c in curve.terms]
    return list(curve.terms)


def count_points(curve: PlaneCurve, i: int, limit: int = DEFAULT_ORDER_LIMIT) -> int:
    """Number of projective points of the plane model over F_{q^i}."""
    if i < 1:
        raise ValueError("extension degree must be >= 1")
    if curve.ctx.order ** i > limit:
        raise TooLarge(f"q^i = {curve.ctx.order ** i} exceeds the limit {limit}")
    ext = curve.ctx.extension(i, limit=limit)
    terms = _embedded_terms(curve, ext)
    elems = list(ext.elements())
    zero = ext.zero
    deg = curve.degree

    # power tables: powers[e][v] = v^e for every element value v
    powers: dict[int, dict] = {0: {v: ext.one for v in elems}}
    for e in range(1, deg + 1):
        prev = powers[e - 1]
        powers[e] = {v: ext.mul(prev[v], v) for v in elems}

    total = 0
    # affine chart z = 1
    for xv in elems:
        partial = [(jy, ext.mul(c, powers[ix][xv])) for (ix, jy, _), c in terms]
        for yv in elems:
            acc = zero
            for jy, cx in partial:
                acc = ext.add(acc, ext.mul(cx, powers[jy][yv]))
            if acc == zero:
                total += 1
    # chart z = 0, y = 1: only terms without z survive
    for xv in elems:
        acc = zero
        for (ix, jy, kz), c in terms:
            if kz == 0:
                acc = ext.add(acc, ext.mul(c, powers[ix][xv]))
        if acc == zero:
            total += 1
    # the point (1 : 0 : 0)
    lead = next((c for (ix, jy, kz), c in terms if jy == 0 and kz == 0), zero)
    if lead == zero:
        total += 1
    return total


def deg2_closed_points(n1: int, n2: int) -> int:
    """Closed points of degree 2 from counts over F_q and F_{q^2}:
    (N2 - N1) / 2.  Valid for smooth models."""
    if n2 < n1:
        raise NegativeDifference(f"N2 = {n2} < N1 = {n1}")
    if (n2 - n1) % 2:
        raise OddDifference(f"N2 - N1 = {n2 - n1} is odd")
    return (n2 - n1) // 2


@dataclass(frozen=True)
class CountProfile:
    """Point counts N_1..N_n of a curve of genus g over F_q, validated
    against the Weil window |N_i - (q^i + 1)| <= 2g*sqrt(q^i)."""

    q: int
    g: int
    counts: tuple[int, ...]
    smooth: bool = True

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(self.counts))
        if self.g < 0:
            raise ValueError("genus must be >= 0")
        for i, n in enumerate(self.counts, start=1):
            if n < 0:
                raise ValueError(f"negative count N{i}")
            # squared integer comparison avoids any irrational arithmetic
            if (self.q ** i + 1 - n) ** 2 > 4 * self.g * self.g * self.q ** i:
                raise ValueError(
                    f"N{i} = {n} outside the Weil window for q={self.q}, g={self.g}"
                )
        if self.smooth and len(self.counts) >= 2:
            n1, n2 = self.counts[0], self.counts[1]
            if n2 < n1:
                raise NegativeDifference(f"N2 = {n2} < N1 = {n1} on a smooth profile")
            if (n2 - n1) % 2:
                raise OddDifference(f"N2 - N1 = {n2 - n1} odd on a smooth profile")


def x_coordinates(profile: CountProfile) -> list[SurdValue]:
    """Normalized coordinates x_i = (q^i + 1 - N_i) / (2g * sqrt(q^i)),
    exact in Q(sqrt(q)): rational for even i, a multiple of sqrt(q) for odd i."""
    q, g = profile.q, profile.g
    if g < 1:
        raise GenusZero("x-coordinates are undefined for genus 0")
    out = []
    for i, n in enumerate(profile.counts, start=1):
        num = Fraction(q ** i + 1 - n, 2 * g)
        if i % 2 == 0:
            out.append(SurdValue(q, num / q ** (i // 2), Fraction(0)))
        else:
            # 1/sqrt(q^i) = sqrt(q)/q^((i+1)/2)
            out.append(SurdValue(q, Fraction(0), num / q ** ((i + 1) // 2)))
    return out


def load_fixtures(path) -> list[dict]:
    """Curve fixture file: one curve per line,
    ``q<TAB>genus<TAB>polynomial<TAB>label``, UTF-8, '#' comments."""
    from .gf import field_for_order

    fixtures = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise CurveSyntaxError(
                    f"{path}:{lineno}: expected 4 tab-separated fields, got {len(parts)}"
                )
            q, genus, poly, label = int(parts[0]), int(parts[1]), parts[2], parts[3]
            ctx = field_for_order(q)
            fixtures.append(
                {
                    "q": q,
                    "genus": genus,
                    "label": label,
                    "polynomial": poly,
                    "curve": parse_curve(poly, ctx),
                }
            )
    return fixtures

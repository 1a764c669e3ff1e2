"""Arithmetic for small finite fields and their extension towers.

Fields are polynomial quotient rings: F_{p^e} = F_p[x]/(m) with m the
lexicographically smallest monic irreducible of degree e, and an extension
F_{q^i} = F_q[t]/(M) is built directly over F_q so that curve coefficients
embed by the constant-polynomial injection (no root finding).

Elements are plain values manipulated through the field context: ints in
0..p-1 for a prime field, fixed-length tuples of base-field elements for an
extension.  Contexts are immutable after construction (the per-context
extension table is a transparent memo) and all element operations are pure,
so everything here is safe to share between threads.

These fields are meant for exhaustive point counting at sizes up to about
2^20 elements; nothing here is suitable for cryptographic use.
"""

from __future__ import annotations

import math
from typing import Iterator, Optional, Union

from .errors import NotPrime, TooLarge

#: largest field order the counting harness will enumerate
DEFAULT_ORDER_LIMIT = 1 << 20

FieldElem = Union[int, tuple]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1 if f == 2 else 2
    return True


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """(p, e) with q = p^e and p prime, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            return (p, e) if m == 1 else None
        p += 1 if p == 2 else 2
    return q, 1


class FieldCtx:
    """Common interface of prime fields and extension fields."""

    order: int
    char: int
    zero: FieldElem
    one: FieldElem

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        raise NotImplementedError

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        raise NotImplementedError

    def neg(self, a: FieldElem) -> FieldElem:
        raise NotImplementedError

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        raise NotImplementedError

    def inv(self, a: FieldElem) -> FieldElem:
        raise NotImplementedError

    def elements(self) -> Iterator[FieldElem]:
        """Every element exactly once, deterministic order, zero first."""
        raise NotImplementedError

    def element_from_int(self, k: int) -> FieldElem:
        """The image of the integer k, i.e. k times the multiplicative unit."""
        raise NotImplementedError

    def pow(self, a: FieldElem, n: int) -> FieldElem:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def extension(self, i: int, limit: int = DEFAULT_ORDER_LIMIT) -> "FieldCtx":
        """Memoized make_extension(self, i)."""
        cache = self.__dict__.setdefault("_ext_cache", {})
        if i not in cache:
            cache[i] = make_extension(self, i, limit=limit)
        return cache[i]


class PrimeField(FieldCtx):
    """F_p with elements the residues 0..p-1."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.order = p
        self.char = p
        self.degree = 1
        self.zero = 0
        self.one = 1 % p
        self.modulus = (0, 1)  # the polynomial x, kept for uniformity

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return iter(range(self.p))

    def element_from_int(self, k):
        return k % self.p

    def __repr__(self):
        return f"GF({self.p})"


class ExtensionField(FieldCtx):
    """base[t]/(modulus) with elements tuples of base elements (low degree
    first, fixed length = extension degree)."""

    def __init__(self, base: FieldCtx, modulus: tuple):
        # modulus is the full monic coefficient tuple over base, low first
        assert modulus[-1] == base.one
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.order = base.order ** self.degree
        self.char = base.char
        self.zero = (base.zero,) * self.degree
        self.one = (base.one,) + (base.zero,) * (self.degree - 1)
        self._base_elems = list(base.elements())

    def embed(self, a: FieldElem) -> tuple:
        """Constant-polynomial injection of a base-field element."""
        return (a,) + (self.base.zero,) * (self.degree - 1)

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        base = self.base
        return tuple(base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        d = self.degree
        prod = [base.zero] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai == base.zero:
                continue
            for j, bj in enumerate(b):
                prod[i + j] = base.add(prod[i + j], base.mul(ai, bj))
        # reduce modulo the monic modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c == base.zero:
                continue
            prod[k] = base.zero
            for j in range(d):
                mj = self.modulus[j]
                if mj != base.zero:
                    prod[k - d + j] = base.sub(prod[k - d + j], base.mul(c, mj))
        return tuple(prod[:d])

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid in base[t] against the modulus
        r0, r1 = list(self.modulus), _poly_trim(self.base, list(a))
        s0, s1 = [self.base.zero], [self.base.one]
        while _poly_deg(self.base, r1) > 0:
            quo, rem = _poly_divmod(self.base, r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(self.base, s0, _poly_mul(self.base, quo, s1))
        if r1 == [self.base.zero] or not r1:
            raise ZeroDivisionError("element not invertible (modulus reducible?)")
        scale = self.base.inv(r1[0])
        out = [self.base.mul(scale, c) for c in s1]
        out = (out + [self.base.zero] * self.degree)[: self.degree]
        return tuple(out)

    def elements(self):
        base_elems = self._base_elems
        m = self.base.order
        for idx in range(self.order):
            digs = []
            v = idx
            for _ in range(self.degree):
                digs.append(base_elems[v % m])
                v //= m
            yield tuple(digs)

    def element_from_int(self, k):
        return self.embed(self.base.element_from_int(k))

    def __repr__(self):
        return f"GF({self.order})[deg {self.degree} over {self.base!r}]"


# -- polynomial helpers over an arbitrary coefficient field -------------------


def _poly_trim(ctx: FieldCtx, f: list) -> list:
    while f and f[-1] == ctx.zero:
        f.pop()
    return f


def _poly_deg(ctx: FieldCtx, f: list) -> int:
    return len(f) - 1


def _poly_sub(ctx: FieldCtx, f: list, g: list) -> list:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else ctx.zero
        b = g[i] if i < len(g) else ctx.zero
        out.append(ctx.sub(a, b))
    return _poly_trim(ctx, out)


def _poly_mul(ctx: FieldCtx, f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [ctx.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == ctx.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return _poly_trim(ctx, out)


def _poly_divmod(ctx: FieldCtx, f: list, g: list) -> tuple[list, list]:
    f = list(f)
    g = _poly_trim(ctx, list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = ctx.inv(g[-1])
    quo = [ctx.zero] * max(len(f) - len(g) + 1, 0)
    while len(_poly_trim(ctx, f)) >= len(g):
        f = _poly_trim(ctx, f)
        shift = len(f) - len(g)
        c = ctx.mul(f[-1], inv_lead)
        quo[shift] = ctx.add(quo[shift], c)
        for i, gc in enumerate(g):
            f[shift + i] = ctx.sub(f[shift + i], ctx.mul(c, gc))
    return _poly_trim(ctx, quo), _poly_trim(ctx, f)


def _poly_gcd(ctx: FieldCtx, f: list, g: list) -> list:
    f = _poly_trim(ctx, list(f))
    g = _poly_trim(ctx, list(g))
    while g:
        _, r = _poly_divmod(ctx, f, g)
        f, g = g, r
    return f


def _poly_powmod(ctx: FieldCtx, f: list, n: int, m: list) -> list:
    result = [ctx.one]
    base = _poly_divmod(ctx, f, m)[1]
    while n:
        if n & 1:
            result = _poly_divmod(ctx, _poly_mul(ctx, result, base), m)[1]
        base = _poly_divmod(ctx, _poly_mul(ctx, base, base), m)[1]
        n >>= 1
    return result


def _is_irreducible(ctx: FieldCtx, f: list) -> bool:
    """f monic over ctx; any reducible f has an irreducible factor of degree
    <= deg(f)/2, detected by gcd(x^(m^k) - x, f)."""
    d = len(f) - 1
    if d == 1:
        return True
    x = [ctx.zero, ctx.one]
    xq = x
    for _ in range(d // 2):
        xq = _poly_powmod(ctx, xq, ctx.order, f)
        g = _poly_gcd(ctx, _poly_sub(ctx, xq, x), f)
        if len(g) - 1 >= 1:
            return False
    return True


def _smallest_irreducible(ctx: FieldCtx, d: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree d over ctx,
    scanning coefficients (c_0, ..., c_{d-1}) with c_0 most significant and
    base elements in enumeration order."""
    elems = list(ctx.elements())
    m = ctx.order
    for idx in range(m ** d):
        coeffs = []
        for pos in range(d):
            coeffs.append(elems[(idx // m ** (d - 1 - pos)) % m])
        cand = coeffs + [ctx.one]
        if _is_irreducible(ctx, cand):
            return tuple(cand)
    raise AssertionError(f"no irreducible of degree {d} found")  # unreachable


def make_field(p: int, e: int, limit: int = DEFAULT_ORDER_LIMIT) -> FieldCtx:
    """F_{p^e} with a deterministically chosen modulus."""
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p ** e > limit:
        raise TooLarge(f"p^e = {p ** e} exceeds the limit {limit}")
    base = PrimeField(p)
    if e == 1:
        return base
    return ExtensionField(base, _smallest_irreducible(base, e))


def make_extension(base: FieldCtx, i: int, limit: int = DEFAULT_ORDER_LIMIT) -> FieldCtx:
    """F_{q^i} over F_q = base, with the constant-polynomial embedding."""
    if i < 1:
        raise ValueError("extension degree must be >= 1")
    if i == 1:
        return base
    if base.order ** i > limit:
        raise TooLarge(f"q^i = {base.order ** i} exceeds the limit {limit}")
    return ExtensionField(base, _smallest_irreducible(base, i))


def field_for_order(q: int, limit: int = DEFAULT_ORDER_LIMIT) -> FieldCtx:
    """F_q for a prime-power order q."""
    pe = prime_power(q)
    if pe is None:
        raise NotPrime(f"{q} is not a prime power")
    return make_field(pe[0], pe[1], limit=limit)

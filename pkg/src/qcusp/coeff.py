"""Truncated p-adic cyclotomic coefficient arithmetic.

Elements live in Z[x]/(Phi_{p^s}(x), p^k) where Phi_{p^s} is the p^s-th
cyclotomic polynomial (s = 0 means Z/p^k), extended by an explicit integer
power-of-p shift so that p may be inverted without leaving exact arithmetic.
A value is p^shift * unit with the unit not divisible by p; this models
elements of O[1/p] for O = Z_p[zeta_{p^s}] at working precision p^k.

Precision bookkeeping: every element carries the number of reliable p-adic
digits of its unit part (at most k). Freshly constructed values have k
digits; aligning shifts t1 < t2 in a sum leaves the result reliable mod
p^(k + t1), and pulling a factor p^j out of a sum costs j digits. Equality
compares normal forms at the shared precision. A value all of whose
reliable digits vanish collapses to the zero element; witnesses of such
losses are kept at the layer that owns them (series deciders), not here.

The pseudo-uniformizer with compatible p-power roots that a perfectoid base
field would provide is not representable at finite cyclotomic depth; p
itself plays that role throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf

from .errors import ContextMismatchError, DepthError, NotInvertibleError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _cyclotomic_p_power(p: int, s: int) -> tuple[int, ...]:
    """Coefficients of Phi_{p^s}(x), ascending degree. Phi_1 := x - 1 for s = 0."""
    if s == 0:
        return (-1, 1)
    step = p ** (s - 1)
    coeffs = [0] * (step * (p - 1) + 1)
    for i in range(p):
        coeffs[i * step] = 1
    return tuple(coeffs)


class RingContext:
    """The ring Z[x]/(Phi_{p^s}(x), p^k), with x a primitive p^s-th root of unity.

    Shareable read-only; the internal power table is filled lazily but never
    changes observable state.
    """

    def __init__(self, p: int, k: int, s: int):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if k < 1:
            raise ValueError(f"precision exponent k must be >= 1, got {k}")
        if not 0 <= s <= 4:
            raise ValueError(f"cyclotomic depth s must be in [0, 4], got {s}")
        self.p = p
        self.k = k
        self.s = s
        self.pk = p**k
        self.modulus = _cyclotomic_p_power(p, s)
        # degree of Phi_{p^s}; 1 when s = 0
        self.phi = 1 if s == 0 else p ** (s - 1) * (p - 1)
        self._xpow: list[tuple[int, ...]] = []  # x^j mod (Phi, p^k), j = phi, phi+1, ...

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RingContext)
            and (self.p, self.k, self.s) == (other.p, other.k, other.s)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.s))

    def __repr__(self) -> str:
        return f"RingContext(p={self.p}, k={self.k}, s={self.s})"

    def xpow(self, j: int) -> tuple[int, ...]:
        """Dense coefficient vector of x^j mod (Phi_{p^s}, p^k), for j >= phi."""
        phi, p, pk = self.phi, self.p, self.pk
        step = 1 if self.s == 0 else p ** (self.s - 1)
        while len(self._xpow) <= j - phi:
            if not self._xpow:
                # x^phi = -(Phi - x^phi): subtract the lower modulus terms
                row = [0] * phi
                for i, c in enumerate(self.modulus[:-1]):
                    row[i] = (-c) % pk
                self._xpow.append(tuple(row))
            else:
                prev = self._xpow[-1]
                row = [0] * phi
                top = prev[phi - 1]
                for i in range(phi - 1):
                    row[i + 1] = prev[i]
                if top:
                    if self.s == 0:
                        row[0] = (row[0] + top) % pk
                    else:
                        for i in range(p - 1):
                            pos = i * step
                            row[pos] = (row[pos] - top) % pk
                self._xpow.append(tuple(row))
        return self._xpow[j - phi]


def new_ring(p: int, k: int, s: int) -> RingContext:
    """Build the coefficient ring context Z[x]/(Phi_{p^s}, p^k)."""
    return RingContext(p, k, s)


def _unit_mul(ctx: RingContext, a: tuple[int, ...], b: tuple[int, ...], modulus: int) -> tuple[int, ...]:
    phi = ctx.phi
    acc = [0] * phi
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            d = i + j
            if d < phi:
                acc[d] += ai * bj
            else:
                row = ctx.xpow(d)
                c = ai * bj
                for t, rt in enumerate(row):
                    if rt:
                        acc[t] += c * rt
    return tuple(v % modulus for v in acc)


def _unit_mul_xpow(ctx: RingContext, a: tuple[int, ...], e: int, modulus: int) -> tuple[int, ...]:
    """a * x^e in the quotient ring; e taken mod the order p^s of x."""
    order = ctx.p**ctx.s
    e %= order
    if e == 0:
        return a
    phi = ctx.phi
    acc = [0] * phi
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        d = i + e
        if d < phi:
            acc[d] += ai
        else:
            for t, rt in enumerate(ctx.xpow(d)):
                if rt:
                    acc[t] += ai * rt
    return tuple(v % modulus for v in acc)


class CycloCoeff:
    """An element p^shift * unit of the fraction ring of Z_p[zeta_{p^s}] mod p^k.

    Normal form: the unit part is either the zero polynomial (then shift = 0
    and prec = k) or not divisible by p, stored canonically mod p^prec where
    prec counts its reliable digits.
    """

    __slots__ = ("ctx", "shift", "unit", "prec")

    def __init__(self, ctx: RingContext, shift: int, unit: tuple[int, ...], prec: int | None = None, *, _normalized: bool = False):
        """Truncating constructor: reduce the raw unit part to `prec` digits,
        then pull its p-content into the shift, spending one digit per pulled
        factor. A value that vanishes at the available precision collapses
        to the zero element."""
        self.ctx = ctx
        if _normalized:
            self.shift = shift
            self.unit = unit
            self.prec = ctx.k if prec is None else prec
            return
        if len(unit) != ctx.phi:
            raise ValueError("unit part has wrong degree for this context")
        prec = ctx.k if prec is None else min(prec, ctx.k)
        if prec <= 0:
            self.shift, self.unit, self.prec = 0, (0,) * ctx.phi, ctx.k
            return
        p = ctx.p
        m = p**prec
        unit = tuple(v % m for v in unit)
        if all(v == 0 for v in unit):
            self.shift, self.unit, self.prec = 0, (0,) * ctx.phi, ctx.k
            return
        while all(v % p == 0 for v in unit):
            unit = tuple(v // p for v in unit)
            shift += 1
            prec -= 1
        self.shift = shift
        self.unit = unit
        self.prec = prec

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx: RingContext) -> "CycloCoeff":
        return cls(ctx, 0, (0,) * ctx.phi, _normalized=True)

    @classmethod
    def one(cls, ctx: RingContext) -> "CycloCoeff":
        return cls.from_int(ctx, 1)

    @classmethod
    def from_int(cls, ctx: RingContext, n: int, shift: int = 0) -> "CycloCoeff":
        """Exact embedding of the integer p^shift * n; the p-content of n is
        extracted before truncation, so e.g. p^k maps to shift k, unit 1."""
        if n == 0:
            return cls.zero(ctx)
        p = ctx.p
        while n % p == 0:
            n //= p
            shift += 1
        poly = (n % ctx.pk,) + (0,) * (ctx.phi - 1)
        return cls(ctx, shift, poly, _normalized=True)

    @classmethod
    def from_poly(cls, ctx: RingContext, coeffs: list[int] | tuple[int, ...], shift: int = 0) -> "CycloCoeff":
        """Exact embedding of p^shift * (c0 + c1 x + ...) for integer ci.

        Integer p-content is extracted before reduction mod (Phi, p^k).
        """
        coeffs = list(coeffs)
        if all(c == 0 for c in coeffs):
            return cls.zero(ctx)
        p = ctx.p
        while all(c % p == 0 for c in coeffs):
            coeffs = [c // p for c in coeffs]
            shift += 1
        acc = [0] * ctx.phi
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            if i < ctx.phi:
                acc[i] += c
            else:
                for t, rt in enumerate(ctx.xpow(i)):
                    acc[t] += c * rt
        return cls(ctx, shift, tuple(acc))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.unit)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        """Equality of normal forms at the shared precision."""
        if isinstance(other, int):
            return self == CycloCoeff.from_int(self.ctx, other)
        if not isinstance(other, CycloCoeff):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.shift != other.shift:
            return False
        m = self.ctx.p ** min(self.prec, other.prec)
        return all((a - b) % m == 0 for a, b in zip(self.unit, other.unit))

    __hash__ = None  # equality at shared precision is not hash-compatible

    def equals_mod(self, other: "CycloCoeff", digits: int) -> bool:
        """Equality of normal forms with at most `digits` unit digits compared."""
        if self.ctx != other.ctx:
            raise ContextMismatchError("cannot compare across contexts")
        if digits <= 0:
            return True
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.shift != other.shift:
            return False
        m = self.ctx.p ** min(digits, self.prec, other.prec)
        return all((a - b) % m == 0 for a, b in zip(self.unit, other.unit))

    def reduce_precision(self, digits: int) -> "CycloCoeff":
        """Forget all but the first `digits` digits of the unit part."""
        if self.is_zero():
            return self
        return CycloCoeff(self.ctx, self.shift, self.unit, min(self.prec, digits))

    # -- arithmetic --------------------------------------------------------

    def _check_ctx(self, other: "CycloCoeff") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other: "CycloCoeff") -> "CycloCoeff":
        self._check_ctx(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        t = min(self.shift, other.shift)
        fa = self.ctx.p ** (self.shift - t)
        fb = self.ctx.p ** (other.shift - t)
        unit = tuple(a * fa + b * fb for a, b in zip(self.unit, other.unit))
        # reliable absolute precision of the sum, re-expressed at shift t
        prec = min(self.shift + self.prec, other.shift + other.prec) - t
        return CycloCoeff(self.ctx, t, unit, prec)

    def __neg__(self) -> "CycloCoeff":
        if self.is_zero():
            return self
        m = self.ctx.p**self.prec
        return CycloCoeff(self.ctx, self.shift, tuple(-v % m for v in self.unit), self.prec, _normalized=True)

    def __sub__(self, other: "CycloCoeff") -> "CycloCoeff":
        return self + (-other)

    def __mul__(self, other: "CycloCoeff") -> "CycloCoeff":
        self._check_ctx(other)
        if self.is_zero() or other.is_zero():
            return CycloCoeff.zero(self.ctx)
        prec = min(self.prec, other.prec)
        unit = _unit_mul(self.ctx, self.unit, other.unit, self.ctx.p**prec)
        return CycloCoeff(self.ctx, self.shift + other.shift, unit, prec)

    def mul_zeta_power(self, n: int, e: int) -> "CycloCoeff":
        """Multiply by zeta_{p^n}^e, the designated primitive p^n-th unit root."""
        if n > self.ctx.s:
            raise DepthError(f"zeta_{{p^{n}}} needs cyclotomic depth {n}, context has s={self.ctx.s}")
        if self.is_zero() or n == 0:
            return self
        exp = (e % self.ctx.p**n) * self.ctx.p ** (self.ctx.s - n)
        unit = _unit_mul_xpow(self.ctx, self.unit, exp, self.ctx.p**self.prec)
        return CycloCoeff(self.ctx, self.shift, unit, self.prec)

    def __pow__(self, n: int) -> "CycloCoeff":
        if n < 0:
            return inv(self) ** (-n)
        result = CycloCoeff.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def p_times(self, t: int) -> "CycloCoeff":
        """Multiply by p^t (t may be negative); exact on the shift."""
        if self.is_zero():
            return self
        return CycloCoeff(self.ctx, self.shift + t, self.unit, self.prec, _normalized=True)

    def __repr__(self) -> str:
        return f"CycloCoeff(shift={self.shift}, unit={self.unit}, prec={self.prec})"


def zeta(ctx: RingContext, n: int) -> CycloCoeff:
    """The primitive p^n-th unit root zeta_{p^n} = x^(p^(s-n)); zeta(ctx, 0) = 1."""
    if n < 0:
        raise ValueError("root-of-unity level must be >= 0")
    if n > ctx.s:
        raise DepthError(f"zeta_{{p^{n}}} needs cyclotomic depth {n}, context has s={ctx.s}")
    if n == 0:
        return CycloCoeff.one(ctx)
    e = ctx.p ** (ctx.s - n)
    poly = [0] * (e + 1)
    poly[e] = 1
    return CycloCoeff.from_poly(ctx, poly)


def arith(a: CycloCoeff, b: CycloCoeff, op: str) -> CycloCoeff:
    """Dispatch add/sub/mul; kept as a named entry point for scripting."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _poly_ext_inverse_mod_p(ctx: RingContext, u: tuple[int, ...]) -> tuple[int, ...]:
    """Inverse of u modulo (Phi_{p^s}, p) by extended Euclid over F_p[x]."""
    p = ctx.p

    def trim(f: list[int]) -> list[int]:
        while f and f[-1] % p == 0:
            f.pop()
        return f

    def polydivmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
        a = [v % p for v in a]
        q = [0] * max(1, len(a) - len(b) + 1)
        lead_inv = pow(b[-1], -1, p)
        while True:
            a = trim(a)
            if len(a) < len(b) or not a:
                break
            d = len(a) - len(b)
            c = (a[-1] * lead_inv) % p
            q[d] = c
            for i, bv in enumerate(b):
                a[i + d] = (a[i + d] - c * bv) % p
        return q, a if a else [0]

    r0 = [v % p for v in ctx.modulus]
    r1 = trim([v % p for v in u])
    if not r1:
        raise NotInvertibleError("unit part is zero mod p")
    t0: list[int] = [0]
    t1: list[int] = [1]
    while len(r1) > 1:
        q, r = polydivmod(r0, r1)
        r0, r1 = r1, trim(r)
        prod = [0] * (len(q) + len(t1))
        for i, qi in enumerate(q):
            if qi:
                for j, tj in enumerate(t1):
                    prod[i + j] = (prod[i + j] + qi * tj) % p
        t_next = [0] * max(len(t0), len(prod))
        for i in range(len(t_next)):
            a = t0[i] if i < len(t0) else 0
            b = prod[i] if i < len(prod) else 0
            t_next[i] = (a - b) % p
        t0, t1 = t1, t_next
        if not r1:
            raise NotInvertibleError("unit part shares a factor with the modulus mod p")
    c_inv = pow(r1[0], -1, p)
    out = [(v * c_inv) % p for v in t1]
    out += [0] * (ctx.phi - len(out))
    return tuple(out[: ctx.phi])


def inv(a: CycloCoeff) -> CycloCoeff:
    """Exact inverse at a's precision, with negated shift; Hensel lift of the
    mod-p inverse. Raises NotInvertibleError when the unit part is zero or a
    zero divisor mod p (equivalently, when val_p(a) - shift is not 0)."""
    ctx = a.ctx
    if a.is_zero():
        raise NotInvertibleError("zero is not invertible")
    v = _poly_ext_inverse_mod_p(ctx, a.unit)
    m = ctx.p**a.prec
    two = (2,) + (0,) * (ctx.phi - 1)
    lifted = 1
    while lifted < a.prec:
        # v <- v*(2 - u*v), doubling the number of correct digits
        uv = _unit_mul(ctx, a.unit, v, m)
        corr = tuple((t - u) % m for t, u in zip(two, uv))
        v = _unit_mul(ctx, v, corr, m)
        lifted *= 2
    check = _unit_mul(ctx, a.unit, v, m)
    if check != (1,) + (0,) * (ctx.phi - 1):
        raise NotInvertibleError("inversion failed; unit part is not a unit")
    return CycloCoeff(ctx, -a.shift, v, a.prec, _normalized=True)


def val_p(a: CycloCoeff) -> Fraction | float:
    """Valuation normalized so val_p(p) = 1; +inf for the zero element.

    For a normalized unit part u the pi-adic valuation (pi = zeta_{p^s} - 1)
    is the order of vanishing of u mod p at x = 1, always < phi(p^s), so the
    reported value is exact at the stored precision.
    """
    if a.is_zero():
        return inf
    ctx = a.ctx
    if ctx.s == 0:
        return Fraction(a.shift)
    p = ctx.p
    # expand u(1 + y) over F_p and find the lowest nonzero power of y
    expanded = [0]
    for c in reversed(a.unit):
        nxt = [0] * (len(expanded) + 1)
        for i, e in enumerate(expanded):
            if e:
                nxt[i] = (nxt[i] + e) % p
                nxt[i + 1] = (nxt[i + 1] + e) % p
        nxt[0] = (nxt[0] + c) % p
        expanded = nxt
    for i, c in enumerate(expanded):
        if c % p:
            return a.shift + Fraction(i, ctx.phi)
    raise AssertionError("normalized unit vanished identically mod p")

"""Sparse Laurent series in q with exponents in Z[1/p].

A FracSeries is a finite map from exponents (rationals whose denominator is
a p-power) to CycloCoeff values, together with three truncation bounds:

* deg_bound: exponents above it are unknown, which is not the same as zero;
* depth_bound: the largest p-power denominator the series may use;
* laurent: whether finitely many negative exponents are permitted.

These model O[[q^(1/p^oo)]][1/p] and its Laurent completion at working
precision. Operation results carry soundly shrunk degree bounds so that a
term the truncation cannot certify is never reported.

Exponents are handled as Fraction values; Fraction normalization makes the
"p does not divide the numerator unless the depth is 0" invariant automatic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, inf

from .coeff import CycloCoeff, RingContext
from .errors import ContextMismatchError, DepthError, DomainError


@dataclass(frozen=True)
class Exponent:
    """A fractional exponent num / p^depth. Convenience input form."""

    num: int
    depth: int = 0

    def as_fraction(self, p: int) -> Fraction:
        if self.depth < 0:
            raise ValueError("exponent depth must be >= 0")
        return Fraction(self.num, p**self.depth)


ExponentLike = "Exponent | Fraction | int | tuple[int, int]"


def as_exponent(m, p: int) -> Fraction:
    """Coerce an exponent-like value to a Fraction with p-power denominator."""
    if isinstance(m, Exponent):
        return m.as_fraction(p)
    if isinstance(m, tuple):
        return Exponent(*m).as_fraction(p)
    f = Fraction(m)
    exponent_depth(f, p)  # validates the denominator
    return f


def exponent_depth(m: Fraction, p: int) -> int:
    """The depth r of m = num / p^r in lowest terms; rejects other denominators."""
    den = m.denominator
    r = 0
    while den > 1:
        den, rem = divmod(den, p)
        if rem:
            raise DomainError(f"exponent {m} does not have a p-power denominator (p={p})")
        r += 1
    return r


class FracSeries:
    """Finite q-expansion with fractional exponents and truncation bounds.

    Immutable after construction; do not mutate the returned term maps.
    """

    __slots__ = ("ctx", "_terms", "deg_bound", "depth_bound", "laurent")

    def __init__(
        self,
        ctx: RingContext,
        terms: dict[Fraction, CycloCoeff],
        deg_bound,
        depth_bound: int,
        laurent: bool,
        *,
        _trusted: bool = False,
    ):
        self.ctx = ctx
        self.deg_bound = deg_bound if deg_bound == inf else Fraction(deg_bound)
        self.depth_bound = depth_bound
        self.laurent = laurent
        if _trusted:
            self._terms = terms
            return
        clean: dict[Fraction, CycloCoeff] = {}
        for m, c in terms.items():
            if c.ctx != ctx:
                raise ContextMismatchError("coefficient context differs from series context")
            if c.is_zero():
                continue
            r = exponent_depth(m, ctx.p)
            if r > depth_bound:
                raise DepthError(f"exponent {m} has depth {r} > depth bound {depth_bound}")
            if m > self.deg_bound:
                raise DomainError(f"exponent {m} exceeds degree bound {self.deg_bound}")
            if m < 0 and not laurent:
                raise DomainError(f"negative exponent {m} in a non-Laurent series")
            clean[m] = c
        self._terms = dict(sorted(clean.items()))

    # -- inspection --------------------------------------------------------

    def items(self) -> list[tuple[Fraction, CycloCoeff]]:
        """Terms in increasing exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, m) -> CycloCoeff:
        key = as_exponent(m, self.ctx.p)
        return self._terms.get(key, CycloCoeff.zero(self.ctx))

    def exponents(self) -> list[Fraction]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> Fraction | None:
        return min(self._terms) if self._terms else None

    def max_depth(self) -> int:
        """Largest denominator depth among stored terms; 0 for the zero series."""
        p = self.ctx.p
        return max((exponent_depth(m, p) for m in self._terms), default=0)

    def __eq__(self, other: object) -> bool:
        """Equality of term maps; coefficients compare at shared precision.
        The truncation bounds are knowledge metadata, not part of the value."""
        if not isinstance(other, FracSeries):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"({c!r})*q^{m}" for m, c in self.items()) or "0"
        return f"FracSeries({body}; deg<={self.deg_bound}, depth<={self.depth_bound}, laurent={self.laurent})"

    def equals_mod(self, other: "FracSeries", digits: int) -> bool:
        """Termwise coefficient equality after re-truncation to `digits`."""
        if self.ctx != other.ctx:
            raise ContextMismatchError("cannot compare across contexts")
        keys = set(self._terms) | set(other._terms)
        zero = CycloCoeff.zero(self.ctx)
        for m in keys:
            a = self._terms.get(m, zero)
            b = other._terms.get(m, zero)
            if not a.equals_mod(b, digits):
                return False
        return True

    # -- ring operations ---------------------------------------------------

    def _check_ctx(self, other: "FracSeries") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatchError("series contexts differ")

    def __add__(self, other: "FracSeries") -> "FracSeries":
        self._check_ctx(other)
        deg = min(self.deg_bound, other.deg_bound)
        depth = max(self.depth_bound, other.depth_bound)
        out: dict[Fraction, CycloCoeff] = {}
        for m, c in self._terms.items():
            if m <= deg:
                out[m] = c
        for m, c in other._terms.items():
            if m > deg:
                continue
            s = out[m] + c if m in out else c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return FracSeries(
            self.ctx, dict(sorted(out.items())), deg, depth,
            self.laurent or other.laurent, _trusted=True,
        )

    def __neg__(self) -> "FracSeries":
        return FracSeries(
            self.ctx, {m: -c for m, c in self._terms.items()},
            self.deg_bound, self.depth_bound, self.laurent, _trusted=True,
        )

    def __sub__(self, other: "FracSeries") -> "FracSeries":
        return self + (-other)

    def __mul__(self, other: "FracSeries") -> "FracSeries":
        self._check_ctx(other)
        deg = _mul_deg_bound(self, other)
        depth = max(self.depth_bound, other.depth_bound)
        out: dict[Fraction, CycloCoeff] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 + m2
                if m > deg:
                    continue
                c = c1 * c2
                if m in out:
                    c = out[m] + c
                if c.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = c
        return FracSeries(
            self.ctx, dict(sorted(out.items())), deg, depth,
            self.laurent or other.laurent, _trusted=True,
        )

    def scale(self, c: CycloCoeff) -> "FracSeries":
        """Multiply every coefficient by c."""
        if c.ctx != self.ctx:
            raise ContextMismatchError("scalar context differs")
        out = {}
        for m, v in self._terms.items():
            w = v * c
            if not w.is_zero():
                out[m] = w
        return FracSeries(self.ctx, out, self.deg_bound, self.depth_bound, self.laurent, _trusted=True)

    def p_times(self, t: int) -> "FracSeries":
        """Multiply by p^t, exactly, via the coefficient shifts."""
        return FracSeries(
            self.ctx, {m: c.p_times(t) for m, c in self._terms.items()},
            self.deg_bound, self.depth_bound, self.laurent, _trusted=True,
        )

    def truncate_degree(self, new_deg) -> "FracSeries":
        """Forget all terms above new_deg and lower the degree bound."""
        deg = min(self.deg_bound, new_deg if new_deg == inf else Fraction(new_deg))
        out = {m: c for m, c in self._terms.items() if m <= deg}
        return FracSeries(self.ctx, out, deg, self.depth_bound, self.laurent, _trusted=True)


def _mul_deg_bound(f: FracSeries, g: FracSeries):
    """Sound degree bound for f*g: the unknown tail of one factor first meets
    the smallest known exponent of the other at deg + min-exponent."""
    if f.deg_bound == inf and g.deg_bound == inf:
        return inf
    mf = f.min_exponent()
    mg = g.min_exponent()
    mf = f.deg_bound if mf is None else min(mf, f.deg_bound)
    mg = g.deg_bound if mg is None else min(mg, g.deg_bound)
    left = inf if f.deg_bound == inf else f.deg_bound + mg
    right = inf if g.deg_bound == inf else g.deg_bound + mf
    return min(left, right)


# -- constructors ------------------------------------------------------------


def from_terms(ctx: RingContext, pairs, deg_bound, depth_bound: int, laurent: bool = False) -> FracSeries:
    """Build a normalized series from (exponent, coefficient) pairs.

    Exponents may be Exponent, Fraction, int, or (num, depth) tuples.
    Coefficients may be CycloCoeff or int. Duplicate exponents after
    normalization are an error; zero coefficients are dropped.
    """
    terms: dict[Fraction, CycloCoeff] = {}
    for m, c in pairs:
        key = as_exponent(m, ctx.p)
        if key in terms:
            raise DomainError(f"duplicate exponent {key}")
        if isinstance(c, int):
            c = CycloCoeff.from_int(ctx, c)
        terms[key] = c
    return FracSeries(ctx, terms, deg_bound, depth_bound, laurent)


def zero_series(ctx: RingContext, deg_bound, depth_bound: int, laurent: bool = False) -> FracSeries:
    return FracSeries(ctx, {}, deg_bound, depth_bound, laurent, _trusted=True)


def monomial(ctx: RingContext, m, c=1, *, deg_bound=None, depth_bound=None, laurent=None) -> FracSeries:
    key = as_exponent(m, ctx.p)
    r = exponent_depth(key, ctx.p)
    return from_terms(
        ctx, [(key, c)],
        key if deg_bound is None else deg_bound,
        r if depth_bound is None else depth_bound,
        (key < 0) if laurent is None else laurent,
    )


# -- substitution, twisting, composition -------------------------------------


def substitute_power(f: FracSeries, j: int) -> FracSeries:
    """Substitute q -> q^j for j a power of p: exponents and the degree bound
    scale by j and denominator depths drop accordingly."""
    p = f.ctx.p
    jj = j
    while jj > 1 and jj % p == 0:
        jj //= p
    if jj != 1 or j < 1:
        raise DomainError(f"substitution power {j} is not a power of p={p}")
    terms = {m * j: c for m, c in f._terms.items()}
    deg = inf if f.deg_bound == inf else f.deg_bound * j
    return FracSeries(f.ctx, terms, deg, f.depth_bound, f.laurent, _trusted=True)


def scale_exponents(f: FracSeries, e: int) -> FracSeries:
    """Substitute q -> q^e for e >= 1 prime to p; depths are unchanged."""
    if e < 1 or e % f.ctx.p == 0:
        raise DomainError(f"exponent scale {e} must be positive and prime to p={f.ctx.p}")
    terms = {m * e: c for m, c in f._terms.items()}
    deg = inf if f.deg_bound == inf else f.deg_bound * e
    return FracSeries(f.ctx, terms, deg, f.depth_bound, f.laurent, _trusted=True)


def twist(f: FracSeries, h: int, e: int = 1) -> FracSeries:
    """The automorphism q^(1/p^n) -> zeta_{p^n}^(h/e) q^(1/p^n).

    The coefficient at exponent m = j/p^r (lowest terms) is multiplied by
    zeta_{p^r}^((h/e mod p^r) * j). Depth r = 0 terms are fixed. Requires
    cyclotomic depth s >= every stored depth and e prime to p.
    """
    ctx = f.ctx
    p = ctx.p
    if e % p == 0 or e < 1:
        raise DomainError(f"twist denominator e={e} must be positive and prime to p={p}")
    need = f.max_depth()
    if need > ctx.s:
        raise DepthError(f"twist needs cyclotomic depth {need}, context has s={ctx.s}")
    out: dict[Fraction, CycloCoeff] = {}
    for m, c in f._terms.items():
        r = exponent_depth(m, p)
        if r == 0:
            out[m] = c
            continue
        pr = p**r
        h_eff = (h * pow(e, -1, pr)) % pr
        out[m] = c.mul_zeta_power(r, (h_eff * m.numerator) % pr)
    return FracSeries(ctx, out, f.deg_bound, f.depth_bound, f.laurent, _trusted=True)


def compose(f: FracSeries, g: FracSeries) -> FracSeries:
    """Substitute g into f. Requires integer exponents on f, and strictly
    positive integer exponents on g."""
    f._check_ctx(g)
    if f.max_depth() != 0 or any(m < 0 for m in f._terms):
        raise DomainError("compose requires nonnegative integer exponents on the outer series")
    if g.max_depth() != 0 or any(m <= 0 for m in g._terms):
        raise DomainError("inner series must have strictly positive integer exponents")
    deg = min(f.deg_bound, g.deg_bound)
    acc = zero_series(f.ctx, deg, max(f.depth_bound, g.depth_bound), f.laurent or g.laurent)
    gp = from_terms(f.ctx, [(0, 1)], deg, 0)  # g^0
    power = 0
    for m, c in f.items():
        n = int(m)
        while power < n:
            gp = gp * g
            gp = gp.truncate_degree(deg)
            power += 1
        acc = acc + gp.scale(c)
    return acc


def revert(f: FracSeries) -> FracSeries:
    """Compositional inverse of f = c1 q + O(q^2) with c1 a unit, by exact
    term-by-term back-substitution; compose(f, revert(f)) = q up to deg_bound."""
    from .coeff import inv as coeff_inv

    ctx = f.ctx
    if f.max_depth() != 0 or any(m < 0 for m in f._terms):
        raise DomainError("reversion is defined on the integer-exponent subring")
    if not f.coefficient(0).is_zero():
        raise DomainError("reversion requires zero constant term")
    c1 = f.coefficient(1)
    if c1.shift != 0:
        from .errors import NotInvertibleError

        raise NotInvertibleError("reversion requires a unit linear coefficient")
    c1_inv = coeff_inv(c1)  # raises NotInvertibleError for a ramified non-unit
    if f.deg_bound == inf:
        raise DomainError("reversion needs a finite degree bound")
    degree = int(f.deg_bound)
    g_terms: dict[Fraction, CycloCoeff] = {Fraction(1): c1_inv}
    for d in range(2, degree + 1):
        g = FracSeries(ctx, g_terms, Fraction(d), 0, False, _trusted=True)
        err = compose(f.truncate_degree(d), g).coefficient(d)
        b = -(err * c1_inv)
        if not b.is_zero():
            g_terms[Fraction(d)] = b
    return FracSeries(ctx, g_terms, f.deg_bound, 0, False, _trusted=True)


# -- families ----------------------------------------------------------------


class FamilySeries:
    """A continuous map (Z/p^m)^x -> series, given on residue representatives.

    Models level-Gamma_1 data as one expansion per unit residue class.
    """

    __slots__ = ("level", "values")

    def __init__(self, level: int, values: dict[int, FracSeries]):
        if level < 0:
            raise ValueError("family level must be >= 0")
        self.level = level
        if not values:
            raise ValueError("family must have at least one member")
        some = next(iter(values.values()))
        pm = some.ctx.p**level
        norm: dict[int, FracSeries] = {}
        for a, f in values.items():
            if f.ctx != some.ctx:
                raise ContextMismatchError("family members share one context")
            if (f.deg_bound, f.depth_bound, f.laurent) != (some.deg_bound, some.depth_bound, some.laurent):
                raise DomainError("family members share bounds")
            key = a % pm
            if level > 0 and gcd(key, some.ctx.p) != 1:
                raise DomainError(f"residue {a} is not a unit mod p^{level}")
            if key in norm:
                raise DomainError(f"duplicate residue class {key}")
            norm[key] = f
        expected = [a for a in range(pm)] if level == 0 else [a for a in range(pm) if gcd(a, some.ctx.p) == 1]
        if sorted(norm) != expected:
            raise DomainError("family must cover every unit residue class")
        self.level = level
        self.values = dict(sorted(norm.items()))

    def members(self) -> list[tuple[int, FracSeries]]:
        return sorted(self.values.items())

    def translate(self, a: int) -> "FamilySeries":
        """Precompose the residue labels with multiplication by the unit a."""
        some = next(iter(self.values.values()))
        pm = some.ctx.p**self.level
        if self.level > 0 and gcd(a, some.ctx.p) != 1:
            raise DomainError("translation requires a unit")
        return FamilySeries(self.level, {(a * b) % pm if self.level else b: f for b, f in self.values.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FamilySeries):
            return NotImplemented
        return self.level == other.level and self.values == other.values

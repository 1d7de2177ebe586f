"""The j-invariant q-expansion, its compositional inverse, and conversion
from j-values to Tate parameters.

Series generation runs over arbitrary-precision integers and is reduced
into the coefficient context at the end, so no p-adic truncation can
corrupt high coefficients. The route chosen for j is E4^3 / Delta with

    Delta = q * prod_{n>=1} (1 - q^n)^24,
    E4    = 1 + 240 * sum_{n>=1} sigma_3(n) q^n,

anchored by the classical leading coefficients 1, 744, 196884.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import CycloCoeff, RingContext, val_p
from .errors import DomainError
from .series import FracSeries, from_terms

# -- exact integer Taylor series helpers (dense lists, index = exponent) ------


def _int_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """Product of two integer series through degree n."""
    out = [0] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: n + 1 - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def _int_inverse(a: list[int], n: int) -> list[int]:
    """Inverse of a series with a[0] = +-1, through degree n."""
    if a[0] not in (1, -1):
        raise DomainError("integer series inversion needs a unit constant term")
    out = [0] * (n + 1)
    out[0] = a[0]
    for d in range(1, n + 1):
        acc = 0
        for i in range(1, d + 1):
            ai = a[i] if i < len(a) else 0
            acc += ai * out[d - i]
        out[d] = -a[0] * acc
    return out


def eta_power24(n: int) -> list[int]:
    """prod_{m>=1} (1 - q^m)^24 through degree n, via Euler's pentagonal
    series for prod (1 - q^m) followed by squarings."""
    euler = [0] * (n + 1)
    j = 0
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 > n and g2 > n and j > 0:
            break
        sign = -1 if j % 2 else 1
        if g1 <= n:
            euler[g1] += sign
        if j > 0 and g2 <= n:
            euler[g2] += sign
        j += 1
    e2 = _int_mul(euler, euler, n)
    e4 = _int_mul(e2, e2, n)
    e8 = _int_mul(e4, e4, n)
    e16 = _int_mul(e8, e8, n)
    return _int_mul(e16, e8, n)


def delta_coefficients(n: int) -> list[int]:
    """tau(1), ..., tau(n): Delta = sum_{m>=1} tau(m) q^m, returned so that
    index i holds the coefficient of q^(i+1)."""
    body = eta_power24(n - 1)
    return body[:n]


def eisenstein4_coefficients(n: int) -> list[int]:
    """E4 through degree n: 1 + 240 sum sigma_3(m) q^m."""
    out = [0] * (n + 1)
    out[0] = 1
    for d in range(1, n + 1):
        sigma3 = sum(e**3 for e in range(1, d + 1) if d % e == 0)
        out[d] = 240 * sigma3
    return out


def j_coefficients(n_terms: int) -> list[int]:
    """Laurent coefficients of j from q^(-1) through q^(n_terms): the list
    starts [1, 744, 196884, ...] with index i holding the q^(i-1) coefficient."""
    if n_terms < 1:
        raise ValueError("need at least one term")
    n = n_terms + 1
    e4 = eisenstein4_coefficients(n)
    e4cubed = _int_mul(_int_mul(e4, e4, n), e4, n)
    eta24_inv = _int_inverse(eta_power24(n), n)
    # j = E4^3 / (q * eta24) = q^(-1) * (E4^3 * eta24^(-1))
    return _int_mul(e4cubed, eta24_inv, n)


def _reduce_int_series(ctx: RingContext, coeffs: list[int], first_exponent: int, laurent: bool) -> FracSeries:
    pairs = []
    for i, c in enumerate(coeffs):
        if c:
            pairs.append((first_exponent + i, CycloCoeff.from_int(ctx, c)))
    deg = first_exponent + len(coeffs) - 1
    return from_terms(ctx, pairs, deg, 0, laurent)


def j_series(ctx: RingContext, terms: int) -> FracSeries:
    """The j-expansion q^(-1) + 744 + 196884 q + ... through q^terms,
    computed over Z and reduced into ctx."""
    coeffs = j_coefficients(terms)
    if coeffs[0] != 1 or coeffs[1] != 744:
        raise AssertionError("j-series generation lost its leading terms")
    return _reduce_int_series(ctx, coeffs, -1, laurent=True)


def delta_series(ctx: RingContext, terms: int) -> FracSeries:
    """Delta = q - 24 q^2 + 252 q^3 - ... through q^terms."""
    return _reduce_int_series(ctx, [0] + delta_coefficients(terms), 0, laurent=False)


def eisenstein4_series(ctx: RingContext, terms: int) -> FracSeries:
    """E4 through q^terms."""
    return _reduce_int_series(ctx, eisenstein4_coefficients(terms), 0, laurent=False)


def one_over_j_coefficients(n_terms: int) -> list[int]:
    """1/j = q - 744 q^2 + 356652 q^3 - ... through q^n_terms; index i holds
    the q^(i+1) coefficient."""
    jc = j_coefficients(n_terms)
    return _int_inverse(jc, n_terms - 1)


def j_inverse_coefficients(n_terms: int) -> list[int]:
    """Coefficients b_1, ..., b_n of the reversion q(w) = w + 744 w^2 + ...
    of 1/j, solved exactly over Z by term-by-term back-substitution."""
    u = one_over_j_coefficients(n_terms)  # u[i] = coeff of q^(i+1) in 1/j
    b = [0] * (n_terms + 1)  # b[d] = coeff of w^d in q(w)
    b[1] = u[0]  # u starts q + ..., so this is 1
    for d in range(2, n_terms + 1):
        # coefficient of w^d in u(g) where g = sum b_i w^i known below d
        gpow = [0] * (d + 1)
        gpow[0] = 1
        acc = 0
        for i in range(1, d + 1):
            gpow = _int_mul(gpow, b[: d + 1], d)
            if i - 1 < len(u):
                acc += u[i - 1] * gpow[d]
        b[d] = -acc
    return b[1:]


def j_inverse_series(ctx: RingContext, terms: int) -> FracSeries:
    """The reversion q(w) in Z[[w]] with 1/j(q(w)) = w + O(w^(terms+1)),
    reduced into ctx. The variable of the returned series is w = 1/j."""
    coeffs = j_inverse_coefficients(terms)
    return _reduce_int_series(ctx, [0] + coeffs, 0, laurent=False)


def tate_parameter_from_j(jval: CycloCoeff) -> CycloCoeff:
    """The Tate parameter q_E with j(q_E) = jval, for |jval| > 1.

    Evaluates the reversion series at w = 1/jval; the series converges
    because val_p(w) > 0, and summation stops once the tail falls below the
    representable precision. val_p(result) = -val_p(jval).
    """
    ctx = jval.ctx
    v = val_p(jval)
    if not (isinstance(v, Fraction) and v < 0):
        raise DomainError("Tate parameter needs val_p(j) < 0; this point is not on a parameter disc")
    from .coeff import inv as coeff_inv

    w = coeff_inv(jval)
    vw = -v
    # terms beyond n_max have valuation >= (n_max+1)*vw >= vw + k
    n_max = int(Fraction(ctx.k) / vw) + 1
    coeffs = j_inverse_coefficients(n_max)
    acc = CycloCoeff.zero(ctx)
    wp = CycloCoeff.one(ctx)
    for b in coeffs:
        wp = wp * w
        if b:
            acc = acc + CycloCoeff.from_int(ctx, b) * wp
    if val_p(acc) != vw:
        raise AssertionError("Tate parameter lost its leading valuation")
    return acc

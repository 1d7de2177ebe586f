from fractions import Fraction

import pytest

from qcusp.coeff import CycloCoeff, new_ring, zeta
from qcusp.errors import DepthError, DomainError, NotInvertibleError
from qcusp.series import (
    Exponent,
    FamilySeries,
    compose,
    from_terms,
    monomial,
    revert,
    scale_exponents,
    substitute_power,
    twist,
    zero_series,
)

from conftest import random_series

CTX = new_ring(2, 6, 3)


def test_from_terms_normalization():
    f = from_terms(CTX, [(Fraction(2, 4), 5)], 1, 2)
    assert f.exponents() == [Fraction(1, 2)]
    g = from_terms(CTX, [(Exponent(2, 2), 5)], 1, 2)
    assert g == f
    assert from_terms(CTX, [], 3, 1).is_zero()
    m = from_terms(CTX, [((1, 1), 1)], 1, 1)
    assert m.exponents() == [Fraction(1, 2)]


def test_from_terms_rejections():
    with pytest.raises(DomainError):
        from_terms(CTX, [(Fraction(1, 2), 1), (Fraction(2, 4), 3)], 1, 1)
    with pytest.raises(DepthError):
        from_terms(CTX, [(Fraction(1, 4), 1)], 1, 1)
    with pytest.raises(DomainError):
        from_terms(CTX, [(-1, 1)], 1, 0, laurent=False)
    with pytest.raises(DomainError):
        from_terms(CTX, [(5, 1)], 4, 0)
    ctx3 = new_ring(3, 4, 1)
    with pytest.raises(Exception):
        from_terms(CTX, [(1, CycloCoeff.one(ctx3))], 2, 0)


def test_zero_coefficients_dropped():
    f = from_terms(CTX, [(1, 0), (2, 5)], 3, 0)
    assert f.exponents() == [Fraction(2)]


def test_monomial_multiplication():
    h = monomial(CTX, Fraction(1, 2), deg_bound=2, depth_bound=1)
    assert (h * h).exponents() == [Fraction(1)]
    assert (h * h).coefficient(1) == CycloCoeff.one(CTX)


def test_laurent_add():
    a = from_terms(CTX, [(-1, 1), (0, 744)], 3, 0, laurent=True)
    b = from_terms(CTX, [(0, -744)], 3, 0)
    assert (a + b).items() == [(Fraction(-1), CycloCoeff.one(CTX))]


def test_truncated_geometric_product():
    # (1 - q)(1 + q + ... + q^D) = 1 - q^(D+1), and the bound hides the tail
    D = 6
    lhs = from_terms(CTX, [(0, 1), (1, -1)], D, 0)
    rhs = from_terms(CTX, [(i, 1) for i in range(D + 1)], D, 0)
    prod = lhs * rhs
    assert prod.items() == [(Fraction(0), CycloCoeff.one(CTX))]
    assert prod.deg_bound == Fraction(D)


def test_mul_degree_bound_shrinks_soundly():
    f = from_terms(CTX, [(2, 1)], 10, 0)
    g = from_terms(CTX, [(3, 1)], 4, 0)
    assert (f * g).deg_bound == Fraction(4 + 2)
    lau = from_terms(CTX, [(-1, 1)], 5, 0, laurent=True)
    assert (f * lau).deg_bound == Fraction(5 + 2)


def test_ring_axioms_random(rng):
    for _ in range(25):
        a = random_series(rng, CTX, 3, 3)
        b = random_series(rng, CTX, 3, 3)
        c = random_series(rng, CTX, 2, 3)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert ((a * b) * c) == (a * (b * c))
        lhs = a * (b + c)
        rhs = a * b + a * c
        assert lhs.equals_mod(rhs, CTX.k)


def test_substitute_power():
    assert substitute_power(monomial(CTX, Fraction(1, 2), deg_bound=1, depth_bound=1), 2) == monomial(CTX, 1, deg_bound=2, depth_bound=1)
    z = zero_series(CTX, 3, 2)
    assert substitute_power(z, 4).is_zero()
    with pytest.raises(DomainError):
        substitute_power(z, 3)
    with pytest.raises(DomainError):
        substitute_power(z, 0)


def test_substitute_power_tower(rng):
    for _ in range(10):
        f = random_series(rng, CTX, 3, 3)
        assert substitute_power(substitute_power(f, 2), 2) == substitute_power(f, 4)


def test_substitute_power_is_ring_hom(rng):
    for _ in range(10):
        f = random_series(rng, CTX, 2, 2)
        g = random_series(rng, CTX, 2, 2)
        assert substitute_power(f * g, 2).equals_mod(substitute_power(f, 2) * substitute_power(g, 2), CTX.k)
        assert substitute_power(f + g, 2) == substitute_power(f, 2) + substitute_power(g, 2)


def test_twist_fixed_on_integer_exponents():
    q = monomial(CTX, 1, deg_bound=2, depth_bound=0)
    for h in (0, 1, 5, -3):
        assert twist(q, h, 1) == q


def test_twist_basic_value():
    # q^(1/p) picks up the primitive p-th unit root
    f = monomial(CTX, Fraction(1, 2), deg_bound=1, depth_bound=3)
    assert twist(f, 1, 1).coefficient(Fraction(1, 2)) == zeta(CTX, 1)
    assert twist(f, 0, 1) == f


def test_twist_uses_e_inverse():
    ctx = new_ring(3, 5, 2)
    f = monomial(ctx, Fraction(1, 9), deg_bound=1, depth_bound=2)
    # h/e = 1/2 = 5 mod 9
    expected = f.scale(zeta(ctx, 2) ** 5)
    assert twist(f, 1, 2) == expected


def test_twist_is_ring_automorphism(rng):
    for _ in range(15):
        f = random_series(rng, CTX, 3, 3)
        g = random_series(rng, CTX, 3, 3)
        h = rng.randrange(-8, 9)
        assert twist(f * g, h, 1) == twist(f, h, 1) * twist(g, h, 1)
        assert twist(f + g, h, 1) == twist(f, h, 1) + twist(g, h, 1)
        assert twist(twist(f, h, 1), -h, 1) == f


def test_twist_character_additive():
    # chi_h(m1 + m2) = chi_h(m1) chi_h(m2) on monomials
    for m1, m2 in ((Fraction(1, 4), Fraction(3, 8)), (Fraction(1, 2), Fraction(1, 2)), (Fraction(3, 4), Fraction(1, 8))):
        a = monomial(CTX, m1, deg_bound=2, depth_bound=3)
        b = monomial(CTX, m2, deg_bound=2, depth_bound=3)
        assert twist(a * b, 3, 1) == twist(a, 3, 1) * twist(b, 3, 1)


def test_twist_depth_guard():
    ctx = new_ring(2, 6, 1)
    f = monomial(ctx, Fraction(1, 4), deg_bound=1, depth_bound=2)
    with pytest.raises(DepthError):
        twist(f, 1, 1)
    with pytest.raises(DomainError):
        twist(monomial(ctx, Fraction(1, 2), deg_bound=1, depth_bound=1), 1, 2)


def test_revert_identity_and_catalan():
    ctx = new_ring(7, 8, 0)
    assert revert(monomial(ctx, 1, deg_bound=5, depth_bound=0)) == monomial(ctx, 1, deg_bound=5, depth_bound=0)
    f = from_terms(ctx, [(1, 1), (2, 1)], 6, 0)
    g = revert(f)
    expected = [1, -1, 2, -5, 14, -42]  # signed Catalan numbers
    for i, c in enumerate(expected, start=1):
        assert g.coefficient(i) == CycloCoeff.from_int(ctx, c)
    q = monomial(ctx, 1, deg_bound=6, depth_bound=0)
    assert compose(f, g) == q
    assert compose(g, f) == q


def test_revert_rejections():
    ctx = new_ring(7, 8, 0)
    with pytest.raises(NotInvertibleError):
        revert(from_terms(ctx, [(1, 7), (2, 1)], 4, 0))
    with pytest.raises(DomainError):
        revert(from_terms(ctx, [(Fraction(1, 7), 1)], 4, 1))
    with pytest.raises(DomainError):
        revert(from_terms(ctx, [(0, 1), (1, 1)], 4, 0))


def test_compose_rejects_bad_inner():
    ctx = new_ring(7, 8, 0)
    f = monomial(ctx, 2, deg_bound=4, depth_bound=0)
    with pytest.raises(DomainError):
        compose(f, from_terms(ctx, [(0, 1), (1, 1)], 4, 0))


def test_revert_random_roundtrip(rng):
    ctx = new_ring(5, 6, 0)
    for _ in range(10):
        terms = [(1, 1 + 5 * rng.randrange(5))]
        for d in range(2, 6):
            terms.append((d, rng.randrange(25)))
        f = from_terms(ctx, terms, 5, 0)
        g = revert(f)
        assert compose(f, g) == monomial(ctx, 1, deg_bound=5, depth_bound=0)
        assert compose(g, f) == monomial(ctx, 1, deg_bound=5, depth_bound=0)


def test_scale_exponents():
    a = from_terms(CTX, [(-1, 1), (0, 744)], 3, 0, laurent=True)
    assert scale_exponents(a, 3).exponents() == [Fraction(-3), Fraction(0)]
    assert scale_exponents(monomial(CTX, Fraction(1, 2), deg_bound=1, depth_bound=1), 3).exponents() == [Fraction(3, 2)]
    with pytest.raises(DomainError):
        scale_exponents(a, 2)


def test_truncate_degree_forgets():
    f = from_terms(CTX, [(1, 1), (3, 1)], 5, 0)
    t = f.truncate_degree(2)
    assert t.exponents() == [Fraction(1)]
    assert t.deg_bound == Fraction(2)


def test_family_validation():
    f = monomial(CTX, 1, deg_bound=3, depth_bound=2)
    g = monomial(CTX, Fraction(1, 2), deg_bound=3, depth_bound=2)
    fam = FamilySeries(2, {1: f, 3: g})
    assert fam.members()[0][0] == 1
    with pytest.raises(DomainError):
        FamilySeries(2, {1: f})
    with pytest.raises(DomainError):
        FamilySeries(1, {0: f})
    assert fam.translate(3).values[3] == f


def test_equality_ignores_bounds():
    a = from_terms(CTX, [(1, 5)], 3, 0)
    b = from_terms(CTX, [(1, 5)], 7, 2)
    assert a == b

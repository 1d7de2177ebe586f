from fractions import Fraction

import pytest

from qcusp.coeff import CycloCoeff, new_ring
from qcusp.errors import DomainError
from qcusp.modular import delta_series, eisenstein4_series, j_series
from qcusp.principles import (
    Verdict,
    detect_level,
    extends_to_cusp,
    family_decide,
    is_integral,
    zero_test,
)
from qcusp.series import FamilySeries, from_terms, monomial, twist
from qcusp.trace import tate_trace

from conftest import random_series

CTX = new_ring(2, 6, 3)


def test_extends_rejects_pole():
    j = j_series(CTX, 6)
    v = extends_to_cusp(j)
    assert v.verdict is Verdict.NO
    assert v.witness[0] == Fraction(-1)
    assert v.witness[1] == CycloCoeff.one(CTX)


def test_extends_accepts_delta():
    assert extends_to_cusp(delta_series(CTX, 8)).verdict is Verdict.YES


def test_extends_vanishing_pole_passes_with_note():
    f = from_terms(CTX, [(-1, CycloCoeff.from_int(CTX, 2**6))], 2, 0, laurent=True)
    v = extends_to_cusp(f)
    assert v.verdict is Verdict.YES
    assert "vanish at precision" in v.note


def test_extends_closed_under_product(rng):
    for _ in range(10):
        f = random_series(rng, CTX, 3, 2)
        g = random_series(rng, CTX, 3, 2)
        assert extends_to_cusp(f).verdict is Verdict.YES
        assert extends_to_cusp(g).verdict is Verdict.YES
        assert extends_to_cusp(f * g).verdict is Verdict.YES


def test_detect_level_examples():
    assert detect_level(from_terms(CTX, [(1, 1), (2, 1)], 3, 0)) == 0
    assert detect_level(from_terms(CTX, [(Fraction(1, 4), 1), (1, 1)], 2, 2)) == 2
    assert detect_level(from_terms(CTX, [], 2, 3)) == 0


def test_detect_level_rejects_laurent():
    with pytest.raises(DomainError):
        detect_level(from_terms(CTX, [(-1, 1)], 2, 0, laurent=True))


def test_detect_level_matches_trace_fixed_point(rng):
    for _ in range(100):
        f = random_series(rng, CTX, 4, 3)
        level = detect_level(f)
        assert tate_trace(f, level) == f
        if level > 0:
            assert tate_trace(f, level - 1) != f


def test_detect_level_of_trace(rng):
    for _ in range(20):
        f = random_series(rng, CTX, 4, 3)
        for n in range(4):
            assert detect_level(tate_trace(f, n)) <= n


def test_is_integral():
    bad = from_terms(CTX, [(1, CycloCoeff.one(CTX).p_times(-1))], 2, 0)
    v = is_integral(bad)
    assert v.verdict is Verdict.NO and v.witness[0] == Fraction(1)
    good = from_terms(CTX, [(0, 744), (Fraction(1, 2), 1)], 2, 1)
    assert is_integral(good).verdict is Verdict.YES


def test_integral_preserved_by_trace(rng):
    for _ in range(10):
        f = random_series(rng, CTX, 4, 3)
        assert is_integral(f).verdict is Verdict.YES
        for n in (0, 1, 2):
            assert is_integral(tate_trace(f, n)).verdict is Verdict.YES


def test_zero_test():
    f = random_series_fixture()
    assert zero_test(f - f).verdict is Verdict.YES
    soft = from_terms(CTX, [(1, CycloCoeff.from_int(CTX, 2**6))], 2, 0)
    v = zero_test(soft)
    assert v.verdict is Verdict.UNKNOWN and v.witness is not None
    hard = from_terms(CTX, [(1, 1)], 2, 0)
    assert zero_test(hard).verdict is Verdict.NO


def random_series_fixture():
    return from_terms(CTX, [(1, 3), (Fraction(1, 2), 5)], 2, 1)


def test_zero_test_internal_identity():
    ctx = new_ring(3, 6, 0)
    j = j_series(ctx, 10)
    d = delta_series(ctx, 12)
    e4 = eisenstein4_series(ctx, 12)
    diff = j * d - (e4 * e4 * e4).truncate_degree((j * d).deg_bound)
    assert zero_test(diff).verdict is Verdict.YES


def test_monotone_under_degree_truncation(rng):
    deciders = (extends_to_cusp, is_integral, zero_test)
    for _ in range(20):
        f = random_series(rng, CTX, 4, 3, shift_range=(-1, 1))
        for decide in deciders:
            before = decide(f).verdict
            after = decide(f.truncate_degree(3)).verdict
            if before is Verdict.YES:
                assert after is not Verdict.NO


def test_family_decide_extends():
    d = delta_series(CTX, 6)
    fam = FamilySeries(1, {1: d})
    report = family_decide(fam, "extends")
    assert report.aggregate.verdict is Verdict.YES
    assert all(v.verdict is Verdict.YES for v in report.members.values())


def test_family_decide_integral_witness():
    good = from_terms(CTX, [(1, 1)], 2, 1)
    bad = from_terms(CTX, [(1, CycloCoeff.one(CTX).p_times(-1))], 2, 1)
    fam = FamilySeries(2, {1: good, 3: bad})
    report = family_decide(fam, "integral")
    assert report.aggregate.verdict is Verdict.NO
    assert "residue class 3" in report.aggregate.note


def test_family_level_of_twists():
    base = monomial(CTX, Fraction(1, 2), deg_bound=2, depth_bound=1)
    fam = FamilySeries(2, {a: twist(base, a, 1) for a in (1, 3)})
    report = family_decide(fam, "level")
    assert report.members == {1: 1, 3: 1}
    assert report.aggregate == 1


def test_family_decide_unknown_option():
    d = delta_series(CTX, 6)
    with pytest.raises(ValueError):
        family_decide(FamilySeries(1, {1: d}), "nonsense")

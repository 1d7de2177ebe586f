import random
from fractions import Fraction

import pytest

from qcusp.coeff import CycloCoeff, RingContext
from qcusp.series import FracSeries, from_terms


def random_coeff(rng: random.Random, ctx: RingContext, entries: int = 2, shift_range=(0, 0)) -> CycloCoeff:
    """A random nonzero coefficient with a few nonzero polynomial entries."""
    while True:
        poly = [0] * ctx.phi
        for _ in range(min(entries, ctx.phi)):
            poly[rng.randrange(ctx.phi)] = rng.randrange(1, ctx.pk)
        c = CycloCoeff.from_poly(ctx, poly, rng.randint(*shift_range))
        if not c.is_zero():
            return c


def random_series(
    rng: random.Random,
    ctx: RingContext,
    n_terms: int = 3,
    max_depth: int = 3,
    deg_bound=30,
    laurent: bool = False,
    negative_terms: int = 0,
    coeff_entries: int = 2,
    shift_range=(0, 0),
) ->  FracSeries:
    terms = {}
    for _ in range(n_terms):
        r = rng.randrange(max_depth + 1)
        num = rng.randrange(1, 25)
        m = Fraction(num, ctx.p**r)
        terms[m] = random_coeff(rng, ctx, coeff_entries, shift_range)
    for _ in range(negative_terms):
        m = Fraction(-rng.randrange(1, 6))
        terms[m] = random_coeff(rng, ctx, coeff_entries, shift_range)
    return from_terms(ctx, terms.items(), deg_bound, max_depth, laurent or negative_terms > 0)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5EED)

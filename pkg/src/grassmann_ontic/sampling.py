"""Seeded generators of exact random inputs for sweeps and checks."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .grassmann import GENERATORS, ExactComplex, GrassmannElement
from .weyl import BlochVector, WeylState, stabilizer_states, weyl_from_bloch

DEFAULT_SEED = 7

_MONOMIALS = tuple(m for k in range(4) for m in combinations(GENERATORS, k))


def _rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(DEFAULT_SEED if seed_or_rng is None else seed_or_rng)


def random_rational(rng: random.Random, max_den: int = 12, lo=-1, hi=1) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(int(lo * den), int(hi * den)), den)


def random_pure_bloch(rng: random.Random, max_den: int = 12) -> BlochVector:
    """Rational point on the unit sphere via inverse stereographic projection."""
    u = random_rational(rng, max_den, -3, 3)
    v = random_rational(rng, max_den, -3, 3)
    n = 1 + u * u + v * v
    b = (2 * u / n, 2 * v / n, (u * u + v * v - 1) / n)
    # rotate which axis is the pole so no direction is favoured
    k = rng.randrange(3)
    return BlochVector(*(b[k:] + b[:k]))


def random_bloch(seed_or_rng=None, max_den: int = 12, pure_fraction: float = 0.25) -> BlochVector:
    rng = _rng(seed_or_rng)
    if rng.random() < pure_fraction:
        return random_pure_bloch(rng, max_den)
    while True:
        comps = [random_rational(rng, max_den) for _ in range(3)]
        if sum(c * c for c in comps) <= 1:
            return BlochVector(*comps)


def random_state(seed_or_rng=None, max_den: int = 12) -> WeylState:
    return weyl_from_bloch(random_bloch(seed_or_rng, max_den))


def random_states(n: int, seed=None, max_den: int = 12) -> list:
    rng = _rng(seed)
    return [random_state(rng, max_den) for _ in range(n)]


def random_weights(rng: random.Random, k: int) -> list:
    raw = [rng.randint(1, 9) for _ in range(k)]
    total = sum(raw)
    return [Fraction(r, total) for r in raw]


def random_stabilizer_mixture(seed_or_rng=None, max_terms: int = 4) -> list:
    """``[(weight, state), ...]`` over randomly chosen stabilizer states."""
    rng = _rng(seed_or_rng)
    stabs = stabilizer_states()
    k = rng.randint(1, max_terms)
    picks = [rng.choice(stabs) for _ in range(k)]
    return list(zip(random_weights(rng, k), picks))


def random_element(seed_or_rng=None, max_den: int = 6, density: float = 0.6) -> GrassmannElement:
    """Arbitrary element of the algebra with random complex rational coefficients."""
    rng = _rng(seed_or_rng)
    terms = {}
    for mono in _MONOMIALS:
        if rng.random() < density:
            terms[mono] = ExactComplex(random_rational(rng, max_den, -2, 2), random_rational(rng, max_den, -2, 2))
    return GrassmannElement(terms)

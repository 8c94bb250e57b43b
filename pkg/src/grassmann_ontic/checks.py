"""Invariant suites run by ``grassmann-ontic check``.

Each check is a function of a seeded ``random.Random`` that returns the
number of cases it examined and raises ``AssertionError`` on the first
failure.  The equation-of-motion integration is not part of these suites;
it is floating point and covered by the test suite instead.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import clifford, grassmann, models, ontic, sampling, weyl

HALF = Fraction(1, 2)
SUITES: dict = {}


def check(suite: str):
    def register(fn):
        SUITES.setdefault(suite, []).append(fn)
        return fn

    return register


@dataclass
class CheckOutcome:
    name: str
    cases: int
    passed: bool
    message: str = ""


@dataclass
class SuiteResult:
    suite: str
    outcomes: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(o.passed for o in self.outcomes)

    @property
    def failed(self) -> int:
        return sum(not o.passed for o in self.outcomes)

    @property
    def cases(self) -> int:
        return sum(o.cases for o in self.outcomes)


def run_suites(seed: int = sampling.DEFAULT_SEED, sweep: int = 50, suites=None) -> list:
    """Run every registered check; each suite gets its own seeded generator."""
    results = []
    for name in sorted(SUITES) if suites is None else suites:
        res = SuiteResult(name)
        rng = random.Random(f"{seed}:{name}")
        for fn in SUITES[name]:
            try:
                n = fn(rng, sweep)
                res.outcomes.append(CheckOutcome(fn.__name__, n, True))
            except AssertionError as exc:
                res.outcomes.append(CheckOutcome(fn.__name__, 0, False, str(exc) or "assertion failed"))
        results.append(res)
    return results


# -- grassmann_core -----------------------------------------------------------


@check("grassmann_core")
def anticommutation(rng, sweep):
    n = 0
    for a, b in combinations(grassmann.GENERATORS, 2):
        x, y = grassmann.xi(a), grassmann.xi(b)
        assert x * y == -(y * x), f"xi_{a} xi_{b} does not anticommute"
        n += 1
    for a in grassmann.GENERATORS:
        assert grassmann.xi(a) * grassmann.xi(a) == grassmann.ZERO, f"xi_{a}^2 != 0"
        n += 1
    return n


@check("grassmann_core")
def associativity_and_distributivity(rng, sweep):
    for _ in range(sweep):
        a, b, c = (sampling.random_element(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c), f"associativity fails for {a}, {b}, {c}"
        assert a * (b + c) == a * b + a * c, f"distributivity fails for {a}, {b}, {c}"
    return sweep


@check("grassmann_core")
def conjugation_involution(rng, sweep):
    for _ in range(sweep):
        a = sampling.random_element(rng)
        assert grassmann.conjugate(grassmann.conjugate(a)) == a, f"conjugation is not an involution on {a}"
        b = sampling.random_element(rng)
        lhs = grassmann.conjugate(a * b)
        rhs = grassmann.conjugate(b) * grassmann.conjugate(a)
        assert lhs == rhs, f"conjugation is not an anti-automorphism on {a}, {b}"
    return sweep


@check("grassmann_core")
def render_parse_roundtrip(rng, sweep):
    for _ in range(sweep):
        a = sampling.random_element(rng)
        assert grassmann.parse(grassmann.render(a)) == a, f"round trip fails for {a}"
    return sweep


# -- weyl_qubit ---------------------------------------------------------------


@check("weyl_qubit")
def bloch_roundtrip(rng, sweep):
    for _ in range(sweep):
        b = sampling.random_bloch(rng)
        assert weyl.bloch_from_weyl(weyl.weyl_from_bloch(b)) == b, f"Bloch round trip fails for {b}"
    return sweep


@check("weyl_qubit")
def measure_bounds_and_antisymmetry(rng, sweep):
    n = 0
    for _ in range(sweep):
        s = sampling.random_state(rng)
        for lab in weyl.SIX_LABELS:
            m = weyl.mu(s, lab)
            assert -HALF <= m <= HALF, f"mu({lab}) = {m} out of range for {s}"
            assert weyl.mu(s, -lab) == -m, f"mu not antisymmetric on {lab} for {s}"
            p = weyl.prob_setminus(s, lab) * weyl.prob_setminus(s, -lab)
            assert p == 0, f"both {lab} and its reversal carry weight for {s}"
            n += 1
    return n


@check("weyl_qubit")
def tuple_roundtrip(rng, sweep):
    for _ in range(sweep):
        s = sampling.random_state(rng)
        assert weyl.state_from_tuple(weyl.six_tuple(s)) == s, f"tuple round trip fails for {s}"
    return sweep


@check("weyl_qubit")
def stabilizer_tuples_are_unit_vectors(rng, sweep):
    for k, s in enumerate(weyl.stabilizer_states()):
        t = weyl.six_tuple(s).as_tuple()
        assert t == tuple(int(i == k) for i in range(6)), f"stabilizer {k} has tuple {t}"
    return 6


@check("weyl_qubit")
def mixing_commutes_with_tuples(rng, sweep):
    for _ in range(sweep):
        entries = sampling.random_stabilizer_mixture(rng)
        direct = weyl.six_tuple(weyl.convex_combine(entries))
        via = weyl.convex_combine_tuples((w, weyl.six_tuple(s)) for w, s in entries)
        assert direct == via, f"{direct} != {via}"
    return sweep


# -- clifford_dynamics --------------------------------------------------------


@check("clifford_dynamics")
def gate_relations(rng, sweep):
    ident = clifford.identity_map()
    for g in clifford.GATES:
        assert clifford.word_map([g, g]) == ident, f"{g}^2 != I"
    assert clifford.word_map("H X H") == clifford.named_map("Z"), "HXH != Z"
    assert clifford.word_map("H Z H") == clifford.named_map("X"), "HZH != X"
    return len(clifford.GATES) + 2


@check("clifford_dynamics")
def hadamard_swaps_x_and_z(rng, sweep):
    h = clifford.named_map("H")
    for _ in range(sweep):
        s = sampling.random_state(rng)
        a, b, c = s.bloch
        out = clifford.apply_clifford(h, s).bloch
        assert tuple(out) == (c, -b, a), f"H on {s.bloch} gives {out}"
    return sweep


@check("clifford_dynamics")
def blowtorch_gives_maximally_mixed(rng, sweep):
    for _ in range(sweep):
        s = sampling.random_state(rng)
        assert clifford.blowtorch_T1(s) == weyl.MAXIMALLY_MIXED, f"T1 of {s} is not I/2"
        assert clifford.blowtorch_T2(s) == weyl.MAXIMALLY_MIXED, f"T2 of {s} is not I/2"
    return sweep


# -- ontic_framework ----------------------------------------------------------


@check("ontic_framework")
def family_counts_and_common_point(rng, sweep):
    three = models.three_state_model()
    grass = models.grassmann_model()
    f3 = ontic.enumerate_families(three.disjoint)
    f8 = ontic.enumerate_families(grass.disjoint)
    assert len(f3) == 2, f"three-state system has {len(f3)} families"
    assert len(f8) == 8, f"Grassmann system has {len(f8)} families"
    common = ontic.intersect_families(f8)
    assert common is not None and len(common.vertices) == 1, "families do not meet in one point"
    zero = tuple(f8[0].point([0, 0, 0]).weights)
    assert common.vertices[0] == zero, f"common point {common.vertices[0]} is not the zero-parameter point"
    return 3


@check("ontic_framework")
def family_members_satisfy_axioms(rng, sweep):
    n = 0
    for model in (models.three_state_model(), models.grassmann_model()):
        sys = model.disjoint
        for fam in ontic.enumerate_families(sys):
            for _ in range(max(1, sweep // 8)):
                lo_hi = fam.ranges
                vals = [sampling.random_rational(rng, 12, lo_hi[p][0], lo_hi[p][1]) for p in fam.parameters]
                d = fam.point(vals)
                assert sys.satisfied_by(d), f"{d} from {fam} violates {sys.name}"
                report = ontic.check_kolmogorov(d, sys.normalization, seed=rng.randrange(1 << 30))
                assert report.passed, f"{d}: {report.violations[0]}"
                for b in model.blocks:
                    assert d[b.y] == d[b.z], f"P({b.y}) != P({b.z}) in {d}"
                n += 1
    return n


@check("ontic_framework")
def constrained_mixing_stays_in_system(rng, sweep):
    model = models.grassmann_model()
    sys = model.disjoint
    fams = ontic.enumerate_families(sys)
    n = 0
    for _ in range(sweep):
        f1, f2 = rng.sample(fams, 2)
        d1 = f1.point([sampling.random_rational(rng, 6, 0, 1) for _ in f1.parameters])
        d2 = f2.point([sampling.random_rational(rng, 6, 0, 1) for _ in f2.parameters])
        w = sampling.random_rational(rng, 6, 0, 1)
        out = ontic.nondisjoint_convex_combine(model.blocks, [(w, d1), (1 - w, d2)], sys)
        assert sys.satisfied_by(out), f"constrained mixture {out} leaves the system"
        n += 1
    return n


@check("ontic_framework")
def plain_mixing_leaves_system(rng, sweep):
    model = models.three_state_model()
    sys = model.disjoint
    f1, f2 = ontic.enumerate_families(sys)
    n = 0
    for _ in range(sweep):
        a = sampling.random_rational(rng, 12, 0, 1)
        b = sampling.random_rational(rng, 12, 0, 1)
        if a == 0 or b == 0:
            continue
        mid = ontic.mix([(HALF, f1.point([a])), (HALF, f2.point([b]))])
        assert not sys.satisfied_by(mid), f"plain mixture {mid} unexpectedly satisfies the system"
        n += 1
    return n


# -- reference_models ---------------------------------------------------------


@check("reference_models")
def eight_state_parity(rng, sweep):
    for s in models.EIGHT_STATES:
        d = models.point_mass(s)
        s1 = models.support(models.eight_state_blowtorch("T1", d))
        s2 = models.support(models.eight_state_blowtorch("T2", d))
        assert len(s1) == len(s2) == 4 and not s1 & s2, f"supports overlap for {s}"
        assert {models.parity(models.parse_state_label(a)) for a in s1} == {models.parity(s)}
        assert {models.parity(models.parse_state_label(a)) for a in s2} != {models.parity(s)}
    return len(models.EIGHT_STATES)


@check("reference_models")
def contextuality_verdicts(rng, sweep):
    assert models.exhibits_transformation_contextuality(models.eight_state_model()), "eight-state model"
    assert not models.exhibits_transformation_contextuality(models.grassmann_blowtorch_model()), "Grassmann model"
    for _ in range(sweep):
        t = weyl.six_tuple(sampling.random_state(rng))
        a = models.tuple_blowtorch("T1", t)
        b = models.tuple_blowtorch("T2", t)
        assert a == b == weyl.SixTuple(0, 0, 0, 0, 0, 0), f"blowtorch on {t} gives {a} and {b}"
    return sweep + 2


@check("reference_models")
def measurement_matches_bloch_component(rng, sweep):
    n = 0
    for _ in range(sweep):
        s = sampling.random_state(rng)
        t = weyl.six_tuple(s)
        for pauli, comp in zip("XYZ", s.bloch):
            plus, minus = models.measure_pauli(t, pauli)
            assert plus + minus == 1
            assert plus == HALF * (1 + comp), f"Pr(+|{pauli}) = {plus} for Bloch {s.bloch}"
            n += 1
    return n


@check("reference_models")
def decomposition_is_a_distribution(rng, sweep):
    for _ in range(sweep):
        t = weyl.six_tuple(sampling.random_state(rng))
        w = models.decompose_on_lambda_prime(t)
        assert all(v >= 0 for v in w.values()) and sum(w.values()) == 1, f"bad weights for {t}"
        assert models.recombine(w) == t, f"recombining the decomposition of {t} fails"
    return sweep


@check("reference_models")
def stabilizer_overlaps(rng, sweep):
    tuples = models.stabilizer_tuples()
    supports = [frozenset(l for l, w in models.decompose_on_lambda_prime(t).items() if w) for t in tuples]
    assert all(len(s) == 4 for s in supports), "stabilizer support is not four basis states"
    n = 0
    for i, j in combinations(range(6), 2):
        orthogonal = abs(i - j) == 3
        assert bool(supports[i] & supports[j]) != orthogonal, f"overlap of stabilizers {i}, {j}"
        n += 1
    # overlap of each stabilizer with the six response functions
    vectors = {
        tuple(models.measure_pauli(t, p)[k] for p in "XYZ" for k in (0, 1)) for t in tuples
    }
    assert len(vectors) == 6, "two stabilizer tuples share every overlap"
    return n + 6

"""The concrete models: eight disjoint states, one non-disjoint pair, and
the Grassmann model with three non-disjoint pairs.

The Grassmann model's pair i is the i-th x/y/z axis of the 6-tuple:
``W_i`` is the "+" ontic state minus its reversal, ``X_i`` the reversal minus
the "+" state, ``Y_i`` their overlap and ``Z_i`` the rest of the block.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .clifford import PAULI_TWIRL, apply_clifford, named_map
from .dsl import parse_system
from .ontic import AtomDistribution, ConstraintSystem, PairBlock, mix
from .weyl import (
    SixTuple,
    convex_combine_tuples,
    six_tuple,
    stabilizer_states,
    state_from_tuple,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

# -- eight-state model -------------------------------------------------------

EIGHT_STATES = (
    (1, 1, 1),
    (1, 1, -1),
    (1, -1, 1),
    (-1, 1, 1),
    (1, -1, -1),
    (-1, 1, -1),
    (-1, -1, 1),
    (-1, -1, -1),
)


def state_label(s) -> str:
    return "".join("+" if v > 0 else "-" for v in s)


def parse_state_label(text: str) -> tuple:
    text = text.replace("−", "-")
    if len(text) != 3 or any(c not in "+-" for c in text):
        raise ValueError(f"eight-state label must look like '+-+', got {text!r}")
    return tuple(1 if c == "+" else -1 for c in text)


EIGHT_STATE_ATOMS = tuple(state_label(s) for s in EIGHT_STATES)


def parity(s) -> str:
    """'even' or 'odd' by the number of minus signs."""
    return "odd" if sum(1 for v in s if v < 0) % 2 else "even"


_GAMMA = {
    "I": lambda x, y, z: (x, y, z),
    "X": lambda x, y, z: (x, -y, -z),
    "Y": lambda x, y, z: (-x, y, -z),
    "Z": lambda x, y, z: (-x, -y, z),
    "H": lambda x, y, z: (z, -y, x),
}


def point_mass(s) -> AtomDistribution:
    if isinstance(s, str):
        s = parse_state_label(s)
    label = state_label(s)
    return AtomDistribution(EIGHT_STATE_ATOMS, tuple(int(a == label) for a in EIGHT_STATE_ATOMS))


def uniform_eight() -> AtomDistribution:
    return AtomDistribution(EIGHT_STATE_ATOMS, (Fraction(1, 8),) * 8)


def eight_state_gate(gate: str, d: AtomDistribution) -> AtomDistribution:
    """Push ``d`` forward along the ontic permutation of ``gate``."""
    try:
        f = _GAMMA[gate.upper()]
    except KeyError:
        raise ValueError(f"unknown gate {gate!r}") from None
    out = dict.fromkeys(EIGHT_STATE_ATOMS, Fraction(0))
    for s in EIGHT_STATES:
        out[state_label(f(*s))] += d[state_label(s)]
    return AtomDistribution.from_mapping(EIGHT_STATE_ATOMS, out)


def eight_state_blowtorch(which: str, d: AtomDistribution) -> AtomDistribution:
    """T1 twirls over I, X, Y, Z; T2 follows each twirl term with H."""
    which = which.upper()
    if which not in ("T1", "T2"):
        raise ValueError(f"expected T1 or T2, got {which!r}")
    parts = []
    for g in PAULI_TWIRL:
        out = eight_state_gate(g, d)
        if which == "T2":
            out = eight_state_gate("H", out)
        parts.append((QUARTER, out))
    return mix(parts)


def support(d: AtomDistribution) -> frozenset:
    return frozenset(a for a, w in zip(d.atoms, d.weights) if w != 0)


# -- transformation contextuality ------------------------------------------


@dataclass(frozen=True)
class BlowtorchModel:
    """A state space with two implementations of the blowtorch channel."""

    name: str
    inputs: tuple
    t1: Callable
    t2: Callable


@dataclass(frozen=True)
class ContextualityVerdict:
    contextual: bool
    witness: object = None
    t1_output: object = None
    t2_output: object = None
    checked: int = 0

    def __bool__(self):
        return self.contextual


def exhibits_transformation_contextuality(model: BlowtorchModel) -> ContextualityVerdict:
    """Compare T1 and T2 on every input; the first mismatch is the witness."""
    for n, s in enumerate(model.inputs, 1):
        a, b = model.t1(s), model.t2(s)
        if a != b:
            return ContextualityVerdict(True, s, a, b, n)
    return ContextualityVerdict(False, checked=len(model.inputs))


def eight_state_model() -> BlowtorchModel:
    return BlowtorchModel(
        "eight-state",
        tuple(point_mass(s) for s in EIGHT_STATES),
        lambda d: eight_state_blowtorch("T1", d),
        lambda d: eight_state_blowtorch("T2", d),
    )


def tuple_gate(gate: str, t: SixTuple) -> SixTuple:
    """Clifford action on the 6-tuple of a state."""
    return six_tuple(apply_clifford(named_map(gate), state_from_tuple(t)))


def tuple_blowtorch(which: str, t: SixTuple) -> SixTuple:
    """Blowtorch on 6-tuples, mixing the four branches through the pairs."""
    which = which.upper()
    if which not in ("T1", "T2"):
        raise ValueError(f"expected T1 or T2, got {which!r}")
    parts = []
    for g in PAULI_TWIRL:
        out = tuple_gate(g, t)
        if which == "T2":
            out = tuple_gate("H", out)
        parts.append((QUARTER, out))
    return convex_combine_tuples(parts)


def componentwise_blowtorch(which: str, t: SixTuple) -> tuple:
    """Same channel but mixing the six entries linearly, ignoring the pair
    constraints.  The result is generally not a valid 6-tuple."""
    which = which.upper()
    total = [Fraction(0)] * 6
    for g in PAULI_TWIRL:
        out = tuple_gate(g, t)
        if which == "T2":
            out = tuple_gate("H", out)
        for i, v in enumerate(out):
            total[i] += QUARTER * v
    return tuple(total)


def grassmann_blowtorch_model() -> BlowtorchModel:
    return BlowtorchModel(
        "grassmann",
        tuple(six_tuple(s) for s in stabilizer_states()),
        lambda t: tuple_blowtorch("T1", t),
        lambda t: tuple_blowtorch("T2", t),
    )


def grassmann_componentwise_model() -> BlowtorchModel:
    return BlowtorchModel(
        "grassmann-componentwise",
        tuple(six_tuple(s) for s in stabilizer_states()),
        lambda t: componentwise_blowtorch("T1", t),
        lambda t: componentwise_blowtorch("T2", t),
    )


# -- Lambda' basis, decomposition and measurement --------------------------

LAMBDA_PRIME = (
    (1, 1, 1, 0, 0, 0),
    (1, 1, 0, 0, 0, 1),
    (1, 0, 1, 0, 1, 0),
    (1, 0, 0, 0, 1, 1),
    (0, 1, 1, 1, 0, 0),
    (0, 1, 0, 1, 0, 1),
    (0, 0, 1, 1, 1, 0),
    (0, 0, 0, 1, 1, 1),
)

PAULI_AXIS = {"X": 0, "Y": 1, "Z": 2}


def _as_tuple(t) -> SixTuple:
    return t if isinstance(t, SixTuple) else SixTuple.from_sequence(t)


def overlap_fill(t) -> tuple:
    """Per pair the overlap weight ``y_i = (1 - max(g+, g-)) / 2``."""
    return tuple(HALF * (1 - max(plus, minus)) for plus, minus in _as_tuple(t).pairs())


def decompose_on_lambda_prime(t) -> dict:
    """Weights of ``t`` on the eight basis tuples.

    Each pair contributes ``g+ + y`` to basis tuples picking its "+" side
    and ``g- + y`` to the others; the weight is the product over pairs.
    """
    t = _as_tuple(t)
    fill = overlap_fill(t)
    sides = [(plus + y, minus + y) for (plus, minus), y in zip(t.pairs(), fill)]
    out = {}
    for lam in LAMBDA_PRIME:
        w = Fraction(1)
        for i in range(3):
            w *= sides[i][0] if lam[i] == 1 else sides[i][1]
        out[lam] = w
    return out


def recombine(weights: dict) -> SixTuple:
    """Mix the basis tuples through the pairs: the inverse of the decomposition."""
    return convex_combine_tuples((w, SixTuple.from_sequence(lam)) for lam, w in weights.items() if w)


def response(lam, pauli: str, outcome: int) -> int:
    """Indicator that basis tuple ``lam`` gives ``outcome`` (+1/-1) for ``pauli``."""
    i = PAULI_AXIS[pauli.upper()]
    return int((lam[i] == 1) == (outcome > 0))


def measure_pauli(t, pauli: str) -> tuple:
    """``(Pr(+), Pr(-))`` summed over the basis decomposition."""
    pauli = pauli.upper()
    if pauli not in PAULI_AXIS:
        raise ValueError(f"unknown Pauli measurement {pauli!r}; expected X, Y or Z")
    weights = decompose_on_lambda_prime(t)
    plus = sum((w * response(lam, pauli, 1) for lam, w in weights.items()), Fraction(0))
    minus = sum((w * response(lam, pauli, -1) for lam, w in weights.items()), Fraction(0))
    return plus, minus


def lambda_label(lam) -> str:
    return "(" + ",".join(str(v) for v in lam) + ")"


# -- constraint-system models ----------------------------------------------

THREE_STATE_DSL = """\
name three-state
atoms W X Y Z
region A = W | Y
region B = X | Y
normalize all
P(A) + P(B) = 1
P(A | B) = max(P(A), P(B))
P(A & B) = min(P(A), P(B))
"""

THREE_STATE_PAIRS_DSL = """\
name three-state-pairs
# coordinates are the non-disjoint states themselves
atoms A B C
P(C) = 1
P(A) + P(B) = 1
"""


def _grassmann_dsl() -> str:
    lines = [
        "name grassmann",
        "atoms W1 W2 W3 X1 X2 X3 Y1 Y2 Y3 Z1 Z2 Z3",
    ]
    for i in (1, 2, 3):
        lines += [
            f"region A{i} = W{i} | Y{i}",
            f"region B{i} = X{i} | Y{i}",
            f"normalize W{i} | X{i} | Y{i} | Z{i}",
            f"P(A{i}) + P(B{i}) = 1",
            f"P(A{i} | B{i}) = max(P(A{i}), P(B{i}))",
            f"P(A{i} & B{i}) = min(P(A{i}), P(B{i}))",
        ]
    return "\n".join(lines) + "\n"


GRASSMANN_DSL = _grassmann_dsl()

GRASSMANN_PAIRS_DSL = """\
name grassmann-pairs
atoms A1 A2 A3 B1 B2 B3
P(A1) + P(B1) = 1
P(A2) + P(B2) = 1
P(A3) + P(B3) = 1
"""

GRASSMANN_ATOMS = ("W1", "W2", "W3", "X1", "X2", "X3", "Y1", "Y2", "Y3", "Z1", "Z2", "Z3")
GRASSMANN_BLOCKS = tuple(PairBlock(f"W{i}", f"X{i}", f"Y{i}", f"Z{i}") for i in (1, 2, 3))
THREE_STATE_BLOCKS = (PairBlock("W", "X", "Y", "Z"),)


@dataclass(frozen=True)
class OntologicalModel:
    """A constraint model in its disjoint refinement and its pair coordinates."""

    name: str
    disjoint: ConstraintSystem
    nondisjoint: ConstraintSystem
    blocks: tuple


def three_state_model() -> OntologicalModel:
    return OntologicalModel(
        "three-state", parse_system(THREE_STATE_DSL), parse_system(THREE_STATE_PAIRS_DSL), THREE_STATE_BLOCKS
    )


def grassmann_model() -> OntologicalModel:
    return OntologicalModel(
        "grassmann", parse_system(GRASSMANN_DSL), parse_system(GRASSMANN_PAIRS_DSL), GRASSMANN_BLOCKS
    )


def tuple_to_atoms(t) -> AtomDistribution:
    """12-atom distribution of a 6-tuple; overlap and rest get ``y_i`` each."""
    t = _as_tuple(t)
    fill = overlap_fill(t)
    pairs = t.pairs()
    weights = [p for p, _ in pairs] + [m for _, m in pairs] + list(fill) + list(fill)
    return AtomDistribution(GRASSMANN_ATOMS, tuple(weights))


def atoms_to_tuple(d: AtomDistribution) -> SixTuple:
    return SixTuple(*(d[a] for a in GRASSMANN_ATOMS[:6]))


def tuple_to_pairs(t) -> AtomDistribution:
    """Coordinates ``(a1, a2, a3, b1, b2, b3)`` on the non-disjoint pair states."""
    t = _as_tuple(t)
    fill = overlap_fill(t)
    pairs = t.pairs()
    a = [p + y for (p, _), y in zip(pairs, fill)]
    b = [m + y for (_, m), y in zip(pairs, fill)]
    return AtomDistribution(("A1", "A2", "A3", "B1", "B2", "B3"), tuple(a + b))


def region_occupancy(t) -> list:
    """``(label, weight)`` rows: the eight basis tuples, then the 12 atoms."""
    rows = [(lambda_label(lam), w) for lam, w in decompose_on_lambda_prime(t).items()]
    d = tuple_to_atoms(t)
    rows += list(zip(d.atoms, d.weights))
    return rows


def stabilizer_tuples() -> list:
    return [six_tuple(s) for s in stabilizer_states()]

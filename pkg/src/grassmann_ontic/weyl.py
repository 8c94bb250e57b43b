"""Single-qubit states as Grassmann Weyl symbols and their 6-tuple distributions.

A state with Bloch vector (alpha, beta, gamma) has the symbol

    1/2 (1 + alpha i xi_r xi_q + beta i xi_p xi_q + gamma i xi_p xi_r)

and the three quadratic monomials xi_r xi_q, xi_p xi_q, xi_p xi_r are the
x, y and z axes.  The six ordered pairs xi_j xi_k are the (non-disjoint)
ontic states; the tuple slots below are the single place that fixes which
pair sits in which slot.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .grassmann import (
    ExactComplex,
    GrassmannElement,
    add,
    coefficient,
    conjugate,
    parse,
    render,
    scale,
)
from .serialize import rational_from_record, rational_to_record

HALF = Fraction(1, 2)


class InvalidState(ValueError):
    """Symbol, Bloch vector or tuple outside the admitted state space."""


class InvalidWeights(ValueError):
    """Mixture weights that are negative or do not sum to one."""


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"floats are not exact: {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class BlochVector:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, _rational(getattr(self, name)))
        if self.norm_squared > 1:
            raise InvalidState(f"Bloch vector outside the unit ball: {self}")

    @property
    def norm_squared(self) -> Fraction:
        return self.alpha ** 2 + self.beta ** 2 + self.gamma ** 2

    @property
    def is_pure(self) -> bool:
        return self.norm_squared == 1

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma))

    def __neg__(self):
        return BlochVector(-self.alpha, -self.beta, -self.gamma)

    def __str__(self):
        return f"({self.alpha}, {self.beta}, {self.gamma})"

    def to_record(self) -> dict:
        return {
            "type": "bloch",
            "alpha": rational_to_record(self.alpha),
            "beta": rational_to_record(self.beta),
            "gamma": rational_to_record(self.gamma),
        }

    @classmethod
    def from_record(cls, rec: dict) -> "BlochVector":
        return cls(*(rational_from_record(rec[k]) for k in ("alpha", "beta", "gamma")))


class OnticLabel(NamedTuple):
    """Ordered generator pair xi_first xi_second; ``-label`` reverses it."""

    first: str
    second: str

    def __neg__(self) -> "OnticLabel":
        return OnticLabel(self.second, self.first)

    def __str__(self):
        return f"xi_{self.first} xi_{self.second}"


# Slot order (g_p, g_r, g_q, g_-p, g_-r, g_-q): the "+" labels of the x, y, z
# axes followed by their reversals.
AXIS_LABELS = (OnticLabel("r", "q"), OnticLabel("p", "q"), OnticLabel("p", "r"))
SIX_LABELS = AXIS_LABELS + tuple(-lab for lab in AXIS_LABELS)
SLOT_NAMES = ("g_p", "g_r", "g_q", "g_minus_p", "g_minus_r", "g_minus_q")


@dataclass(frozen=True)
class SixTuple:
    """Distribution over the six ontic states xi_j xi_k minus xi_k xi_j."""

    g_p: Fraction
    g_r: Fraction
    g_q: Fraction
    g_minus_p: Fraction
    g_minus_r: Fraction
    g_minus_q: Fraction

    def __post_init__(self):
        for name in SLOT_NAMES:
            v = _rational(getattr(self, name))
            if not 0 <= v <= 1:
                raise InvalidState(f"{name}={v} outside [0, 1]")
            object.__setattr__(self, name, v)
        for plus, minus in self.pairs():
            if min(plus, minus) != 0:
                raise InvalidState(f"pair ({plus}, {minus}) has support on both sides")

    @classmethod
    def from_sequence(cls, values: Sequence) -> "SixTuple":
        if len(values) != 6:
            raise InvalidState(f"expected 6 entries, got {len(values)}")
        return cls(*values)

    @classmethod
    def from_nets(cls, nets: Sequence) -> "SixTuple":
        """Tuple whose per-axis ``plus - minus`` differences are ``nets``."""
        nets = [_rational(n) for n in nets]
        return cls(*(max(n, 0) for n in nets), *(max(-n, 0) for n in nets))

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, n) for n in SLOT_NAMES)

    def pairs(self) -> tuple:
        """``((g_p, g_-p), (g_r, g_-r), (g_q, g_-q))``."""
        t = self.as_tuple()
        return tuple((t[i], t[i + 3]) for i in range(3))

    def nets(self) -> tuple:
        return tuple(plus - minus for plus, minus in self.pairs())

    def __iter__(self):
        return iter(self.as_tuple())

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.as_tuple()) + ")"

    def to_record(self) -> dict:
        return {"type": "six_tuple", "entries": [rational_to_record(v) for v in self]}

    @classmethod
    def from_record(cls, rec: dict) -> "SixTuple":
        return cls.from_sequence([rational_from_record(v) for v in rec["entries"]])


_QUADRATIC = {("q", "r"), ("p", "q"), ("p", "r")}


@dataclass(frozen=True)
class WeylState:
    """Weyl symbol of a (possibly mixed) single-qubit state."""

    symbol: GrassmannElement

    def __post_init__(self):
        terms = self.symbol.terms
        if terms.get((), None) != HALF:
            raise InvalidState(f"unit coefficient must be 1/2: {render(self.symbol)}")
        for mono, c in terms.items():
            if mono == ():
                continue
            if mono not in _QUADRATIC:
                raise InvalidState(f"monomial {mono} not allowed in a state symbol")
            if not isinstance(c, ExactComplex) or not c.is_imaginary:
                raise InvalidState(f"coefficient {c} of {mono} is not purely imaginary")
        if conjugate(self.symbol) != self.symbol:
            raise InvalidState("state symbol is not real under conjugation")
        if self.bloch_squared_norm() > 1:
            raise InvalidState(f"Bloch vector outside the unit ball: {render(self.symbol)}")

    def bloch_squared_norm(self) -> Fraction:
        return sum((2 * mu(self, lab)) ** 2 for lab in AXIS_LABELS)

    @property
    def bloch(self) -> BlochVector:
        return bloch_from_weyl(self)

    @classmethod
    def from_bloch(cls, b) -> "WeylState":
        return weyl_from_bloch(b)

    @classmethod
    def parse(cls, text: str) -> "WeylState":
        return cls(parse(text))

    def __str__(self):
        return render(self.symbol)

    def to_record(self) -> dict:
        return {"type": "weyl_state", "symbol": render(self.symbol), "bloch": self.bloch.to_record()}

    @classmethod
    def from_record(cls, rec: dict) -> "WeylState":
        state = cls.parse(rec["symbol"])
        if "bloch" in rec and state.bloch != BlochVector.from_record(rec["bloch"]):
            raise InvalidState("record symbol and Bloch vector disagree")
        return state


def weyl_from_bloch(b) -> WeylState:
    if not isinstance(b, BlochVector):
        b = BlochVector(*b)
    half_i = ExactComplex(0, HALF)
    terms = {(): HALF}
    for lab, comp in zip(AXIS_LABELS, b):
        terms[tuple(lab)] = half_i * comp
    return WeylState(GrassmannElement(terms))


def bloch_from_weyl(s: WeylState) -> BlochVector:
    return BlochVector(*(2 * mu(s, lab) for lab in AXIS_LABELS))


def _label(lam) -> OnticLabel:
    lab = OnticLabel(*lam)
    if lab.first == lab.second:
        raise ValueError(f"ontic label needs two distinct generators: {lam}")
    return lab


def mu(s: WeylState, lam) -> Fraction:
    """Measure of the ontic state ``lam``: the coefficient of i xi_j xi_k.

    Antisymmetric under reversing the pair and bounded by 1/2 in magnitude.
    """
    c = coefficient(s.symbol, _label(lam))
    # c = i * mu for a valid state
    return c.im


def prob_setminus(s: WeylState, lam) -> Fraction:
    """Probability of the region ``lam`` minus ``-lam``: ``max(2 mu, 0)``."""
    return max(2 * mu(s, lam), Fraction(0))


def six_tuple(s: WeylState) -> SixTuple:
    return SixTuple(*(prob_setminus(s, lab) for lab in SIX_LABELS))


def state_from_tuple(t: SixTuple) -> WeylState:
    """Inverse of :func:`six_tuple`; fails for tuples that are not states."""
    return weyl_from_bloch(BlochVector(*t.nets()))


def _check_weights(weights: Iterable) -> list:
    weights = [_rational(w) for w in weights]
    if not weights:
        raise InvalidWeights("empty mixture")
    if any(w < 0 for w in weights):
        raise InvalidWeights(f"negative weight in {weights}")
    if sum(weights) != 1:
        raise InvalidWeights(f"weights sum to {sum(weights)}, not 1")
    return weights


def convex_combine(entries) -> WeylState:
    """Mix states by adding their Weyl symbols."""
    entries = list(entries)
    weights = _check_weights(w for w, _ in entries)
    total = GrassmannElement()
    for w, s in zip(weights, (s for _, s in entries)):
        total = add(total, scale(w, s.symbol))
    return WeylState(total)


def convex_combine_tuples(entries) -> SixTuple:
    """Mix 6-tuples through the coarse pairs: per axis the net support
    ``plus - minus`` mixes linearly and the smaller side is emptied."""
    entries = list(entries)
    weights = _check_weights(w for w, _ in entries)
    nets = [Fraction(0)] * 3
    for w, (_, t) in zip(weights, entries):
        if not isinstance(t, SixTuple):
            t = SixTuple.from_sequence(t)
        for i, n in enumerate(t.nets()):
            nets[i] += w * n
    return SixTuple.from_nets(nets)


STABILIZER_NAMES = ("+x", "+y", "+z", "-x", "-y", "-z")


def stabilizer_states() -> list:
    """The six symbols 1/2 (1 + i xi_j xi_k), in 6-tuple slot order."""
    half_i = ExactComplex(0, HALF)
    return [WeylState(GrassmannElement({(): HALF, tuple(lab): half_i})) for lab in SIX_LABELS]


def stabilizer_state(name: str) -> WeylState:
    name = name.replace("−", "-")
    try:
        return stabilizer_states()[STABILIZER_NAMES.index(name)]
    except ValueError:
        raise ValueError(f"unknown stabilizer state {name!r}; expected one of {STABILIZER_NAMES}") from None


def maximally_mixed() -> WeylState:
    return WeylState(GrassmannElement({(): HALF}))


MAXIMALLY_MIXED = maximally_mixed()

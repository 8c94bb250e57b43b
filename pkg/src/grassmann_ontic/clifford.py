"""Clifford gates as signed permutations of the Grassmann generators.

The generator tables in :data:`GATE_MAPS` are the normative definition of the
gates.  :func:`integrate_eom` re-derives them from the quadratic Hamiltonians
by integrating the linear generator flow, which is the only place floating
point is used.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

from .grassmann import GENERATORS, ExactComplex, GrassmannElement, substitute_generators
from .weyl import WeylState, convex_combine

QUARTER = Fraction(1, 4)
ROUNDING_TOLERANCE = 1e-9


class NotSignedPermutation(ArithmeticError):
    """A propagator that does not round to a signed permutation."""


class ConventionMismatch(RuntimeError):
    """The calibrated flow convention disagrees with a tabulated gate map."""


@dataclass(frozen=True)
class CliffordMap:
    """Signed permutation ``xi_k -> sign * xi_image`` of the three generators."""

    images: tuple  # ((label, sign) for p, q, r)
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        images = tuple((str(g), int(s)) for g, s in self.images)
        if len(images) != 3:
            raise ValueError("a generator map needs exactly three images")
        if sorted(g for g, _ in images) != list(GENERATORS):
            raise ValueError(f"images {images} are not a permutation of the generators")
        if any(s not in (1, -1) for _, s in images):
            raise ValueError(f"signs must be +1 or -1: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def from_images(cls, image: dict, name: str | None = None) -> "CliffordMap":
        return cls(tuple(image[g] for g in GENERATORS), name)

    @property
    def image(self) -> dict:
        return dict(zip(GENERATORS, self.images))

    def matrix(self) -> np.ndarray:
        """Row k holds the image of generator k in the (p, q, r) basis."""
        m = np.zeros((3, 3))
        for k, (g, s) in enumerate(self.images):
            m[k, GENERATORS.index(g)] = s
        return m

    def __str__(self):
        parts = []
        for g, s in self.images:
            parts.append(("-" if s < 0 else "") + f"xi_{g}")
        return "(" + ", ".join(parts) + ")"


def _m(p, q, r, name):
    def img(spec):
        return (spec[-1], -1 if spec.startswith("-") else 1)

    return CliffordMap((img(p), img(q), img(r)), name)


# The Y and Z rows are the maps that produce the transformed symbols
# rho_Y = (-a, b, -c) and rho_Z = (-a, -b, c) and that the Hamiltonians
# -i xi_p xi_q and -i xi_p xi_r generate.
GATE_MAPS = {
    "I": _m("p", "q", "r", "I"),
    "X": _m("p", "-q", "-r", "X"),
    "Y": _m("-p", "-q", "r", "Y"),
    "Z": _m("-p", "q", "-r", "Z"),
    "H": _m("q", "p", "-r", "H"),
}
GATES = tuple(GATE_MAPS)


def named_map(gate: str) -> CliffordMap:
    try:
        return GATE_MAPS[gate.upper()]
    except KeyError:
        raise ValueError(f"unknown gate {gate!r}; expected one of {GATES}") from None


def identity_map() -> CliffordMap:
    return GATE_MAPS["I"]


def compose(*maps: CliffordMap) -> CliffordMap:
    """Map equal to applying ``maps`` one after another, left to right.

    ``substitute_generators(substitute_generators(a, m1), m2)`` equals
    ``substitute_generators(a, compose(m1, m2))``.
    """
    image = {g: (g, 1) for g in GENERATORS}
    for m in maps:
        table = m.image
        image = {g: (table[h][0], s * table[h][1]) for g, (h, s) in image.items()}
    return CliffordMap.from_images(image)


def inverse(m: CliffordMap) -> CliffordMap:
    image = {h: (g, s) for g, (h, s) in m.image.items()}
    return CliffordMap.from_images(image)


def word_map(word) -> CliffordMap:
    """Signed permutation of a gate word such as ``"H X H"``."""
    if isinstance(word, str):
        word = word.split()
    return compose(*(named_map(g) for g in word))


def apply_clifford(m: CliffordMap, s):
    """Conjugate a state by the gate: substitute the generator images.

    Accepts a :class:`WeylState` or a bare :class:`GrassmannElement` (the
    latter may carry symbolic coefficients).
    """
    if isinstance(s, WeylState):
        return WeylState(substitute_generators(s.symbol, m))
    return substitute_generators(s, m)


PAULI_TWIRL = ("I", "X", "Y", "Z")


def blowtorch_T1(s: WeylState) -> WeylState:
    """(rho + X rho X + Y rho Y + Z rho Z) / 4."""
    return convex_combine((QUARTER, apply_clifford(named_map(g), s)) for g in PAULI_TWIRL)


def blowtorch_T2(s: WeylState) -> WeylState:
    """H T1(rho) H, expanded term by term."""
    h = named_map("H")
    return convex_combine(
        (QUARTER, apply_clifford(h, apply_clifford(named_map(g), s))) for g in PAULI_TWIRL
    )


# -- equations of motion ---------------------------------------------------


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """``scale * element`` flowed for ``duration``.

    ``element`` is homogeneous of degree two, or a scalar (the identity
    Hamiltonian).  ``scale`` carries irrational prefactors such as 1/sqrt(2)
    so that ``element`` stays exact.
    """

    element: GrassmannElement
    duration: float
    scale: float = 1.0
    gate: str | None = None

    def __post_init__(self):
        degrees = self.element.degrees()
        if not (degrees <= {2} or degrees <= {0}):
            raise ValueError(f"Hamiltonian must be quadratic or constant, got degrees {sorted(degrees)}")


_MINUS_I = ExactComplex(0, -1)


def hamiltonian(gate: str) -> QuadraticHamiltonian:
    """Named Hamiltonian and flow time that realise ``gate``."""
    gate = gate.upper()
    if gate == "I":
        return QuadraticHamiltonian(GrassmannElement({(): 1}), math.pi / 2, gate="I")
    if gate == "X":
        return QuadraticHamiltonian(GrassmannElement({"rq": _MINUS_I}), math.pi / 2, gate="X")
    if gate == "Y":
        return QuadraticHamiltonian(GrassmannElement({"pq": _MINUS_I}), math.pi / 2, gate="Y")
    if gate == "Z":
        return QuadraticHamiltonian(GrassmannElement({"pr": _MINUS_I}), math.pi / 2, gate="Z")
    if gate == "H":
        return QuadraticHamiltonian(
            GrassmannElement({"rq": _MINUS_I, "pr": _MINUS_I}),
            math.pi,
            scale=1 / math.sqrt(2),
            gate="H",
        )
    raise ValueError(f"no Hamiltonian for gate {gate!r}")


@dataclass(frozen=True)
class Convention:
    """Right-derivative sign and Poisson-bracket normalisation."""

    sign: int = 1
    bracket_scale: int = 1


# Tried in order when calibrating.
CONVENTION_CANDIDATES = (
    Convention(1, 1),
    Convention(-1, 1),
    Convention(1, 2),
    Convention(-1, 2),
)


def flow_matrix(h: QuadraticHamiltonian, convention: Convention = Convention()) -> np.ndarray:
    """Generator of ``d xi_k / dt = i H d/dxi_k`` (right derivative).

    For a canonical term ``c xi_a xi_b`` the right derivative gives
    ``c xi_a`` with respect to ``xi_b`` and ``-c xi_b`` with respect to ``xi_a``.
    """
    m = np.zeros((3, 3), dtype=complex)
    for mono, c in h.element.terms.items():
        if len(mono) == 0:
            continue
        a, b = (GENERATORS.index(g) for g in mono)
        c = complex(float(c.re), float(c.im)) * h.scale
        k = 1j * convention.sign * convention.bracket_scale
        m[b, a] += k * c
        m[a, b] += -k * c
    return m


def propagator(h: QuadraticHamiltonian, convention: Convention = Convention()) -> np.ndarray:
    return expm(flow_matrix(h, convention) * h.duration)


def round_to_signed_permutation(u: np.ndarray, tol: float = ROUNDING_TOLERANCE) -> CliffordMap:
    """Snap a propagator to a :class:`CliffordMap` or raise."""
    if np.max(np.abs(np.imag(u))) > tol:
        raise NotSignedPermutation(f"propagator is not real:\n{u}")
    real = np.real(u)
    rounded = np.rint(real)
    if np.max(np.abs(real - rounded)) > tol:
        raise NotSignedPermutation(f"propagator entries are not in {{-1, 0, 1}}:\n{real}")
    images = []
    for row in rounded:
        nz = np.flatnonzero(row)
        if len(nz) != 1 or abs(row[nz[0]]) != 1:
            raise NotSignedPermutation(f"row {row} is not a signed unit vector")
        images.append((GENERATORS[nz[0]], int(row[nz[0]])))
    try:
        return CliffordMap(tuple(images))
    except ValueError as exc:
        raise NotSignedPermutation(str(exc)) from None


def flow_map(h: QuadraticHamiltonian, convention: Convention = Convention()) -> CliffordMap:
    return round_to_signed_permutation(propagator(h, convention))


@functools.lru_cache(maxsize=None)
def calibrate_convention() -> Convention:
    """Pick the convention from the X Hamiltonian alone."""
    target = named_map("X")
    h = hamiltonian("X")
    for conv in CONVENTION_CANDIDATES:
        try:
            if flow_map(h, conv) == target:
                return conv
        except NotSignedPermutation:
            continue
    raise ConventionMismatch("no candidate convention maps H_X at t=pi/2 onto the X map")


def integrate_eom(h: QuadraticHamiltonian, convention: Convention | None = None) -> CliffordMap:
    """Integrate the generator flow and check it against the gate table.

    Without an explicit ``convention`` the one calibrated on H_X is used.
    """
    conv = calibrate_convention() if convention is None else convention
    m = flow_map(h, conv)
    if h.gate is not None and m != named_map(h.gate):
        raise ConventionMismatch(
            f"flow of H_{h.gate} for t={h.duration:.6g} under {conv} gives {m}, "
            f"table says {named_map(h.gate)}"
        )
    return m

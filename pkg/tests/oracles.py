"""Independent reference computations used only by the tests.

None of these import the code under test beyond plain data types: the Born
rule works on 2x2 sympy matrices, the Grassmann product is checked against
a matrix representation of three fermionic modes, and the family oracle
scans a rational grid directly.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy as sp

# -- Born rule ----------------------------------------------------------------

PAULI = {
    "X": sp.Matrix([[0, 1], [1, 0]]),
    "Y": sp.Matrix([[0, -sp.I], [sp.I, 0]]),
    "Z": sp.Matrix([[1, 0], [0, -1]]),
}
IDENT = sp.eye(2)

STABILIZER_BLOCH = {
    "+x": (1, 0, 0),
    "+y": (0, 1, 0),
    "+z": (0, 0, 1),
    "-x": (-1, 0, 0),
    "-y": (0, -1, 0),
    "-z": (0, 0, -1),
}


def density(bloch) -> sp.Matrix:
    a, b, c = (sp.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in bloch)
    return (IDENT + a * PAULI["X"] + b * PAULI["Y"] + c * PAULI["Z"]) / 2


def projector(pauli: str, outcome: int) -> sp.Matrix:
    return (IDENT + outcome * PAULI[pauli]) / 2


def born(bloch, pauli: str, outcome: int) -> Fraction:
    p = sp.nsimplify((density(bloch) * projector(pauli, outcome)).trace())
    return Fraction(int(p.p), int(p.q))


def conjugate_by(gate: str, bloch) -> tuple:
    """Bloch vector of U rho U^dagger for a named Clifford gate."""
    u = {
        "I": IDENT,
        "X": PAULI["X"],
        "Y": PAULI["Y"],
        "Z": PAULI["Z"],
        "H": (PAULI["X"] + PAULI["Z"]) / sp.sqrt(2),
    }[gate]
    rho = u * density(bloch) * u.H
    out = []
    for name in "XYZ":
        v = sp.nsimplify((rho * PAULI[name]).trace())
        out.append(Fraction(int(v.p), int(v.q)))
    return tuple(out)


# -- Grassmann product via fermionic modes -----------------------------------

_SM = sp.Matrix([[0, 1], [0, 0]])
_SZ = sp.Matrix([[1, 0], [0, -1]])


def _kron(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = sp.kronecker_product(out, m)
    return out


# Jordan-Wigner: three nilpotent, pairwise anticommuting 8x8 matrices
MODE = {
    "p": _kron(_SM, IDENT, IDENT),
    "q": _kron(_SZ, _SM, IDENT),
    "r": _kron(_SZ, _SZ, _SM),
}


def _scalar(c):
    if hasattr(c, "re") and hasattr(c, "im") and not isinstance(c, sp.Basic):
        re, im = Fraction(c.re), Fraction(c.im)
        return sp.Rational(re.numerator, re.denominator) + sp.I * sp.Rational(im.numerator, im.denominator)
    return sp.sympify(c)


def as_matrix(terms: dict) -> sp.Matrix:
    """``terms`` maps generator tuples (in any order) to coefficients."""
    out = sp.zeros(8, 8)
    for mono, c in terms.items():
        m = sp.eye(8)
        for g in mono:
            m = m * MODE[g]
        out += _scalar(c) * m
    return out


# -- constraint families by grid scan ----------------------------------------


def pair_block_feasible(w, x, y, z) -> bool:
    """The one-pair constraints written out literally."""
    a, b = w + y, x + y
    return (
        w + x + y + z == 1
        and a + b == 1
        and w + x + y == max(a, b)
        and y == min(a, b)
        and all(0 <= v <= 1 for v in (w, x, y, z))
    )


def grid(step: int):
    return [Fraction(k, step) for k in range(step + 1)]


def feasible_block_points(step: int = 8) -> list:
    return [p for p in product(grid(step), repeat=4) if pair_block_feasible(*p)]

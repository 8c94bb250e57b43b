"""Plain-text format for constraint systems.

Example::

    # one non-disjoint pair refined into four atoms
    name three-state
    atoms W X Y Z
    region A = W | Y
    region B = X | Y
    normalize all
    P(A) + P(B) = 1
    P(A | B) = max(P(A), P(B))
    P(A & B) = min(P(A), P(B))

Region operators are ``|`` (union), ``&`` (intersection), ``\\`` (difference)
and prefix ``~`` (complement); ``all`` and ``empty`` are the whole atom set
and the empty set.  Coefficients and right-hand sides are exact rationals.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .ontic import (
    Atom,
    Complement,
    ConstraintSystem,
    Difference,
    Empty,
    Everything,
    Intersection,
    LinearConstraint,
    MinMaxConstraint,
    Region,
    Union,
    _strip,
)


class DSLError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[|&\\~()=+\-*,]))"
)


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    text = text.replace("−", "-").replace("∪", "|").replace("∩", "&").replace("∖", "\\")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DSLError(f"unexpected character {text[pos:].strip()[0]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, atoms, macros):
        self.tokens = tokens
        self.i = 0
        self.atoms = atoms
        self.macros = macros

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise DSLError(f"expected {value or 'more input'}, got {tok[1]!r}")
        self.i += 1
        return tok

    def at_end(self):
        return self.i >= len(self.tokens)

    # region := term (('|' | '\') term)*
    def region(self) -> Region:
        left = self.region_term()
        while self.peek()[1] in ("|", "\\"):
            op = self.take()[1]
            right = self.region_term()
            left = Union(left, right) if op == "|" else Difference(left, right)
        return left

    def region_term(self) -> Region:
        left = self.region_factor()
        while self.peek()[1] == "&":
            self.take()
            left = Intersection(left, self.region_factor())
        return left

    def region_factor(self) -> Region:
        kind, val = self.peek()
        if val == "~":
            self.take()
            return Complement(self.region_factor())
        if val == "(":
            self.take()
            r = self.region()
            self.take(")")
            return r
        if kind == "name":
            self.take()
            if val == "all":
                return Everything()
            if val == "empty":
                return Empty()
            if val in self.macros:
                return self.macros[val]
            if val in self.atoms:
                return Atom(val)
            raise DSLError(f"unknown atom or region {val!r}")
        raise DSLError(f"expected a region, got {val!r}")

    def prob(self) -> Region:
        self.take("P")
        self.take("(")
        r = self.region()
        self.take(")")
        return r

    def number(self) -> Fraction:
        kind, val = self.take()
        if kind != "num":
            raise DSLError(f"expected a number, got {val!r}")
        return Fraction(val)

    def term(self):
        coef = Fraction(1)
        if self.peek()[0] == "num":
            coef = self.number()
            if self.peek()[1] == "*":
                self.take()
            elif self.peek()[1] != "P":
                return coef, None
        return coef, self.prob()

    def linear_side(self):
        sign = Fraction(1)
        if self.peek()[1] == "-":
            self.take()
            sign = Fraction(-1)
        terms = []
        const = Fraction(0)
        while True:
            coef, r = self.term()
            if r is None:
                const += sign * coef
            else:
                terms.append((sign * coef, r))
            op = self.peek()[1]
            if op not in ("+", "-"):
                return terms, const
            self.take()
            sign = Fraction(1 if op == "+" else -1)


def _statement(parser: _Parser, atoms):
    """Parse one equation line into a linear or min/max constraint."""
    lhs, lconst = parser.linear_side()
    parser.take("=")
    kind, val = parser.peek()
    if kind == "name" and val in ("max", "min"):
        if len(lhs) != 1 or lhs[0][0] != 1 or lconst != 0:
            raise DSLError("a min/max constraint needs a single P(...) on the left")
        parser.take()
        parser.take("(")
        first = parser.prob()
        parser.take(",")
        second = parser.prob()
        parser.take(")")
        return MinMaxConstraint(lhs[0][1], val, first, second)
    rhs, rconst = parser.linear_side()
    terms = list(lhs) + [(-c, r) for c, r in rhs]
    if not terms:
        raise DSLError("equation mentions no probabilities")
    return LinearConstraint(tuple(terms), rconst - lconst)


def parse_system(text: str) -> ConstraintSystem:
    """Build a :class:`ConstraintSystem` from DSL text."""
    atoms: list = []
    macros: dict = {}
    linear, minmax, normalization = [], [], []
    name = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "name":
                name = rest.strip()
            elif head == "atoms":
                new = rest.split()
                for a in new:
                    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", a) or a in ("all", "empty", "P"):
                        raise DSLError(f"bad atom label {a!r}")
                atoms.extend(new)
            elif head == "region":
                label, eq, expr = rest.partition("=")
                label = label.strip()
                if not eq or not label:
                    raise DSLError("expected 'region NAME = EXPR'")
                if label in atoms:
                    raise DSLError(f"region {label!r} shadows an atom")
                p = _Parser(_tokenize(expr), atoms, macros)
                macros[label] = p.region()
                if not p.at_end():
                    raise DSLError(f"trailing input after region {label!r}")
            elif head == "normalize":
                p = _Parser(_tokenize(rest), atoms, macros)
                normalization.append(p.region())
                if not p.at_end():
                    raise DSLError("trailing input after normalize")
            else:
                p = _Parser(_tokenize(line), atoms, macros)
                c = _statement(p, atoms)
                if not p.at_end():
                    raise DSLError(f"trailing input {p.peek()[1]!r}")
                (minmax if isinstance(c, MinMaxConstraint) else linear).append(c)
        except DSLError as exc:
            if exc.line is None:
                raise DSLError(str(exc), lineno) from None
            raise
    if not atoms:
        raise DSLError("no atoms declared")
    return ConstraintSystem(tuple(atoms), tuple(linear), tuple(minmax), tuple(normalization), name)


def to_dsl(sys: ConstraintSystem) -> str:
    """Render ``sys`` back to DSL text (regions written out in atoms)."""
    lines = []
    if sys.name:
        lines.append(f"name {sys.name}")
    lines.append("atoms " + " ".join(sys.atoms))
    for r in sys.normalization:
        lines.append(f"normalize {_strip(r)}")
    lines.extend(str(c) for c in sys.linear)
    lines.extend(str(c) for c in sys.minmax)
    return "\n".join(lines) + "\n"

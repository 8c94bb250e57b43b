"""Exact algebra over the three real anticommuting generators xi_p, xi_q, xi_r.

Elements are stored in a normal form: each monomial is keyed by its sorted
generator labels and the sign of the reordering is folded into the
coefficient.  Coefficients are exact complex rationals (:class:`ExactComplex`);
any other object supporting ``+``, ``-``, ``*``, ``== 0`` and ``conjugate()``
(for instance a sympy expression) is carried through unchanged, which is how
symbolic Bloch components are pushed through the generator maps.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

GENERATORS = ("p", "q", "r")

Monomial = tuple  # strictly increasing tuple of generator labels

# Order in which terms are printed, and the generator order used for each
# printed quadratic monomial (xi_r xi_q rather than the canonical xi_q xi_r).
_DISPLAY = (
    ((), ()),
    (("p",), ("p",)),
    (("q",), ("q",)),
    (("r",), ("r",)),
    (("q", "r"), ("r", "q")),
    (("p", "q"), ("p", "q")),
    (("p", "r"), ("p", "r")),
    (("p", "q", "r"), ("p", "q", "r")),
)


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"floats are not exact: {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class ExactComplex:
    """Complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _rational(self.re))
        object.__setattr__(self, "im", _rational(self.im))

    @classmethod
    def coerce(cls, value) -> "ExactComplex":
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, complex):
            return cls(_rational(value.real), _rational(value.imag))
        return cls(_rational(value))

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def is_imaginary(self) -> bool:
        return self.re == 0

    def __add__(self, other):
        try:
            other = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __sub__(self, other):
        try:
            other = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("division by zero")
        num = self * other.conjugate()
        return ExactComplex(num.re / den, num.im / den)

    def __eq__(self, other):
        if isinstance(other, ExactComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(float(self.re), float(self.im)) == other
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        return _format_coefficient(self)

    def __repr__(self):
        return f"ExactComplex({self.re}, {self.im})"


I = ExactComplex(0, 1)


def _coerce(c):
    if isinstance(c, (ExactComplex, int, Fraction, complex)):
        return ExactComplex.coerce(c)
    if isinstance(c, float):
        raise TypeError(f"floats are not exact: {c!r}")
    return c


def canonicalize(seq: Iterable[str]):
    """Sort a product of generators into increasing label order.

    Returns ``(monomial, sign)`` or ``None`` when a generator repeats, since
    every generator squares to zero.
    """
    seq = list(seq)
    for g in seq:
        if g not in GENERATORS:
            raise ValueError(f"unknown generator {g!r}")
    if len(set(seq)) != len(seq):
        return None
    sign = 1
    # bubble sort; each adjacent swap of two generators flips the sign
    for end in range(len(seq) - 1, 0, -1):
        for j in range(end):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return tuple(seq), sign


def _key(k) -> tuple:
    # "rq" and ("r", "q") both name xi_r xi_q
    return tuple(k)


class GrassmannElement:
    """Polynomial in xi_p, xi_q, xi_r kept in canonical normal form.

    ``terms`` keys may be any generator sequence, e.g. ``"rq"`` for
    xi_r xi_q or ``""`` for the unit; they are reordered on construction.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        acc: dict = {}
        for key, c in (terms or {}).items():
            canon = canonicalize(_key(key))
            if canon is None:
                continue
            mono, sign = canon
            c = _coerce(c)
            c = c if sign > 0 else -c
            acc[mono] = acc[mono] + c if mono in acc else c
        self._terms = {m: c for m, c in acc.items() if not _is_zero(c)}

    @classmethod
    def _from_canonical(cls, terms: dict) -> "GrassmannElement":
        obj = cls.__new__(cls)
        obj._terms = {m: c for m, c in terms.items() if not _is_zero(c)}
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def degrees(self) -> set:
        return {len(m) for m in self._terms}

    def is_homogeneous(self, degree: int) -> bool:
        return all(len(m) == degree for m in self._terms)

    def __add__(self, other):
        other = _as_element(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement._from_canonical({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_element(other)
        if other is None:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_element(other)
        if other is None:
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        other = _as_element(other)
        if other is None:
            return NotImplemented
        return multiply(other, self)

    def __eq__(self, other):
        other = _as_element(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"GrassmannElement({render(self)!r})"


def _is_zero(c) -> bool:
    try:
        return bool(c == 0)
    except TypeError:
        return False


def _as_element(x):
    if isinstance(x, GrassmannElement):
        return x
    if isinstance(x, float):
        return None
    if isinstance(x, (int, Fraction, complex, ExactComplex)):
        return GrassmannElement({(): x})
    if hasattr(x, "free_symbols"):  # sympy scalar
        return GrassmannElement({(): x})
    return None


def xi(label: str) -> GrassmannElement:
    """The generator xi_label as an element."""
    return GrassmannElement({(label,): 1})


ZERO = GrassmannElement()
ONE = GrassmannElement({(): 1})


def multiply(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    acc: dict = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            canon = canonicalize(ma + mb)
            if canon is None:
                continue
            mono, sign = canon
            c = ca * cb
            if sign < 0:
                c = -c
            acc[mono] = acc[mono] + c if mono in acc else c
    return GrassmannElement._from_canonical(acc)


def add(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    acc = dict(a._terms)
    for m, c in b._terms.items():
        acc[m] = acc[m] + c if m in acc else c
    return GrassmannElement._from_canonical(acc)


def scale(c, a: GrassmannElement) -> GrassmannElement:
    c = _coerce(c)
    return GrassmannElement._from_canonical({m: c * v for m, v in a._terms.items()})


def coefficient(a: GrassmannElement, mono: Iterable[str]):
    """Stored coefficient of a monomial given in any generator order.

    ``coefficient(a, "rq")`` is the coefficient multiplying xi_r xi_q, i.e.
    minus the canonical xi_q xi_r coefficient.
    """
    canon = canonicalize(_key(mono))
    if canon is None:
        return ExactComplex()
    m, sign = canon
    c = a._terms.get(m, ExactComplex())
    return c if sign > 0 else -c


def substitute_generators(a: GrassmannElement, m) -> GrassmannElement:
    """Replace every generator by its signed image under ``m``.

    ``m`` is a :class:`~grassmann_ontic.clifford.CliffordMap` or any mapping
    ``label -> (label, sign)``.
    """
    images = getattr(m, "image", m)
    acc: dict = {}
    for mono, c in a._terms.items():
        sign = 1
        seq = []
        for g in mono:
            target, s = images[g]
            seq.append(target)
            sign *= s
        canon = canonicalize(seq)
        if canon is None:
            continue
        new, s = canon
        sign *= s
        v = c if sign > 0 else -c
        acc[new] = acc[new] + v if new in acc else v
    return GrassmannElement._from_canonical(acc)


def conjugate(a: GrassmannElement) -> GrassmannElement:
    """Generalized conjugation: conjugate coefficients, reverse each monomial."""
    out = {}
    for mono, c in a._terms.items():
        k = len(mono)
        reversal = -1 if (k * (k - 1) // 2) % 2 else 1
        c = c.conjugate()
        out[mono] = c if reversal > 0 else -c
    return GrassmannElement._from_canonical(out)


# -- text form ---------------------------------------------------------------


def _format_rational(x: Fraction) -> str:
    return str(x)


def _format_coefficient(c) -> str:
    if not isinstance(c, ExactComplex):
        return f"({c})"
    if c.im == 0:
        return _format_rational(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_format_rational(c.im)}*i"
    op = "+" if c.im > 0 else "-"
    mag = abs(c.im)
    im = "i" if mag == 1 else f"{_format_rational(mag)}*i"
    return f"({_format_rational(c.re)} {op} {im})"


def _format_monomial(seq) -> str:
    return " ".join(f"xi_{g}" for g in seq)


def render(a: GrassmannElement) -> str:
    """Text form, e.g. ``1/2 + 1/2*i*xi_r xi_q``."""
    parts = []
    for mono, shown in _DISPLAY:
        if mono not in a._terms:
            continue
        c = a._terms[mono]
        _, sign = canonicalize(shown)
        if sign < 0:
            c = -c
        coef = _format_coefficient(c)
        if not mono:
            parts.append(coef)
        elif isinstance(c, ExactComplex) and c == 1:
            parts.append(_format_monomial(shown))
        elif isinstance(c, ExactComplex) and c == -1:
            parts.append("-" + _format_monomial(shown))
        else:
            parts.append(f"{coef}*{_format_monomial(shown)}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(xi_[pqr])|(i)\b|([-+*()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.replace("−", "-").strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {pos}: {text[pos:]!r}")
        num, gen, imag, op = m.groups()
        if num is not None:
            tokens.append(("num", Fraction(num)))
        elif gen is not None:
            tokens.append(("gen", gen[-1]))
        elif imag is not None:
            tokens.append(("i", None))
        else:
            tokens.append(("op", op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self) -> GrassmannElement:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = self.term()
        total = -total if sign < 0 else total
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                total = total + t if val == "+" else total - t
            else:
                return total

    def term(self) -> GrassmannElement:
        out = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                out = out * self.factor()
            elif kind in ("num", "gen", "i") or (kind == "op" and val == "("):
                out = out * self.factor()  # juxtaposition
            else:
                return out

    def factor(self) -> GrassmannElement:
        kind, val = self.take()
        if kind == "num":
            return GrassmannElement({(): val})
        if kind == "gen":
            return xi(val)
        if kind == "i":
            return GrassmannElement({(): I})
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return inner
        if kind == "op" and val == "-":
            return -self.factor()
        raise ParseError(f"unexpected token {val!r}")


def parse(text: str) -> GrassmannElement:
    """Parse the text form produced by :func:`render` (and general products)."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    p = _Parser(tokens)
    out = p.expr()
    if p.pos != len(tokens):
        raise ParseError(f"trailing input: {tokens[p.pos:]}")
    return out


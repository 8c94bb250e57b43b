"""Finite ontological models over disjoint atoms.

Regions are set expressions over a finite atom set; a distribution assigns an
exact weight to every atom and the probability of a region is the sum over
its atoms.  A :class:`ConstraintSystem` adds linear equalities and
``P(R) = max/min{P(R1), P(R2)}`` constraints; :func:`enumerate_families`
case-splits every min/max constraint and solves each branch exactly, giving
the parametric families of admitted distributions.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from ._linalg import Inconsistent, polytope_vertices, rank, solve_affine

HALF = Fraction(1, 2)


class UnknownAtom(KeyError):
    pass


class InfeasibleSystem(ValueError):
    pass


class ConstraintViolation(ValueError):
    pass


# -- regions -----------------------------------------------------------------


class Region:
    """Set expression over atoms; combine with ``| & - ~``."""

    def evaluate(self, atoms: Sequence[str]) -> frozenset:
        raise NotImplementedError

    def __or__(self, other):
        return Union(self, other)

    def __and__(self, other):
        return Intersection(self, other)

    def __sub__(self, other):
        return Difference(self, other)

    def __invert__(self):
        return Complement(self)


@dataclass(frozen=True)
class Atom(Region):
    label: str

    def evaluate(self, atoms):
        if self.label not in atoms:
            raise UnknownAtom(self.label)
        return frozenset((self.label,))

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Empty(Region):
    def evaluate(self, atoms):
        return frozenset()

    def __str__(self):
        return "empty"


@dataclass(frozen=True)
class Everything(Region):
    def evaluate(self, atoms):
        return frozenset(atoms)

    def __str__(self):
        return "all"


@dataclass(frozen=True)
class Union(Region):
    left: Region
    right: Region

    def evaluate(self, atoms):
        return self.left.evaluate(atoms) | self.right.evaluate(atoms)

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Intersection(Region):
    left: Region
    right: Region

    def evaluate(self, atoms):
        return self.left.evaluate(atoms) & self.right.evaluate(atoms)

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Difference(Region):
    left: Region
    right: Region

    def evaluate(self, atoms):
        return self.left.evaluate(atoms) - self.right.evaluate(atoms)

    def __str__(self):
        return f"({self.left} \\ {self.right})"


@dataclass(frozen=True)
class Complement(Region):
    inner: Region

    def evaluate(self, atoms):
        return frozenset(atoms) - self.inner.evaluate(atoms)

    def __str__(self):
        return f"~{self.inner}"


def union(*regions: Region) -> Region:
    out = regions[0]
    for r in regions[1:]:
        out = out | r
    return out


def atoms_region(*labels: str) -> Region:
    return union(*(Atom(lbl) for lbl in labels)) if labels else Empty()


# -- distributions -----------------------------------------------------------


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"floats are not exact: {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class AtomDistribution:
    """Exact weights on an ordered atom set."""

    atoms: tuple
    weights: tuple

    def __post_init__(self):
        atoms = tuple(self.atoms)
        weights = tuple(_rational(w) for w in self.weights)
        if len(atoms) != len(weights):
            raise ValueError("one weight per atom required")
        if len(set(atoms)) != len(atoms):
            raise ValueError(f"duplicate atoms in {atoms}")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_mapping(cls, atoms: Sequence[str], weights: Mapping) -> "AtomDistribution":
        unknown = set(weights) - set(atoms)
        if unknown:
            raise UnknownAtom(sorted(unknown)[0])
        return cls(tuple(atoms), tuple(weights.get(a, 0) for a in atoms))

    def __getitem__(self, label: str) -> Fraction:
        try:
            return self.weights[self.atoms.index(label)]
        except ValueError:
            raise UnknownAtom(label) from None

    def as_dict(self) -> dict:
        return dict(zip(self.atoms, self.weights))

    def __str__(self):
        return "(" + ", ".join(str(w) for w in self.weights) + ")"

    def to_record(self) -> dict:
        from .serialize import rational_to_record

        return {"atoms": list(self.atoms), "weights": [rational_to_record(w) for w in self.weights]}


def mix(entries) -> AtomDistribution:
    """Plain componentwise mixture, ignoring every constraint."""
    entries = list(entries)
    atoms = entries[0][1].atoms
    total = [Fraction(0)] * len(atoms)
    for w, d in entries:
        if d.atoms != atoms:
            raise ValueError("distributions live on different atom sets")
        for i, v in enumerate(d.weights):
            total[i] += _rational(w) * v
    return AtomDistribution(atoms, tuple(total))


def region_probability(d: AtomDistribution, r: Region) -> Fraction:
    members = r.evaluate(d.atoms)
    return sum((w for a, w in zip(d.atoms, d.weights) if a in members), Fraction(0))


@dataclass
class KolmogorovReport:
    violations: list = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed


def _subsets(atoms):
    for k in range(len(atoms) + 1):
        for combo in combinations(atoms, k):
            yield frozenset(combo)


def check_kolmogorov(
    d: AtomDistribution,
    normalization: Iterable[Region] | None = None,
    samples: int = 64,
    seed: int = 0,
) -> KolmogorovReport:
    """Check the probability axioms and their usual consequences.

    ``normalization`` lists the regions that must carry probability one
    (the whole atom set by default).  Sum rule and monotonicity are checked
    on every pair of regions for up to four atoms, and on ``samples`` seeded
    random pairs otherwise.
    """
    report = KolmogorovReport()
    atoms = d.atoms
    weights = d.as_dict()

    def prob(s):
        return sum((weights[a] for a in s), Fraction(0))

    def fail(axiom, detail):
        report.violations.append(f"{axiom}: {detail}")

    for a, w in weights.items():
        report.checked += 1
        if w < 0:
            fail("non-negativity", f"P({a}) = {w}")
    regions = [Everything()] if normalization is None else list(normalization)
    for r in regions:
        report.checked += 1
        p = region_probability(d, r)
        if p != 1:
            fail("normalization", f"P({r}) = {p}")
    report.checked += 1
    if region_probability(d, Empty()) != 0:
        fail("empty set", "P(empty) != 0")

    if len(atoms) <= 4:
        pairs = list(product(list(_subsets(atoms)), repeat=2))
    else:
        rng = random.Random(seed)
        pairs = []
        for _ in range(samples):
            a = frozenset(x for x in atoms if rng.random() < 0.5)
            b = frozenset(x for x in atoms if rng.random() < 0.5)
            pairs.append((a, b))
            pairs.append((a, a & b))
    for a, b in pairs:
        report.checked += 1
        # additivity over the atoms making up the region
        if prob(a) != sum((prob(frozenset((x,))) for x in a), Fraction(0)):
            fail("sigma-additivity", f"region {sorted(a)}")
        if prob(a | b) != prob(a) + prob(b) - prob(a & b):
            fail("sum rule", f"{sorted(a)}, {sorted(b)}")
        if b <= a:
            if prob(b) > prob(a):
                fail("monotonicity", f"P({sorted(b)}) > P({sorted(a)})")
            if prob(a - b) != prob(a) - prob(b):
                fail("monotonicity", f"P(A \\ B) != P(A) - P(B) for {sorted(a)}, {sorted(b)}")
    return report


# -- constraint systems ------------------------------------------------------


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(coef * P(region)) == rhs``."""

    terms: tuple
    rhs: Fraction

    def __str__(self):
        out = []
        for c, r in self.terms:
            c = Fraction(c)
            s = f"P({_strip(r)})" if abs(c) == 1 else f"{abs(c)}*P({_strip(r)})"
            if not out:
                out.append(("-" if c < 0 else "") + s)
            else:
                out.append(("- " if c < 0 else "+ ") + s)
        return f"{' '.join(out)} = {self.rhs}"


@dataclass(frozen=True)
class MinMaxConstraint:
    """``P(target) == kind{P(first), P(second)}`` with kind "max" or "min"."""

    target: Region
    kind: str
    first: Region
    second: Region

    def __post_init__(self):
        if self.kind not in ("max", "min"):
            raise ValueError(f"kind must be 'max' or 'min', not {self.kind!r}")

    def __str__(self):
        return f"P({_strip(self.target)}) = {self.kind}(P({_strip(self.first)}), P({_strip(self.second)}))"


def _strip(r: Region) -> str:
    s = str(r)
    if s.startswith("(") and s.endswith(")"):
        depth = 0
        for i, ch in enumerate(s):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0 and i < len(s) - 1:
                return s
        return s[1:-1]
    return s


@dataclass(frozen=True)
class ConstraintSystem:
    """Linear and min/max constraints over the region probabilities of ``atoms``.

    Every atom weight is implicitly confined to [0, 1]; each region in
    ``normalization`` carries probability one.
    """

    atoms: tuple
    linear: tuple = ()
    minmax: tuple = ()
    normalization: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "linear", tuple(self.linear))
        object.__setattr__(self, "minmax", tuple(self.minmax))
        object.__setattr__(self, "normalization", tuple(self.normalization))
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError(f"duplicate atoms in {self.atoms}")
        for c in self.linear:
            for _, r in c.terms:
                r.evaluate(self.atoms)
        for c in self.minmax:
            for r in (c.target, c.first, c.second):
                r.evaluate(self.atoms)
        for r in self.normalization:
            r.evaluate(self.atoms)

    def vector(self, r: Region) -> tuple:
        members = r.evaluate(self.atoms)
        return tuple(Fraction(1 if a in members else 0) for a in self.atoms)

    @functools.cached_property
    def linear_rows(self) -> tuple:
        """Atom-space rows ``(coeffs, rhs)`` of every equality, normalization included."""
        rows = []
        for r in self.normalization:
            rows.append((self.vector(r), Fraction(1)))
        for c in self.linear:
            coeffs = [Fraction(0)] * len(self.atoms)
            for k, r in c.terms:
                for i, v in enumerate(self.vector(r)):
                    coeffs[i] += Fraction(k) * v
            rows.append((tuple(coeffs), Fraction(c.rhs)))
        return tuple(rows)

    @functools.cached_property
    def _minmax_vectors(self) -> tuple:
        return tuple(
            (c.kind, self.vector(c.target), self.vector(c.first), self.vector(c.second)) for c in self.minmax
        )

    def violations(self, d) -> list:
        """Human-readable list of every constraint ``d`` breaks."""
        w = d.weights if isinstance(d, AtomDistribution) else tuple(d)
        if isinstance(d, AtomDistribution) and d.atoms != self.atoms:
            raise ValueError("distribution and system use different atoms")
        out = []
        for a, v in zip(self.atoms, w):
            if not 0 <= v <= 1:
                out.append(f"P({a}) = {v} outside [0, 1]")
        for coeffs, rhs in self.linear_rows:
            lhs = sum((c * v for c, v in zip(coeffs, w)), Fraction(0))
            if lhs != rhs:
                out.append(f"linear row {coeffs} gives {lhs} != {rhs}")
        for c, (kind, t, f, s) in zip(self.minmax, self._minmax_vectors):
            pt = _dot(t, w)
            pf = _dot(f, w)
            ps = _dot(s, w)
            want = max(pf, ps) if kind == "max" else min(pf, ps)
            if pt != want:
                out.append(f"{c} fails: {pt} != {want}")
        return out

    def satisfied_by(self, d) -> bool:
        w = d.weights if isinstance(d, AtomDistribution) else tuple(d)
        if any(not 0 <= v <= 1 for v in w):
            return False
        for coeffs, rhs in self.linear_rows:
            if _dot(coeffs, w) != rhs:
                return False
        for kind, t, f, s in self._minmax_vectors:
            pf = _dot(f, w)
            ps = _dot(s, w)
            if _dot(t, w) != (max(pf, ps) if kind == "max" else min(pf, ps)):
                return False
        return True


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x), Fraction(0))


# -- solution families -------------------------------------------------------


def _fmt_affine(const: Fraction, coefs: dict, names: Sequence[str]) -> str:
    parts = []
    if const != 0 or not coefs:
        parts.append(str(const))
    for j, c in coefs.items():
        if c == 0:
            continue
        mag = abs(c)
        term = names[j] if mag == 1 else f"{mag}*{names[j]}"
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(("- " if c < 0 else "+ ") + term)
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SolutionFamily:
    """Affine family of distributions from one min/max branch.

    Parameters are the free atom weights, in atom order.  Two families are
    equal when they describe the same set, i.e. have the same vertices.
    """

    atoms: tuple
    parameters: tuple
    expressions: tuple = field(compare=False)  # per atom: (const, ((param index, coef), ...))
    vertices: tuple = ()
    equalities: tuple = field(default=(), compare=False, repr=False)
    inequalities: tuple = field(default=(), compare=False, repr=False)
    branch: tuple = field(default=(), compare=False)

    @property
    def dimension(self) -> int:
        if len(self.vertices) <= 1:
            return 0
        base = self.vertices[0]
        return rank([tuple(a - b for a, b in zip(v, base)) for v in self.vertices[1:]])

    @property
    def ranges(self) -> dict:
        out = {}
        for name in self.parameters:
            i = self.atoms.index(name)
            vals = [v[i] for v in self.vertices]
            out[name] = (min(vals), max(vals))
        return out

    def affine_map(self) -> dict:
        """``atom -> (const, {parameter: coef})``."""
        return {
            a: (const, {self.parameters[j]: c for j, c in coefs})
            for a, (const, coefs) in zip(self.atoms, self.expressions)
        }

    def contains(self, d) -> bool:
        w = d.weights if isinstance(d, AtomDistribution) else tuple(d)
        for coeffs, rhs in self.equalities:
            if _dot(coeffs, w) != rhs:
                return False
        return all(_dot(coeffs, w) >= b for coeffs, b in self.inequalities)

    def point(self, values) -> AtomDistribution:
        """Instantiate at parameter ``values`` (mapping or sequence)."""
        if isinstance(values, Mapping):
            values = [values[p] for p in self.parameters]
        values = [_rational(v) for v in values]
        if len(values) != len(self.parameters):
            raise ValueError(f"expected {len(self.parameters)} parameter values")
        weights = []
        for const, coefs in self.expressions:
            weights.append(const + sum((c * values[j] for j, c in coefs), Fraction(0)))
        d = AtomDistribution(self.atoms, tuple(weights))
        if not self.contains(d):
            raise ValueError(f"parameters {values} lie outside the family")
        return d

    def vertex_distributions(self) -> list:
        return [AtomDistribution(self.atoms, v) for v in self.vertices]

    def render(self, names: Mapping[str, str] | None = None) -> str:
        names = names or {}
        shown = [names.get(p, p) for p in self.parameters]
        return "(" + ", ".join(
            _fmt_affine(const, dict(coefs), shown) for const, coefs in self.expressions
        ) + ")"

    def __str__(self):
        return self.render()

    def to_record(self) -> dict:
        from .serialize import encode

        return {
            "parameters": list(self.parameters),
            "ranges": encode({k: list(v) for k, v in self.ranges.items()}),
            "form": self.render(),
            "vertices": encode([list(v) for v in self.vertices]),
            "branch": list(self.branch),
        }


def _build_family(atoms, eqs, ineqs, branch=()) -> SolutionFamily | None:
    n = len(atoms)
    try:
        free, exprs = solve_affine(eqs, n)
    except Inconsistent:
        return None
    pos = {j: k for k, j in enumerate(free)}
    param_ineqs = set()
    for coeffs, b in ineqs:
        const = Fraction(0)
        a = [Fraction(0)] * len(free)
        for j, cj in enumerate(coeffs):
            if cj == 0:
                continue
            e_const, e_coefs = exprs[j]
            const += cj * e_const
            for f, v in e_coefs.items():
                a[pos[f]] += cj * v
        bb = Fraction(b) - const
        if all(v == 0 for v in a):
            if bb > 0:
                return None
            continue
        norm = abs(next(v for v in a if v != 0))
        param_ineqs.add((tuple(v / norm for v in a), bb / norm))
    verts = polytope_vertices(sorted(param_ineqs), len(free))
    if not verts:
        return None

    def at(theta):
        return tuple(
            e_const + sum((v * theta[pos[f]] for f, v in e_coefs.items()), Fraction(0))
            for e_const, e_coefs in exprs
        )

    expressions = tuple(
        (e_const, tuple(sorted((pos[f], v) for f, v in e_coefs.items() if v != 0)))
        for e_const, e_coefs in exprs
    )
    return SolutionFamily(
        atoms=tuple(atoms),
        parameters=tuple(atoms[j] for j in free),
        expressions=expressions,
        vertices=tuple(sorted(set(at(t) for t in verts))),
        equalities=tuple((tuple(c), Fraction(b)) for c, b in eqs),
        inequalities=tuple((tuple(c), Fraction(b)) for c, b in ineqs),
        branch=tuple(branch),
    )


def _unit(n, j, sign=1):
    return tuple(Fraction(sign if i == j else 0) for i in range(n))


def _bound_rows(n):
    rows = []
    for j in range(n):
        rows.append((_unit(n, j), Fraction(0)))
        rows.append((_unit(n, j, -1), Fraction(-1)))
    return rows


def _branch_rows(sys: ConstraintSystem, branch):
    eqs = list(sys.linear_rows)
    ineqs = []
    for c, side in zip(sys.minmax, branch):
        t, f, s = sys.vector(c.target), sys.vector(c.first), sys.vector(c.second)
        chosen, other = (f, s) if side == 0 else (s, f)
        eqs.append((tuple(a - b for a, b in zip(t, chosen)), Fraction(0)))
        if c.kind == "max":
            ineqs.append((tuple(a - b for a, b in zip(chosen, other)), Fraction(0)))
        else:
            ineqs.append((tuple(b - a for a, b in zip(chosen, other)), Fraction(0)))
    ineqs.extend(_bound_rows(len(sys.atoms)))
    return eqs, ineqs


def _family_key(f: SolutionFamily):
    return (tuple(f.atoms.index(p) for p in f.parameters), f.vertices)


def _contained(f: SolutionFamily, g: SolutionFamily) -> bool:
    return all(g.contains(v) for v in f.vertices)


def enumerate_families(sys: ConstraintSystem) -> list:
    """All parametric solution families of ``sys``, one per maximal branch.

    Each min/max constraint is split into its two branches (the chosen side
    must dominate the other); every branch is solved exactly and families
    contained in another family are merged away.
    """
    candidates = []
    for branch in product((0, 1), repeat=len(sys.minmax)):
        eqs, ineqs = _branch_rows(sys, branch)
        labels = []
        for c, side in zip(sys.minmax, branch):
            labels.append(f"{c.kind}={_strip(c.first if side == 0 else c.second)}")
        fam = _build_family(sys.atoms, eqs, ineqs, labels)
        if fam is not None:
            candidates.append(fam)
    if not candidates:
        raise InfeasibleSystem(f"no branch of {sys.name or 'the system'} is satisfiable")

    candidates.sort(key=lambda f: (-f.dimension, _family_key(f)))
    kept = []
    for f in candidates:
        if not any(_contained(f, g) for g in kept):
            kept.append(f)
    # a same-dimension family may be swallowed by one seen later
    final = [
        f
        for i, f in enumerate(kept)
        if not any(j != i and _contained(f, g) and (not _contained(g, f) or j < i) for j, g in enumerate(kept))
    ]
    return sorted(final, key=_family_key)


def intersect_families(families: Sequence[SolutionFamily]) -> SolutionFamily | None:
    """Set of distributions common to every family (``None`` if empty)."""
    atoms = families[0].atoms
    eqs = [row for f in families for row in f.equalities]
    ineqs = [row for f in families for row in f.inequalities]
    return _build_family(atoms, eqs, ineqs, ("intersection",))


@dataclass(frozen=True)
class ConvexityVerdict:
    convex: bool
    counterexample: tuple | None = None  # (d1, d2) whose midpoint violates the system

    def __bool__(self):
        return self.convex


def _samples(f: SolutionFamily) -> list:
    pts = list(f.vertices)
    seen = set(pts)
    for theta in product((Fraction(0), HALF, Fraction(1)), repeat=len(f.parameters)):
        values = list(theta)
        w = []
        for const, coefs in f.expressions:
            w.append(const + sum((c * values[j] for j, c in coefs), Fraction(0)))
        w = tuple(w)
        if w not in seen and f.contains(w):
            seen.add(w)
            pts.append(w)
    return pts


def is_single_convex_set(families: Sequence[SolutionFamily], sys: ConstraintSystem) -> ConvexityVerdict:
    """Whether the union of ``families`` is convex under plain mixing.

    Midpoints of every cross-family pair of vertices and of the interior
    samples (parameters in {0, 1/2, 1}) are checked against ``sys``; the
    first failing pair is returned as the counterexample.
    """
    pts = [_samples(f) for f in families]
    for i, j in combinations(range(len(families)), 2):
        for u in pts[i]:
            for v in pts[j]:
                mid = tuple((a + b) / 2 for a, b in zip(u, v))
                if not sys.satisfied_by(mid):
                    return ConvexityVerdict(
                        False, (AtomDistribution(sys.atoms, u), AtomDistribution(sys.atoms, v))
                    )
    return ConvexityVerdict(True)


# -- non-disjoint mixing -----------------------------------------------------


@dataclass(frozen=True)
class PairBlock:
    """Disjoint refinement of one non-disjoint pair A, B.

    ``w = A minus B``, ``x = B minus A``, ``y = A and B``, ``z`` = rest of
    the block.
    """

    w: str
    x: str
    y: str
    z: str

    @property
    def labels(self) -> tuple:
        return (self.w, self.x, self.y, self.z)

    @property
    def region_a(self) -> Region:
        return Atom(self.w) | Atom(self.y)

    @property
    def region_b(self) -> Region:
        return Atom(self.x) | Atom(self.y)


def nondisjoint_convex_combine(blocks: Sequence[PairBlock], entries, system: ConstraintSystem | None = None):
    """Mix distributions through the coarse states of each block.

    Per block the probabilities of A and B mix linearly; the union and
    intersection then follow from the max/min rule and are converted back to
    the four atoms.  Atoms outside every block mix linearly.
    """
    entries = [(_rational(w), d) for w, d in entries]
    if not entries:
        raise ValueError("empty mixture")
    if any(w < 0 for w, _ in entries) or sum(w for w, _ in entries) != 1:
        raise ValueError("weights must be non-negative and sum to one")
    if system is not None:
        for _, d in entries:
            bad = system.violations(d)
            if bad:
                raise ConstraintViolation(f"{d} violates the system: {bad[0]}")
    linear = mix(entries)
    out = linear.as_dict()
    for b in blocks:
        pa = sum((w * region_probability(d, b.region_a) for w, d in entries), Fraction(0))
        pb = sum((w * region_probability(d, b.region_b) for w, d in entries), Fraction(0))
        total = sum((out[a] for a in b.labels), Fraction(0))
        lo, hi = min(pa, pb), max(pa, pb)
        out[b.w] = pa - lo
        out[b.x] = pb - lo
        out[b.y] = lo
        out[b.z] = total - hi
    return AtomDistribution.from_mapping(linear.atoms, out)

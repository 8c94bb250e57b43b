"""Small exact linear algebra over Fractions."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations


class Inconsistent(ValueError):
    pass


def solve_affine(rows, n: int, prefer_late_pivots: bool = True):
    """Solve ``A x = b`` exactly.

    ``rows`` is a list of ``(coeffs, rhs)`` with ``len(coeffs) == n``.
    Returns ``(free, exprs)``: the free variable indices and, for each of
    the ``n`` variables, an affine expression ``(const, {free_index: coef})``.
    Pivots are taken from the highest column index first so that the free
    variables are the earliest ones.
    """
    order = list(range(n - 1, -1, -1)) if prefer_late_pivots else list(range(n))
    mat = [[Fraction(c) for c in coeffs] + [Fraction(rhs)] for coeffs, rhs in rows]
    pivots = []
    r = 0
    for col in order:
        pr = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][col]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append((r, col))
        r += 1
        if r == len(mat):
            break
    for i in range(r, len(mat)):
        if mat[i][n] != 0 and all(v == 0 for v in mat[i][:n]):
            raise Inconsistent("linear system has no solution")
    pivot_cols = {col for _, col in pivots}
    free = [j for j in range(n) if j not in pivot_cols]
    exprs = [None] * n
    for j in free:
        exprs[j] = (Fraction(0), {j: Fraction(1)})
    for row, col in pivots:
        const = mat[row][n]
        coefs = {j: -mat[row][j] for j in free if mat[row][j] != 0}
        exprs[col] = (const, coefs)
    return free, exprs


def solve_square(a, b):
    """Unique solution of a square system, or ``None`` if singular."""
    n = len(a)
    mat = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        pr = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if pr is None:
            return None
        mat[col], mat[pr] = mat[pr], mat[col]
        pv = mat[col][col]
        mat[col] = [v / pv for v in mat[col]]
        for i in range(n):
            if i != col and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[col])]
    return [mat[i][n] for i in range(n)]


def rank(vectors) -> int:
    mat = [[Fraction(v) for v in vec] for vec in vectors]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        for i in range(r + 1, len(mat)):
            if mat[i][col] != 0:
                f = mat[i][col] / mat[r][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return r


def polytope_vertices(inequalities, dim: int):
    """Vertices of ``{t : a . t >= b}`` for a bounded system.

    Brute force over ``dim``-subsets of tight constraints; fine at the
    handful-of-parameters scale used here.
    """
    if dim == 0:
        if all(b <= 0 for _, b in inequalities):
            return [()]
        return []
    found = set()
    for combo in combinations(inequalities, dim):
        sol = solve_square([a for a, _ in combo], [b for _, b in combo])
        if sol is None:
            continue
        if all(sum(ai * ti for ai, ti in zip(a, sol)) >= b for a, b in inequalities):
            found.add(tuple(sol))
    return sorted(found)

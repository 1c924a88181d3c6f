"""Exact Gaussian elimination over Q.

Dense helpers take lists of lists; ``sparse_rank`` takes rows as
``{column: value}`` dicts, which is what the homology oracle produces.
"""

from __future__ import annotations

from fractions import Fraction


def rref(matrix):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix, ncols: int | None = None):
    """Basis of {v : matrix @ v == 0}."""
    if not matrix:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m, pivots = rref(matrix)
    n = len(m[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_in_span(vectors, target):
    """Coefficients c with sum(c_i * vectors[i]) == target, or None."""
    if not vectors:
        return [] if not any(target) else None
    n = len(target)
    # columns are the vectors; augmented with target
    aug = [[vectors[j][i] for j in range(len(vectors))] + [target[i]] for i in range(n)]
    m, pivots = rref(aug)
    k = len(vectors)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for row, pc in zip(m, pivots):
        coeffs[pc] = row[k]
    return coeffs


def sparse_rank(rows) -> int:
    """Rank of a matrix given as an iterable of sparse rows ``{col: value}``."""
    pivot_rows: dict[int, dict[int, Fraction]] = {}
    r = 0
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            c = min(row)
            if c not in pivot_rows:
                inv = 1 / row[c]
                pivot_rows[c] = {k: v * inv for k, v in row.items()}
                r += 1
                break
            f = row[c]
            for k, v in pivot_rows[c].items():
                s = row.get(k, 0) - f * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
    return r

"""Exact linear algebra over a coefficient field, and integer lattices."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def rref(rows: Sequence[Sequence], field, ncols: int | None = None):
    """Reduced row echelon form.  Returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.one / m[r][c]
        m[r] = [v * inv for v in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                m[i] = [a - f * b if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], field) -> int:
    if not rows:
        return 0
    return len(rref(rows, field)[1])


def nullspace(rows: Sequence[Sequence], field, ncols: int) -> list[list]:
    """Basis of {v : rows @ v = 0}."""
    red, pivots = rref(rows, field, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, field, ncols: int):
    """One solution of rows @ v = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field, ncols + 1)
    if ncols in pivots:
        return None
    v = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        v[pc] = red[r][ncols]
    return v


def det(matrix: Sequence[Sequence], field):
    m = [list(r) for r in matrix]
    n = len(m)
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result = result * m[c][c]
        inv = field.one / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def independent_subset(vectors: Sequence[Sequence], field) -> list[int]:
    """Indices of a maximal linearly independent prefix-greedy subset."""
    chosen = []
    basis_rows: list[list] = []
    for idx, v in enumerate(vectors):
        trial = basis_rows + [list(v)]
        if rank(trial, field) > len(basis_rows):
            basis_rows.append(list(v))
            chosen.append(idx)
    return chosen


# integer lattices -----------------------------------------------------------------


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z-basis of {v in Z^n : matrix @ v = 0} by unimodular column reduction."""
    a = [list(map(int, r)) for r in matrix]
    n = ncols
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # columns of U

    def colop(j, k, q):  # col_j -= q * col_k
        for r in a:
            r[j] -= q * r[k]
        for r in u:
            r[j] -= q * r[k]

    def swap(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in u:
            r[j], r[k] = r[k], r[j]

    col = 0
    for row in range(len(a)):
        if col >= n:
            break
        while True:
            nz = [j for j in range(col, n) if a[row][j]]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(a[row][j]))
            swap(col, jmin)
            done = True
            for j in range(col + 1, n):
                if a[row][j]:
                    colop(j, col, a[row][j] // a[row][col])
                    if a[row][j]:
                        done = False
            if done:
                break
        if any(a[row][j] for j in range(col, n)):
            col += 1
    basis = [[u[i][j] for i in range(n)] for j in range(col, n)]
    return hermite_rows(basis)


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form (canonical basis of the row lattice)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    n = len(m[0])
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c]]
            if not nz:
                break
            imin = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[imin] = m[imin], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c]:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m[:r]]


def saturate(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z^n intersected with the Q-span of ``rows``."""
    from .fields import QQ

    if not rows:
        return []
    qrows = [[Fraction(x) for x in r] for r in rows]
    # orthogonal complement of the span, cleared to integers
    comp = nullspace(qrows, QQ, ncols)
    if not comp:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    int_comp = []
    for v in comp:
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        int_comp.append([int(x * den) for x in v])
    return integer_kernel(int_comp, ncols)

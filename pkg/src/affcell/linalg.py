"""Exact dense linear algebra over a :class:`~affcell.fields.FieldSpec`.

Matrices are lists of rows. Nothing here uses floating point.
"""
from __future__ import annotations

from typing import Sequence


def zeros(field, rows: int, cols: int) -> list[list]:
    z = field.zero
    return [[z] * cols for _ in range(rows)]


def identity(field, n: int) -> list[list]:
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*a)] if a else []


def matmul(a, b, field) -> list[list]:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = zeros(field, n, m)
    for i in range(n):
        row = a[i]
        oi = out[i]
        for t in range(k):
            c = row[t]
            if c != 0:
                bt = b[t]
                for j in range(m):
                    if bt[j] != 0:
                        oi[j] = oi[j] + c * bt[j]
    return out


def matvec(a, v, field) -> list:
    z = field.zero
    out = []
    for row in a:
        s = z
        for c, x in zip(row, v):
            if c != 0 and x != 0:
                s = s + c * x
        out.append(s)
    return out


def rref(a, field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pr = m[r]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, field) -> int:
    return len(rref(a, field)[1])


def nullspace(a, field, ncols: int | None = None) -> list[list]:
    """Basis of ``{v : a v = 0}``."""
    if not a:
        n = ncols or 0
        return identity(field, n)
    ncols = len(a[0])
    r, pivots = rref(a, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(a, b, field) -> list | None:
    """One solution of ``a x = b`` or ``None`` when inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = r[i][ncols]
    return x


def inverse(a, field) -> list[list] | None:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(field, n))]
    r, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in r[:n]]


def det(a, field):
    m = [list(r) for r in a]
    n = len(m)
    d = field.one
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return field.zero
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


class IncrementalBasis:
    """Row-echelon span that reports linear dependencies as vectors arrive.

    Each stored row carries its expression in terms of the inputs, so
    :meth:`add` returns the coefficients of a dependency the moment one
    appears.
    """

    def __init__(self, field, dim: int):
        self.field = field
        self.dim = dim
        self.rows: list[tuple[int, list, list]] = []  # (pivot, reduced vector, combination)
        self.count = 0

    def add(self, v: Sequence) -> list | None:
        """Insert ``v``; return ``c`` with ``sum c_i v_i == 0`` (``c[-1] == 1``) if dependent."""
        f = self.field
        k = self.count
        self.count += 1
        vec = list(v)
        comb = [f.zero] * (k + 1)
        comb[k] = f.one
        for pivot, row, rcomb in self.rows:
            c = vec[pivot]
            if c != 0:
                vec = [x - c * y for x, y in zip(vec, row)]
                for i, y in enumerate(rcomb):
                    if y != 0:
                        comb[i] = comb[i] - c * y
        pivot = next((i for i, x in enumerate(vec) if x != 0), None)
        if pivot is None:
            return comb
        inv = 1 / vec[pivot]
        self.rows.append((pivot, [x * inv for x in vec], [x * inv for x in comb]))
        return None

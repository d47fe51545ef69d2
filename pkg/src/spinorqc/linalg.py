"""Exact Gaussian elimination over Q[sqrt 2].

Vectors are sparse mappings key -> Scalar (blade masks, blade tuples, ...).
"""

from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence

from .scalar import ZERO, Scalar


def _dense(vectors: Sequence[Mapping[Hashable, object]], extra=()):
    keys = sorted({k for v in list(vectors) + list(extra) for k in v})
    return keys, [[Scalar.coerce(v.get(k, ZERO)) for k in keys] for v in vectors]


def _eliminate(rows: list[list[Scalar]]) -> list[list[Scalar]]:
    """Row-reduce in place; returns the nonzero echelon rows."""
    rows = [r[:] for r in rows]
    out = []
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rows and col < ncols:
        pivot = next((r for r in rows if r[col]), None)
        if pivot is None:
            col += 1
            continue
        rows.remove(pivot)
        inv = pivot[col].inverse()
        pivot = [x * inv for x in pivot]
        for i, r in enumerate(rows):
            if r[col]:
                f = r[col]
                rows[i] = [a - f * b for a, b in zip(r, pivot)]
        out.append(pivot)
        col += 1
    return out


def rank(vectors: Sequence[Mapping[Hashable, object]]) -> int:
    if not vectors:
        return 0
    _, rows = _dense(vectors)
    return len(_eliminate(rows))


def solve(columns: Sequence[Mapping[Hashable, object]], target: Mapping[Hashable, object]):
    """Coefficients x with sum_j x_j * columns[j] == target, or None.

    ``columns`` must be linearly independent.
    """
    keys, cols = _dense(columns, extra=[target])
    n = len(cols)
    b = [Scalar.coerce(target.get(k, ZERO)) for k in keys]
    # augmented system rows: one per key
    aug = [[cols[j][i] for j in range(n)] + [b[i]] for i in range(len(keys))]
    x = [ZERO] * n
    rows = aug
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            raise ValueError("columns are linearly dependent")
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[r])]
        pivots.append(r)
        r += 1
    if any(row[n] for row in rows[r:]):
        return None
    for c, pr in enumerate(pivots):
        x[c] = rows[pr][n]
    return x

"""Row reduction and subspace arithmetic over GF(q), on integer code arrays.

All matrices are numpy int64 arrays of field codes; the FieldContext supplies
the lookup tables.  Echelon forms are fully reduced (RREF), so a subspace has
exactly one basis matrix and equality is array equality.
"""

from __future__ import annotations

import numpy as np


def rref(ctx, rows):
    """Reduced row echelon form.  Returns (matrix, pivot_columns)."""
    m = np.asarray(rows, dtype=np.int64)
    if m.ndim != 2:
        m = m.reshape(-1, m.shape[-1]) if m.size else np.zeros((0, 0), np.int64)
    r = RowReducer(ctx, m.shape[1])
    r.add_rows(m)
    return r.matrix(), tuple(r.pivots())


class RowReducer:
    """Incremental RREF accumulator: O(rank * width) memory however many rows stream in."""

    def __init__(self, ctx, width: int):
        self.ctx = ctx
        self.width = width
        self._rows = {}  # pivot column -> reduced row

    def add_row(self, row) -> bool:
        """Reduce a row against the accumulator; returns True if it added rank."""
        ctx = self.ctx
        row = np.asarray(row, dtype=np.int64).copy()
        for piv, prow in self._rows.items():
            f = row[piv]
            if f:
                row = ctx.sub_table[row, ctx.mul_table[f, prow]]
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        row = ctx.mul_table[ctx.inv_table[row[piv]], row]
        for other_piv, prow in self._rows.items():
            f = prow[piv]
            if f:
                self._rows[other_piv] = ctx.sub_table[prow, ctx.mul_table[f, row]]
        self._rows[piv] = row
        return True

    def add_rows(self, rows):
        for row in np.asarray(rows, dtype=np.int64).reshape(-1, self.width):
            self.add_row(row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self):
        return sorted(self._rows)

    def matrix(self) -> np.ndarray:
        """Canonical RREF matrix, rows ordered by pivot column."""
        if not self._rows:
            return np.zeros((0, self.width), dtype=np.int64)
        return np.array([self._rows[p] for p in self.pivots()], dtype=np.int64)

    def nullspace(self) -> np.ndarray:
        """Canonical RREF basis of {x : M x^T = 0} for the accumulated row space M."""
        ctx = self.ctx
        pivs = self.pivots()
        free = [j for j in range(self.width) if j not in self._rows]
        vecs = np.zeros((len(free), self.width), dtype=np.int64)
        for i, f in enumerate(free):
            vecs[i, f] = 1
            for r, p in enumerate(pivs):
                vecs[i, p] = ctx.neg_table[self._rows[p][f]]
        m, _ = rref(ctx, vecs) if len(free) else (np.zeros((0, self.width), np.int64), ())
        return m

    def contains(self, row) -> bool:
        ctx = self.ctx
        row = np.asarray(row, dtype=np.int64).copy()
        for piv, prow in self._rows.items():
            f = row[piv]
            if f:
                row = ctx.sub_table[row, ctx.mul_table[f, prow]]
        return not row.any()


def nullspace(ctx, matrix) -> np.ndarray:
    """RREF basis of the right kernel of `matrix` (rows = constraints)."""
    matrix = np.asarray(matrix, dtype=np.int64)
    r = RowReducer(ctx, matrix.shape[1])
    r.add_rows(matrix)
    return r.nullspace()


def row_space_sum(ctx, a, b) -> np.ndarray:
    r = RowReducer(ctx, a.shape[1] if a.size else b.shape[1])
    r.add_rows(a)
    r.add_rows(b)
    return r.matrix()


def row_space_intersection(ctx, a, b) -> np.ndarray:
    """Zassenhaus: RREF basis of (row space of a) ∩ (row space of b)."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, max(a.shape[1], b.shape[1])), dtype=np.int64)
    n = a.shape[1]
    top = np.concatenate([a, a], axis=1)
    bot = np.concatenate([b, np.zeros_like(b)], axis=1)
    r = RowReducer(ctx, 2 * n)
    r.add_rows(top)
    r.add_rows(bot)
    # rows with pivot in the right block have zero left block after full reduction
    rows = [r._rows[p][n:] for p in r.pivots() if p >= n]
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    m, _ = rref(ctx, rows)
    return m


def in_row_space(ctx, basis, vector) -> bool:
    r = RowReducer(ctx, basis.shape[1] if basis.size else len(vector))
    r.add_rows(basis)
    return r.contains(vector)


def random_invertible(ctx, n: int, rng) -> np.ndarray:
    """Uniform-ish invertible n x n matrix over GF(q) by rejection."""
    while True:
        m = rng.integers(0, ctx.q, size=(n, n), dtype=np.int64)
        r = RowReducer(ctx, n)
        r.add_rows(m)
        if r.rank == n:
            return m


def apply_matrix(ctx, matrix, vectors) -> np.ndarray:
    """Row-vector image v -> v @ matrix over GF(q); vectors shape (..., n)."""
    v = np.asarray(vectors, dtype=np.int64)
    out = np.zeros(v.shape[:-1] + (matrix.shape[1],), dtype=np.int64)
    for i in range(matrix.shape[0]):
        term = ctx.mul_table[v[..., i, None], matrix[i]]
        out = ctx.add_table[out, term]
    return out

"""Exact linear algebra over Q used by probes and singular-subspace solves."""

from __future__ import annotations

from fractions import Fraction

from .rational import ZERO, ONE

Row = list[Fraction]


def rref(rows: list[Row]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = ONE / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows: list[Row], ncols: int) -> list[Row]:
    """Basis of the right nullspace of the matrix (rows over Q)."""
    if not rows:
        basis = []
        for j in range(ncols):
            v = [ZERO] * ncols
            v[j] = ONE
            basis.append(v)
        return basis
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


class SpanBasis:
    """Incrementally maintained row-reduced basis of a subspace of Q^n.

    ``add`` reduces the vector against the current basis; a nonzero residue
    is normalized and inserted, keeping rows in echelon form by pivot column.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[Row] = []
        self.pivots: list[int] = []

    def _reduce(self, vec: Row) -> Row:
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Row) -> bool:
        return all(x == 0 for x in self._reduce(vec))

    def coordinates(self, vec: Row) -> list[Fraction] | None:
        """Coefficients of vec over the current basis rows, or None."""
        v = list(vec)
        coords = []
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            coords.append(f)
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
        if any(x != 0 for x in v):
            return None
        return coords

    def add(self, vec: Row) -> bool:
        """Insert vec into the span; True if the span grew."""
        v = self._reduce(vec)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        inv = ONE / v[p]
        v = [x * inv for x in v]
        for i, row in enumerate(self.rows):
            if row[p] != 0:
                f = row[p]
                self.rows[i] = [a - f * b for a, b in zip(row, v)]
        pos = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(pos, v)
        self.pivots.insert(pos, p)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

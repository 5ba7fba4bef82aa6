"""Index-set combinatorics, compound matrices and exterior products.

Index sets are 1-based at every public boundary (matching the convention of
the reports this library emits); lexicographic ranks are 0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .core import (
    DimensionError,
    Matrix,
    Vector,
    _det_exact_inplace,
    _require_same_backend,
    as_ndarray,
    from_ndarray,
    vec_from_ndarray,
)


def _validate_elems(elems: Sequence[int], n: int) -> tuple[int, ...]:
    tup = tuple(int(e) for e in elems)
    if not tup:
        raise ValueError("index set must be nonempty")
    if any(e < 1 or e > n for e in tup):
        raise ValueError(f"indices must lie in [1, {n}]: {tup}")
    if any(x >= y for x, y in zip(tup, tup[1:])):
        raise ValueError(f"indices must be strictly increasing: {tup}")
    return tup


def lex_rank(elems: Sequence[int], n: int) -> int:
    """0-based position of a strictly increasing index set among all
    j-subsets of [1, n] in lexicographic order."""
    tup = _validate_elems(elems, n)
    j = len(tup)
    rank = 0
    prev = 0
    for t, e in enumerate(tup):
        for v in range(prev + 1, e):
            rank += comb(n - v, j - t - 1)
        prev = e
    return rank


def lex_unrank(rank: int, j: int, n: int) -> tuple[int, ...]:
    """Inverse of :func:`lex_rank`."""
    if j < 1 or j > n:
        raise ValueError(f"subset size {j} out of range for n={n}")
    total = comb(n, j)
    if rank < 0 or rank >= total:
        raise ValueError(f"rank {rank} out of range [0, {total})")
    out = []
    prev = 0
    remaining = rank
    for t in range(j):
        v = prev + 1
        while True:
            block = comb(n - v, j - t - 1)
            if remaining < block:
                break
            remaining -= block
            v += 1
        out.append(v)
        prev = v
    return tuple(out)


@dataclass(frozen=True)
class IndexSet:
    """A j-subset of [1, n] together with its lexicographic rank."""

    n: int
    elems: tuple[int, ...]
    rank: int

    @classmethod
    def from_elems(cls, elems: Sequence[int], n: int) -> "IndexSet":
        tup = _validate_elems(elems, n)
        return cls(n, tup, lex_rank(tup, n))

    @classmethod
    def from_rank(cls, rank: int, j: int, n: int) -> "IndexSet":
        return cls(n, lex_unrank(rank, j, n), rank)

    def __len__(self) -> int:
        return len(self.elems)


def index_sets(n: int, j: int) -> list[tuple[int, ...]]:
    """All j-subsets of [1, n] in lexicographic order."""
    return [tuple(c) for c in combinations(range(1, n + 1), j)]


def minor(a: Matrix, rows: Sequence[int], cols: Sequence[int]):
    """Determinant of the submatrix on 1-based row/column index sets."""
    rset = _validate_elems(rows, a.n_rows)
    cset = _validate_elems(cols, a.n_cols)
    if len(rset) != len(cset):
        raise DimensionError("row and column sets must have equal size")
    sub = [[a.entries[r - 1][c - 1] for c in cset] for r in rset]
    if a.backend == "exact":
        return _det_exact_inplace(sub)
    return float(np.linalg.det(np.array(sub, dtype=float)))


def compound(a: Matrix, j: int) -> Matrix:
    """The C(n,j) x C(n,j) matrix of all order-j minors in lexicographic order."""
    if not a.is_square:
        raise DimensionError("compound requires a square matrix")
    n = a.n_rows
    if j < 1 or j > n:
        raise ValueError(f"compound order {j} out of range [1, {n}]")
    if j == 1:
        return a
    subs = index_sets(n, j)
    if a.backend == "exact":
        grid = []
        for rs in subs:
            row_entries = []
            rows_cache = [a.entries[r - 1] for r in rs]
            for cs in subs:
                sub = [[row[c - 1] for c in cs] for row in rows_cache]
                row_entries.append(_det_exact_inplace(sub))
            grid.append(tuple(row_entries))
        return Matrix(len(subs), len(subs), tuple(grid), "exact")
    arr = as_ndarray(a)
    zero_based = [tuple(i - 1 for i in s) for s in subs]
    blocks = np.empty((len(subs), len(subs), j, j), dtype=float)
    for ri, rs in enumerate(zero_based):
        sub_rows = arr[list(rs), :]
        for ci, cs in enumerate(zero_based):
            blocks[ri, ci] = sub_rows[:, list(cs)]
    dets = np.linalg.det(blocks.reshape(-1, j, j)).reshape(len(subs), len(subs))
    return from_ndarray(dets)


def exterior_product(vectors: Sequence[Vector]) -> Vector:
    """Wedge of j vectors in R^n; coordinate alpha is the j x j minor on the
    alpha-th row set, rows in lexicographic order."""
    if not vectors:
        raise ValueError("need at least one vector")
    first = vectors[0]
    for v in vectors[1:]:
        _require_same_backend(first, v)
        if v.dim != first.dim:
            raise DimensionError("all vectors must share one dimension")
    j = len(vectors)
    n = first.dim
    if j > n:
        raise DimensionError(f"cannot wedge {j} vectors in dimension {n}")
    if j == 1:
        return first
    subs = index_sets(n, j)
    if first.backend == "exact":
        coords = []
        for rs in subs:
            sub = [[vectors[t].coords[r - 1] for t in range(j)] for r in rs]
            coords.append(_det_exact_inplace(sub))
        return Vector(len(subs), tuple(coords), "exact")
    cols = np.column_stack([np.array([float(x) for x in v.coords]) for v in vectors])
    blocks = np.stack([cols[[r - 1 for r in rs], :] for rs in subs])
    return vec_from_ndarray(np.linalg.det(blocks))


def tensor_product(x: Vector, y: Vector) -> Matrix:
    """Outer product: entry (i, k) is x_i * y_k."""
    _require_same_backend(x, y)
    if x.dim != y.dim:
        raise DimensionError(f"dimension mismatch: {x.dim} vs {y.dim}")
    grid = tuple(tuple(xi * yk for yk in y.coords) for xi in x.coords)
    return Matrix(x.dim, y.dim, grid, x.backend)

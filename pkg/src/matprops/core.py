"""Dense real matrices over two interchangeable scalar backends.

The ``exact`` backend stores :class:`fractions.Fraction` entries and every
operation is bit-exact; the ``float`` backend stores IEEE-754 binary64 and
delegates the O(n^3) kernels to numpy.  Everything here is immutable and
pure, so values can be shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence, Union

import numpy as np

Backend = Literal["exact", "float"]
Scalar = Union[Fraction, float]

#: Relative near-zero pivot threshold for float solves, scaled by the
#: maximum row sum of the matrix being factored.
PIVOT_RTOL = 1e-12


class MatrixError(Exception):
    """Base class for errors raised by this package's linear algebra."""


class DimensionError(MatrixError):
    """Operands have incompatible or invalid shapes."""


class BackendMismatchError(MatrixError):
    """Operands live on different scalar backends."""


class SingularMatrixError(MatrixError):
    """A solve or inversion hit a pivot below the singularity threshold.

    ``pivot_index`` is the 1-based elimination column that failed.
    """

    def __init__(self, pivot_index: int, detail: str = ""):
        self.pivot_index = pivot_index
        msg = f"singular matrix: no acceptable pivot in column {pivot_index}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


def _coerce_exact(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(
            "refusing to build an exact matrix from a float literal; "
            "pass a string (e.g. '5.6') or a Fraction instead"
        )
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def _coerce_float(value: object) -> float:
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, float)):
        out = float(value)
    elif isinstance(value, Fraction):
        out = float(value)
    elif isinstance(value, str):
        out = float(Fraction(value))
    else:
        raise TypeError(f"cannot use {type(value).__name__} as a float scalar")
    if math.isnan(out) or math.isinf(out):
        raise ValueError("matrices must not contain NaN or infinite entries")
    return out


def _coerce(value: object, backend: Backend) -> Scalar:
    return _coerce_exact(value) if backend == "exact" else _coerce_float(value)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix; ``entries`` is a row-major tuple of tuples."""

    n_rows: int
    n_cols: int
    entries: tuple[tuple[Scalar, ...], ...]
    backend: Backend

    def __post_init__(self):
        if self.n_rows <= 0 or self.n_cols <= 0:
            raise DimensionError("matrix dimensions must be positive")
        if len(self.entries) != self.n_rows or any(
            len(row) != self.n_cols for row in self.entries
        ):
            raise DimensionError("entry grid does not match declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], backend: Backend = "exact") -> "Matrix":
        if backend not in ("exact", "float"):
            raise ValueError(f"unknown backend {backend!r}")
        if not rows:
            raise DimensionError("matrix needs at least one row")
        grid = tuple(tuple(_coerce(v, backend) for v in row) for row in rows)
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise DimensionError("ragged rows")
        return cls(len(grid), width, grid, backend)

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        i, j = key
        return self.entries[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def rows(self) -> list[list[Scalar]]:
        """Mutable copy of the entries."""
        return [list(row) for row in self.entries]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(row[j] for row in self.entries)


@dataclass(frozen=True)
class Vector:
    """Immutable dense vector sharing the Matrix backends."""

    dim: int
    coords: tuple[Scalar, ...]
    backend: Backend

    def __post_init__(self):
        if self.dim <= 0 or len(self.coords) != self.dim:
            raise DimensionError("coordinate count does not match declared dim")

    @classmethod
    def from_coords(cls, coords: Iterable[object], backend: Backend = "exact") -> "Vector":
        if backend not in ("exact", "float"):
            raise ValueError(f"unknown backend {backend!r}")
        tup = tuple(_coerce(v, backend) for v in coords)
        return cls(len(tup), tup, backend)

    def __getitem__(self, i: int) -> Scalar:
        return self.coords[i]


def _require_same_backend(a, b) -> None:
    if a.backend != b.backend:
        raise BackendMismatchError(f"mixed backends: {a.backend} vs {b.backend}")


def _require_square(a: Matrix) -> None:
    if not a.is_square:
        raise DimensionError(f"square matrix required, got {a.n_rows}x{a.n_cols}")


def identity(n: int, backend: Backend = "exact") -> Matrix:
    one, zero = (Fraction(1), Fraction(0)) if backend == "exact" else (1.0, 0.0)
    grid = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
    return Matrix(n, n, grid, backend)


def zeros(n_rows: int, n_cols: int, backend: Backend = "exact") -> Matrix:
    zero = Fraction(0) if backend == "exact" else 0.0
    return Matrix(n_rows, n_cols, tuple((zero,) * n_cols for _ in range(n_rows)), backend)


def transpose(a: Matrix) -> Matrix:
    grid = tuple(tuple(a.entries[i][j] for i in range(a.n_rows)) for j in range(a.n_cols))
    return Matrix(a.n_cols, a.n_rows, grid, a.backend)


def add(a: Matrix, b: Matrix) -> Matrix:
    _require_same_backend(a, b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    grid = tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.entries, b.entries)
    )
    return Matrix(a.n_rows, a.n_cols, grid, a.backend)


def scale(a: Matrix, c: object) -> Matrix:
    s = _coerce(c, a.backend)
    grid = tuple(tuple(s * x for x in row) for row in a.entries)
    return Matrix(a.n_rows, a.n_cols, grid, a.backend)


def shifted(a: Matrix, alpha: object) -> Matrix:
    """a + alpha * I."""
    _require_square(a)
    return add(a, scale(identity(a.n_rows, a.backend), alpha))


def as_ndarray(a: Matrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in a.entries], dtype=float)


def from_ndarray(arr: np.ndarray) -> Matrix:
    arr = np.asarray(arr, dtype=float)
    if arr.ndim != 2:
        raise DimensionError("expected a 2-d array")
    return Matrix.from_rows(arr.tolist(), backend="float")


def vec_as_ndarray(v: Vector) -> np.ndarray:
    return np.array([float(x) for x in v.coords], dtype=float)


def vec_from_ndarray(arr: np.ndarray) -> Vector:
    return Vector.from_coords(np.asarray(arr, dtype=float).tolist(), backend="float")


def to_float(a: Matrix) -> Matrix:
    if a.backend == "float":
        return a
    return Matrix.from_rows([[float(x) for x in row] for row in a.entries], "float")


def to_exact(a: Matrix) -> Matrix:
    """Exact image of a matrix; float entries convert to their exact binary value."""
    if a.backend == "exact":
        return a
    grid = tuple(tuple(Fraction(x) for x in row) for row in a.entries)
    return Matrix(a.n_rows, a.n_cols, grid, "exact")


def max_abs(a: Matrix) -> Scalar:
    return max(abs(x) for row in a.entries for x in row)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product; bit-exact on the exact backend."""
    _require_same_backend(a, b)
    if a.n_cols != b.n_rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if a.backend == "float":
        return from_ndarray(as_ndarray(a) @ as_ndarray(b))
    bt = transpose(b)
    grid = tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt.entries)
        for row in a.entries
    )
    return Matrix(a.n_rows, b.n_cols, grid, a.backend)


def mat_vec(a: Matrix, v: Vector) -> Vector:
    _require_same_backend(a, v)
    if a.n_cols != v.dim:
        raise DimensionError(f"cannot apply {a.shape} to a vector of dim {v.dim}")
    coords = tuple(sum(x * y for x, y in zip(row, v.coords)) for row in a.entries)
    return Vector(a.n_rows, coords, a.backend)


def mat_pow(a: Matrix, k: int) -> Matrix:
    """a**k by repeated squaring; a**0 is the identity."""
    _require_square(a)
    if not isinstance(k, int) or k < 0:
        raise ValueError("exponent must be a non-negative integer")
    result = identity(a.n_rows, a.backend)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def _det_exact_inplace(rows: list[list[Fraction]]) -> Fraction:
    """Fraction-free (Bareiss) elimination; destroys ``rows``."""
    n = len(rows)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            row_i = rows[i]
            row_k = rows[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - rik * row_k[j]) / prev
            row_i[k] = Fraction(0)
        prev = pivot
    return sign * rows[n - 1][n - 1]


def det(a: Matrix) -> Scalar:
    """Determinant: fraction-free elimination (exact) or LU (float)."""
    _require_square(a)
    if a.backend == "exact":
        return _det_exact_inplace(a.rows())
    return float(np.linalg.det(as_ndarray(a)))


def _lu_factor_float(arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Partial-pivot LU; raises SingularMatrixError on a sub-threshold pivot."""
    a = arr.copy()
    n = a.shape[0]
    threshold = PIVOT_RTOL * max(float(np.abs(arr).sum(axis=1).max()), 0.0)
    piv: list[int] = []
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) <= threshold:
            raise SingularMatrixError(k + 1, f"pivot {a[p, k]:.3e}")
        if p != k:
            a[[k, p]] = a[[p, k]]
        piv.append(p)
        a[k + 1:, k] /= a[k, k]
        if k + 1 < n:
            a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])
    return a, piv


def _lu_solve_float(lu: np.ndarray, piv: list[int], rhs: np.ndarray) -> np.ndarray:
    x = rhs.astype(float).copy()
    n = lu.shape[0]
    for k, p in enumerate(piv):
        if p != k:
            x[[k, p]] = x[[p, k]]
    for k in range(n):
        x[k + 1:] -= lu[k + 1:, k] * x[k]
    for k in range(n - 1, -1, -1):
        x[k] -= lu[k, k + 1:] @ x[k + 1:]
        x[k] /= lu[k, k]
    return x


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rows)
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if rows[i][k] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            raise SingularMatrixError(k + 1, "exactly zero pivot column")
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            rhs[k], rhs[pivot_row] = rhs[pivot_row], rhs[k]
        pivot = rows[k][k]
        for i in range(k + 1, n):
            factor = rows[i][k] / pivot
            if factor == 0:
                continue
            for j in range(k, n):
                rows[i][j] -= factor * rows[k][j]
            rhs[i] -= factor * rhs[k]
    out = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        acc = rhs[k]
        for j in range(k + 1, n):
            acc -= rows[k][j] * out[j]
        out[k] = acc / rows[k][k]
    return out


def lu_solve(a: Matrix, b: Vector) -> Vector:
    """Solve a x = b (partial pivoting on the float backend)."""
    _require_square(a)
    _require_same_backend(a, b)
    if a.n_rows != b.dim:
        raise DimensionError(f"matrix {a.shape} vs vector of dim {b.dim}")
    if a.backend == "exact":
        sol = _solve_exact(a.rows(), list(b.coords))
        return Vector(a.n_rows, tuple(sol), "exact")
    lu, piv = _lu_factor_float(as_ndarray(a))
    return vec_from_ndarray(_lu_solve_float(lu, piv, vec_as_ndarray(b)))


def inverse(a: Matrix) -> Matrix:
    _require_square(a)
    n = a.n_rows
    if a.backend == "exact":
        rows = a.rows()
        aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
        for k in range(n):
            pivot_row = None
            for i in range(k, n):
                if aug[i][k] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                raise SingularMatrixError(k + 1, "exactly zero pivot column")
            if pivot_row != k:
                aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
            pivot = aug[k][k]
            aug[k] = [x / pivot for x in aug[k]]
            for i in range(n):
                if i != k and aug[i][k] != 0:
                    factor = aug[i][k]
                    aug[i] = [x - factor * y for x, y in zip(aug[i], aug[k])]
        grid = tuple(tuple(row[n:]) for row in aug)
        return Matrix(n, n, grid, "exact")
    lu, piv = _lu_factor_float(as_ndarray(a))
    cols = [_lu_solve_float(lu, piv, np.eye(n)[:, j]) for j in range(n)]
    return from_ndarray(np.column_stack(cols))

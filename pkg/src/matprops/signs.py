"""Sign patterns, sign-change counters, J-sign-symmetry detection, and the
brute-force minor-based property checks (total positivity, P-matrices,
oscillation, monotonicity, sign alternation).

Strictness convention on the float backend: an entry counts as strictly
positive iff it exceeds the zero tolerance, which defaults to
``SIGN_RTOL * max_abs(matrix)``.  The exact backend always uses tolerance 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    DimensionError,
    Matrix,
    Vector,
    identity,
    inverse,
    mat_pow,
    max_abs,
    SingularMatrixError,
)
from .exterior import compound, index_sets, lex_unrank

#: Default relative strictness threshold on the float backend.
SIGN_RTOL = 1e-9


def default_zero_tolerance(a: Matrix) -> float:
    if a.backend == "exact":
        return 0.0
    m = max_abs(a)
    return SIGN_RTOL * float(m)


def _sgn(value, tol) -> int:
    if value > tol:
        return 1
    if value < -tol:
        return -1
    return 0


@dataclass(frozen=True)
class SignPattern:
    n_rows: int
    n_cols: int
    signs: tuple[tuple[int, ...], ...]
    zero_tolerance: float

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.signs[i][j]


@dataclass(frozen=True)
class SignPartition:
    """Certificate of (strict) J-sign-symmetry: the index bipartition
    J | J^c of [1, n], stored through its +1 side."""

    n: int
    plus: frozenset[int]

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(1 if i in self.plus else -1 for i in range(1, self.n + 1))

    @property
    def minus(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1)) - self.plus

    def sign(self, i: int) -> int:
        return 1 if i in self.plus else -1

    def diagonal(self, backend="exact") -> Matrix:
        """diag(s); an involution, so it equals its own inverse."""
        d = identity(self.n, backend)
        rows = d.rows()
        for i in range(self.n):
            if (i + 1) not in self.plus:
                rows[i][i] = -rows[i][i]
        return Matrix.from_rows(rows, backend)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in sorted(self.plus)) + "}"


def sign_pattern(a: Matrix, zero_tolerance: Optional[float] = None) -> SignPattern:
    """Entrywise sgn with |entry| <= tolerance mapped to 0."""
    if zero_tolerance is None:
        zero_tolerance = default_zero_tolerance(a)
    if zero_tolerance < 0:
        raise ValueError("zero tolerance must be non-negative")
    signs = tuple(tuple(_sgn(x, zero_tolerance) for x in row) for row in a.entries)
    return SignPattern(a.n_rows, a.n_cols, signs, zero_tolerance)


def s_minus(x: Vector) -> int:
    """Sign changes in the coordinate sequence with zeros discarded."""
    seq = [1 if c > 0 else -1 for c in x.coords if c != 0]
    return sum(1 for u, v in zip(seq, seq[1:]) if u != v)


def s_plus(x: Vector) -> int:
    """Maximum sign changes over all +/-1 assignments to zero coordinates."""
    allowed = []
    for c in x.coords:
        if c > 0:
            allowed.append((1,))
        elif c < 0:
            allowed.append((-1,))
        else:
            allowed.append((1, -1))
    best = {s: 0 for s in allowed[0]}
    for options in allowed[1:]:
        nxt = {}
        for s in options:
            nxt[s] = max(best[p] + (1 if p != s else 0) for p in best)
        best = nxt
    return max(best.values())


def detect_sjs(a: Matrix, zero_tolerance: Optional[float] = None) -> Optional[SignPartition]:
    """Partition witnessing strict J-sign-symmetry, or None.

    Canonicalized so that index 1 lies on the +1 side.
    """
    if not a.is_square:
        raise DimensionError("square matrix required")
    pattern = sign_pattern(a, zero_tolerance)
    n = a.n_rows
    if any(pattern.signs[i][j] == 0 for i in range(n) for j in range(n)):
        return None
    s = [pattern.signs[i][0] * pattern.signs[0][0] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if s[i] * s[j] * pattern.signs[i][j] != 1:
                return None
    return SignPartition(n, frozenset(i + 1 for i in range(n) if s[i] == 1))


def detect_js(a: Matrix, zero_tolerance: Optional[float] = None) -> Optional[SignPartition]:
    """Partition witnessing (non-strict) J-sign-symmetry, or None.

    Consistency is a parity 2-coloring of the index graph induced by the
    nonzero entries; the least index of every connected component is
    colored +1, which makes the returned partition deterministic.
    """
    if not a.is_square:
        raise DimensionError("square matrix required")
    pattern = sign_pattern(a, zero_tolerance)
    n = a.n_rows
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sig = pattern.signs[i][j]
            if sig == 0:
                continue
            if i == j:
                if sig < 0:
                    return None
                continue
            adj[i].append((j, sig))
            adj[j].append((i, sig))
    color = [0] * n
    for start in range(n):
        if color[start] != 0:
            continue
        color[start] = 1
        queue = [start]
        while queue:
            u = queue.pop(0)
            for v, sig in adj[u]:
                want = color[u] * sig
                if color[v] == 0:
                    color[v] = want
                    queue.append(v)
                elif color[v] != want:
                    return None
    for i in range(n):
        for j in range(n):
            sig = pattern.signs[i][j]
            if sig != 0 and color[i] * color[j] != sig:
                return None
    return SignPartition(n, frozenset(i + 1 for i in range(n) if color[i] == 1))


def checkerboard(a: Matrix) -> Matrix:
    """Entrywise (-1)^(i+j) flip; an involution."""
    grid = tuple(
        tuple(x if (i + j) % 2 == 0 else -x for j, x in enumerate(row))
        for i, row in enumerate(a.entries)
    )
    return Matrix(a.n_rows, a.n_cols, grid, a.backend)


@dataclass(frozen=True)
class MinorWitness:
    """A violating minor: its order and 1-based row/column index sets."""

    order: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    value: object

    def __str__(self) -> str:
        return (
            f"order-{self.order} minor on rows {self.rows} / cols {self.cols}"
            f" = {self.value}"
        )


@dataclass(frozen=True)
class PropertyCheck:
    ok: bool
    witness: Optional[MinorWitness] = None
    power: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def _scan_compounds(a: Matrix, strict: bool) -> PropertyCheck:
    n = a.n_rows
    for j in range(1, n + 1):
        comp = compound(a, j)
        tol = default_zero_tolerance(comp) if comp.backend == "float" else 0
        for ri in range(comp.n_rows):
            for ci in range(comp.n_cols):
                value = comp.entries[ri][ci]
                bad = (value <= tol) if strict else (value < -tol)
                if bad:
                    return PropertyCheck(
                        False,
                        MinorWitness(j, lex_unrank(ri, j, n), lex_unrank(ci, j, n), value),
                    )
    return PropertyCheck(True)


def is_tp(a: Matrix) -> PropertyCheck:
    """All minors of every order non-negative."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    return _scan_compounds(a, strict=False)


def is_stp(a: Matrix) -> PropertyCheck:
    """All minors of every order strictly positive."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    return _scan_compounds(a, strict=True)


def is_p_matrix(a: Matrix) -> PropertyCheck:
    """All principal minors strictly positive.

    Subsets are scanned by increasing size then lexicographically, stopping
    at the first failure, so the witness is deterministic.
    """
    if not a.is_square:
        raise DimensionError("square matrix required")
    n = a.n_rows
    tol = default_zero_tolerance(a) if a.backend == "float" else 0
    from .exterior import minor as _minor

    for size in range(1, n + 1):
        for subset in index_sets(n, size):
            value = _minor(a, subset, subset)
            if not value > tol:
                return PropertyCheck(False, MinorWitness(size, subset, subset, value))
    return PropertyCheck(True)


def is_monotone(a: Matrix) -> bool:
    """Invertible with entrywise non-negative inverse."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    try:
        inv = inverse(a)
    except SingularMatrixError:
        return False
    if a.backend == "exact":
        return all(x >= 0 for row in inv.entries for x in row)
    tol = 1e-10 * max(1.0, float(max_abs(inv)))
    return all(x >= -tol for row in inv.entries for x in row)


def is_tsa(a: Matrix) -> PropertyCheck:
    """Totally sign-alternating: the checkerboard transform is TP."""
    return is_tp(checkerboard(a))


def is_oscillatory(a: Matrix, k_max: int = 64) -> PropertyCheck:
    """TP with some power <= k_max strictly TP; ``power`` holds the witness k."""
    base = is_tp(a)
    if not base.ok:
        return base
    power = a
    for k in range(1, k_max + 1):
        if k > 1:
            power = mat_pow(a, k)
        strict = is_stp(power)
        if strict.ok:
            return PropertyCheck(True, power=k)
    return PropertyCheck(False)


@dataclass(frozen=True)
class TotalSignCheck:
    """Per-order J-sign-symmetry of all compounds (strict or not)."""

    ok: bool
    partitions: tuple[Optional[SignPartition], ...]
    failing_order: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def _total_js(a: Matrix, strict: bool) -> TotalSignCheck:
    if not a.is_square:
        raise DimensionError("square matrix required")
    detect = detect_sjs if strict else detect_js
    partitions: list[Optional[SignPartition]] = []
    for j in range(1, a.n_rows + 1):
        partition = detect(compound(a, j))
        partitions.append(partition)
        if partition is None:
            return TotalSignCheck(False, tuple(partitions), failing_order=j)
    return TotalSignCheck(True, tuple(partitions))


def is_stjs(a: Matrix) -> TotalSignCheck:
    """Strictly totally J-sign-symmetric: every compound is strictly JS."""
    return _total_js(a, strict=True)


def is_tjs(a: Matrix) -> TotalSignCheck:
    """Totally J-sign-symmetric: every compound is JS."""
    return _total_js(a, strict=False)

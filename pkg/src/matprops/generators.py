"""Fixed-seed random instance recipes for the test corpora.

Every recipe takes an integer seed and is fully deterministic.  Entries are
rounded to a short decimal grid so that the float values convert to the
intended rationals exactly and property margins stay comfortably away from
the strictness tolerances; instances whose defining property is marginal are
regenerated with a bumped seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .core import Matrix, from_ndarray, identity, mat_mul
from .signs import SignPartition, checkerboard, is_stp, is_tp


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _rounded(arr: np.ndarray, decimals: int = 3) -> Matrix:
    return from_ndarray(np.round(arr, decimals))


def random_positive(n: int, seed: int) -> Matrix:
    """Strictly positive matrix with entries in [0.2, 3.0)."""
    rng = _rng(seed)
    return _rounded(rng.uniform(0.2, 3.0, size=(n, n)))


def random_integer(n: int, seed: int, low: int = -9, high: int = 9,
                   backend: str = "exact") -> Matrix:
    """Uniform integer entries in [low, high], exact backend by default."""
    rnd = random.Random(seed)
    rows = [[rnd.randint(low, high) for _ in range(n)] for _ in range(n)]
    return Matrix.from_rows(rows, backend)


def random_sign_partition(n: int, seed: int) -> SignPartition:
    """Partition of [1, n] with index 1 on the + side, at least one - index."""
    rnd = random.Random(seed)
    minus = set()
    while not minus:
        minus = {i for i in range(2, n + 1) if rnd.random() < 0.5}
    return SignPartition(n, frozenset(range(1, n + 1)) - minus)


def conjugated_positive(n: int, seed: int) -> tuple[Matrix, SignPartition]:
    """D P D with P positive and D a +/-1 diagonal: strictly J-sign-symmetric
    and eventually so, with a known partition."""
    partition = random_sign_partition(n, seed)
    p = random_positive(n, seed + 1)
    d = partition.diagonal("float")
    return mat_mul(mat_mul(d, p), d), partition


def random_stp(n: int, seed: int) -> Matrix:
    """Strictly totally positive matrix built as a product of positive-diagonal
    nonnegative bidiagonal factors, verified before use.

    Candidates are also rejected unless their spectrum resolves with
    consecutive eigenvalue ratios below 0.9, so downstream spectral checks on
    corpus instances converge at a healthy geometric rate.
    """
    from .spectral import spectrum_via_compounds

    for attempt in range(64):
        rng = _rng(seed + 1000 * attempt)
        product = identity(n, "float")
        # Alternating lower/upper bidiagonal factors with positive diagonals
        # generate the totally nonnegative matrices; enough of them in
        # general position make every minor strictly positive.
        for t in range(2 * n):
            arr = np.diag(rng.uniform(0.8, 1.6, size=n))
            offsets = rng.uniform(0.3, 1.2, size=n - 1)
            if t % 2 == 0:
                arr[np.arange(1, n), np.arange(n - 1)] = offsets
            else:
                arr[np.arange(n - 1), np.arange(1, n)] = offsets
            product = mat_mul(product, from_ndarray(arr))
        candidate = _rounded(3.0 * np.asarray(
            [[float(x) for x in row] for row in product.entries]
        ) / max(float(x) for row in product.entries for x in row))
        if not is_stp(candidate).ok:
            continue
        spectrum = spectrum_via_compounds(candidate)
        if not spectrum:
            continue
        values = spectrum.eigenvalues
        if all(values[i + 1] <= 0.9 * values[i] for i in range(n - 1)):
            return candidate
    raise RuntimeError(f"failed to generate an STP instance for n={n}, seed={seed}")


def random_oscillatory(n: int, seed: int) -> Matrix:
    """Tridiagonal totally positive matrix with positive off-diagonals:
    oscillatory, with power index about n - 1."""
    rng = _rng(seed)
    arr = np.zeros((n, n))
    arr[np.arange(n), np.arange(n)] = np.round(rng.uniform(1.5, 3.0, size=n), 3)
    off = np.round(rng.uniform(0.2, 0.8, size=n - 1), 3)
    arr[np.arange(1, n), np.arange(n - 1)] = off
    arr[np.arange(n - 1), np.arange(1, n)] = off
    candidate = from_ndarray(arr)
    if not is_tp(candidate).ok:
        return random_oscillatory(n, seed + 1)
    return candidate


def sign_conjugated_stp(n: int, seed: int) -> tuple[Matrix, SignPartition]:
    """D S D for an STP S and +/-1 diagonal D: strictly totally
    J-sign-symmetric and eventually so."""
    partition = random_sign_partition(n, seed)
    s = random_stp(n, seed + 1)
    d = partition.diagonal("float")
    return mat_mul(mat_mul(d, s), d), partition


def mild_stp(n: int, seed: int) -> Matrix:
    """Strictly totally positive with condition number below 100: bidiagonal
    factors stay close to the identity.  Spectral separation is NOT enforced,
    so prefer :func:`random_stp` when eigen-structure matters; use this for
    similarity transformations, where conditioning is what matters."""
    for attempt in range(64):
        rng = _rng(seed + 1000 * attempt)
        product = identity(n, "float")
        for t in range(2 * n):
            arr = np.diag(rng.uniform(0.9, 1.15, size=n))
            offsets = rng.uniform(0.05, 0.3, size=n - 1)
            if t % 2 == 0:
                arr[np.arange(1, n), np.arange(n - 1)] = offsets
            else:
                arr[np.arange(n - 1), np.arange(1, n)] = offsets
            product = mat_mul(product, from_ndarray(arr))
        candidate = _rounded(np.asarray(
            [[float(x) for x in row] for row in product.entries]
        ), decimals=4)
        arr = np.array([[float(x) for x in row] for row in candidate.entries])
        if is_stp(candidate).ok and np.linalg.cond(arr) < 100.0:
            return candidate
    raise RuntimeError(f"failed to generate a mild STP instance for n={n}, seed={seed}")


def checkerboarded_tp(n: int, seed: int) -> Matrix:
    """Checkerboard transform of a mild STP matrix: totally sign-alternating
    and well-conditioned enough to serve as a similarity transformation."""
    return checkerboard(mild_stp(n, seed))


def random_monotone(n: int, seed: int) -> Matrix:
    """Monotone matrix: the inverse of a diagonally dominant nonnegative one."""
    from .core import inverse

    rng = _rng(seed)
    arr = np.round(rng.uniform(0.0, 1.0, size=(n, n)), 3) + n * np.eye(n)
    return inverse(from_ndarray(arr))


def random_m_matrix(n: int, seed: int) -> Matrix:
    """Diagonally dominant Z-matrix (an M-matrix, hence monotone)."""
    rng = _rng(seed)
    off = np.round(rng.uniform(0.1, 1.0, size=(n, n)), 3)
    np.fill_diagonal(off, 0.0)
    arr = -off + np.diag(off.sum(axis=1) + rng.uniform(0.5, 1.5, size=n).round(3))
    return from_ndarray(arr)


def random_separated_spectrum(n: int, seed: int, negatives: bool = False) -> Matrix:
    """Diagonalizable matrix with well-separated eigenvalue magnitudes
    (ratio <= 0.72 between consecutive ones); optionally one negative
    eigenvalue mixed in."""
    rng = _rng(seed)
    values = []
    magnitude = float(rng.uniform(3.0, 6.0))
    for i in range(n):
        values.append(magnitude)
        magnitude *= float(rng.uniform(0.35, 0.72))
    if negatives and n >= 2:
        flip = 1 + int(rng.integers(0, n - 1))
        values[flip] = -values[flip]
    for attempt in range(64):
        basis = rng.uniform(-1.0, 1.0, size=(n, n)) + 2.0 * np.eye(n)
        if abs(np.linalg.det(basis)) > 0.3:
            arr = basis @ np.diag(values) @ np.linalg.inv(basis)
            return from_ndarray(arr)
    raise RuntimeError("failed to draw a well-conditioned eigenbasis")


def random_well_conditioned(n: int, seed: int) -> Matrix:
    """Invertible float matrix with condition number below 100."""
    rng = _rng(seed)
    for attempt in range(256):
        arr = rng.uniform(-2.0, 2.0, size=(n, n))
        if np.linalg.cond(arr) < 100.0:
            return from_ndarray(arr)
    raise RuntimeError("failed to draw a well-conditioned matrix")

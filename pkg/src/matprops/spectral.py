"""Dominant eigenpairs by power iteration, spectra via compound spectral-radius
ratios, shifted inverse iteration, and the spectral property certificates
(strong Perron-Frobenius, signature equality, Gantmacher-Krein, total
signature equality, Markov systems, and the rank-one power limit).

All iteration happens in binary64 regardless of the input backend; the input
matrix is rescaled to unit max-abs internally so the convergence tolerance is
relative to the matrix scale.  Certificates report residuals on the original
scale together with the absolute tolerance they were accepted at.

A certificate produced here claims dominance on the strength of convergence
behaviour only; power iteration cannot prove simplicity or strict dominance.
The classification layer corroborates certificates with finite power searches
and compound-ratio probes before promoting them to verdicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .core import (
    DimensionError,
    Matrix,
    Vector,
    as_ndarray,
    det,
    max_abs,
    transpose,
    vec_as_ndarray,
    vec_from_ndarray,
)
from .exterior import compound, exterior_product
from .signs import SignPartition

#: Relative threshold below which an eigenvector coordinate counts as zero.
#: Looser than the residual tolerance because near-zero coordinates are the
#: worst-determined part of a computed eigenvector.
ZERO_COORD_RTOL = 1e-7

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000


class ConvergenceError(Exception):
    """Inverse iteration failed to reach the requested residual."""


@dataclass(frozen=True)
class SpectralCertificate:
    """Claimed dominant eigenpair with checkable residuals.

    ``x`` and ``x_star`` have unit infinity norm with the first nonzero
    coordinate positive.  ``dominance_gap`` estimates |lambda_2 / lambda_1|
    from the observed convergence rate (None when convergence was too fast
    to measure).
    """

    value: float
    x: Vector
    x_star: Vector
    residual_x: float
    residual_xstar: float
    iterations: int
    dominance_gap: Optional[float]
    tol: float

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class IterationFailure:
    reason: str
    iterations: int
    residual: float
    rayleigh: Optional[float] = None

    def __bool__(self) -> bool:
        return False


EigenResult = Union[SpectralCertificate, IterationFailure]


def _sign_normalize(x: np.ndarray) -> np.ndarray:
    norm = np.max(np.abs(x))
    if norm == 0.0:
        return x
    x = x / norm
    for value in x:
        if value != 0.0:
            if value < 0.0:
                x = -x
            break
    return x


def _estimate_gap(residuals: list[float]) -> Optional[float]:
    ratios = []
    for prev, cur in zip(residuals[-21:], residuals[-20:]):
        if prev > 0.0 and cur > 0.0:
            ratio = cur / prev
            if ratio <= 1.05:
                ratios.append(min(ratio, 1.0))
    if len(ratios) < 5:
        return None
    return float(np.median(ratios))


def _power_iterate(arr: np.ndarray, tol: float, max_iter: int):
    """Power iteration on a unit-scaled array.

    Returns (x, rayleigh, residual, iterations, gap) or an IterationFailure.
    The start vector is all-ones with a tiny deterministic stagger so that it
    cannot be exactly orthogonal to the dominant eigenvector; a one-time
    perturbation of the first coordinate guards against stagnation.
    """
    n = arr.shape[0]
    eps = float(np.finfo(float).eps)
    x = _sign_normalize(1.0 + 1e-6 * np.arange(n, dtype=float))
    prev_ray: Optional[float] = None
    residuals: list[float] = []
    perturbed = False
    for it in range(1, max_iter + 1):
        y = arr @ x
        ynorm = float(np.max(np.abs(y)))
        if ynorm == 0.0:
            if perturbed:
                return IterationFailure("iterate collapsed into the null space", it, math.inf)
            x = _sign_normalize(x + 1e-3 * np.eye(n)[0])
            perturbed = True
            continue
        ray = float(x @ y) / float(x @ x)
        res = float(np.max(np.abs(y - ray * x)))
        residuals.append(res)
        # For non-normal matrices the Rayleigh quotient carries an
        # irreducible rounding jitter of about n^2 eps / |lambda| in this
        # unit-max-abs scaling; demanding stability below that floor would
        # spin forever even though the residual contract is met.
        ray_noise = 2.0 * n * n * eps / max(abs(ray), eps)
        ray_settled = prev_ray is not None and abs(ray - prev_ray) <= max(
            tol * abs(ray), ray_noise
        )
        if ray_settled and res <= tol:
            return x, ray, res, it, _estimate_gap(residuals)
        prev_ray = ray
        x = _sign_normalize(y)
        if it == 100 and not perturbed and res >= 0.9 * residuals[0]:
            x = _sign_normalize(x + 1e-3 * np.eye(n)[0])
            perturbed = True
        if it >= 4000 and it % 2000 == 0:
            recent = min(residuals[-2000:])
            previous = min(residuals[-4000:-2000])
            if previous > 0.0:
                rate = recent / previous
                if rate >= 0.999:
                    return IterationFailure(
                        "residual plateau: no strictly dominant real eigenvalue resolved",
                        it,
                        res,
                        ray,
                    )
                # Even under geometric extrapolation of the current window
                # rate the budget cannot be met; sub-geometric (defective)
                # decay only looks worse, so bailing now is sound.
                if recent > tol and 0.0 < rate:
                    windows_left = math.log(tol / recent) / math.log(rate)
                    if it + 2000.0 * windows_left > max_iter:
                        return IterationFailure(
                            f"convergence too slow to meet the tolerance within "
                            f"{max_iter} iterations (residual {recent:.2e})",
                            it,
                            res,
                            ray,
                        )
    return IterationFailure("max iterations exhausted", max_iter, residuals[-1], prev_ray)


def dominant_eigenpair(
    a: Matrix, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> EigenResult:
    """Dominant eigenvalue with right eigenvector and eigenfunctional.

    The eigenvalue is the Rayleigh quotient at convergence (sign included);
    the eigenfunctional is computed by iterating on the explicit transpose.
    Non-convergence (dominance ties, complex dominant pairs) is reported as
    an :class:`IterationFailure`, not an exception.
    """
    if not a.is_square:
        raise DimensionError("square matrix required")
    scale = float(max_abs(a))
    if scale == 0.0:
        raise ValueError("zero matrix has no dominant eigenpair")
    arr = as_ndarray(a) / scale
    right = _power_iterate(arr, tol, max_iter)
    if isinstance(right, IterationFailure):
        return IterationFailure(right.reason, right.iterations, right.residual * scale,
                                None if right.rayleigh is None else right.rayleigh * scale)
    left = _power_iterate(arr.T, tol, max_iter)
    if isinstance(left, IterationFailure):
        return IterationFailure(
            "transpose iteration: " + left.reason,
            left.iterations,
            left.residual * scale,
            None if left.rayleigh is None else left.rayleigh * scale,
        )
    x, ray_r, res_r, it_r, gap_r = right
    x_star, ray_l, res_l, it_l, gap_l = left
    if abs(ray_r - ray_l) > 1e-8 * max(abs(ray_r), abs(ray_l), 1e-300):
        return IterationFailure(
            f"left/right dominant eigenvalue mismatch ({ray_r * scale:.6g} vs {ray_l * scale:.6g})",
            it_r + it_l,
            max(res_r, res_l) * scale,
        )
    value = ray_r * scale
    residual_x = float(np.max(np.abs(arr @ x - ray_r * x))) * scale
    residual_xstar = float(np.max(np.abs(arr.T @ x_star - ray_r * x_star))) * scale
    gap = gap_r if gap_r is not None else gap_l
    return SpectralCertificate(
        value=value,
        x=vec_from_ndarray(x),
        x_star=vec_from_ndarray(x_star),
        residual_x=residual_x,
        residual_xstar=residual_xstar,
        iterations=max(it_r, it_l),
        dominance_gap=gap,
        tol=tol * scale,
    )


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending absolute value with per-value residuals."""

    eigenvalues: tuple[float, ...]
    method: str
    residuals: tuple[float, ...]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class SpectrumFailure:
    reason: str
    failing_order: Optional[int] = None

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class CharPair:
    """Closed-form 2x2 eigenvalue data from the characteristic polynomial."""

    trace: object
    determinant: object
    discriminant: object
    roots: Optional[tuple[float, float]]  # descending |.|, None when complex

    @property
    def is_complex_pair(self) -> bool:
        return self.roots is None

    @property
    def is_tied(self) -> bool:
        return self.roots is not None and abs(self.roots[0]) == abs(self.roots[1])


def eigenvalues_2x2(a: Matrix) -> CharPair:
    """Exact-friendly quadratic eigenvalue analysis of a 2x2 matrix."""
    if a.shape != (2, 2):
        raise DimensionError("2x2 matrix required")
    tr = a.entries[0][0] + a.entries[1][1]
    dt = a.entries[0][0] * a.entries[1][1] - a.entries[0][1] * a.entries[1][0]
    disc = tr * tr - 4 * dt
    if disc < 0:
        return CharPair(tr, dt, disc, None)
    root = math.sqrt(float(disc))
    lam1 = (float(tr) + root) / 2.0
    lam2 = (float(tr) - root) / 2.0
    pair = (lam1, lam2) if abs(lam1) >= abs(lam2) else (lam2, lam1)
    if disc == 0:
        pair = (lam1, lam1)
    return CharPair(tr, dt, disc, pair)


def spectrum_via_compounds(a: Matrix, tol: float = DEFAULT_TOL) -> Union[Spectrum, SpectrumFailure]:
    """Full spectrum from successive compound spectral-radius ratios.

    lambda_j is the signed dominant value of the j-th compound divided by
    that of the (j-1)-th; the product of all lambda_j must reproduce det(A)
    to 1e-6 relative or the result is rejected.
    """
    if not a.is_square:
        raise DimensionError("square matrix required")
    n = a.n_rows
    values: list[float] = []
    residuals: list[float] = []
    prev = 1.0
    for j in range(1, n + 1):
        cert = dominant_eigenpair(compound(a, j), tol)
        if isinstance(cert, IterationFailure):
            if n == 2:
                pair = eigenvalues_2x2(a)
                if pair.is_complex_pair:
                    return SpectrumFailure(
                        f"complex dominant pair (discriminant {pair.discriminant} < 0)", j
                    )
                if pair.is_tied:
                    return SpectrumFailure("dominance tie: |lambda_1| = |lambda_2|", j)
                return Spectrum(pair.roots, "characteristic-2x2", (0.0, 0.0))
            return SpectrumFailure(f"power iteration failed on compound {j}: {cert.reason}", j)
        if prev == 0.0:
            return SpectrumFailure("zero intermediate compound radius", j)
        values.append(cert.value / prev)
        residuals.append(cert.residual_x)
        prev = cert.value
    determinant = float(det(a))
    product = prev  # dominant value of the n-th (1x1) compound
    denom = max(abs(determinant), abs(product), 1e-300)
    if abs(product - determinant) > 1e-6 * denom:
        return SpectrumFailure(
            f"determinant consistency failed: product {product:.9g} vs det {determinant:.9g}"
        )
    return Spectrum(tuple(values), "compound-ratios", tuple(residuals))


def eigenvector_for(
    a: Matrix, value: float, tol: float = 1e-10, max_iter: int = 500
) -> Vector:
    """Eigenvector for an (approximately known) simple eigenvalue via shifted
    inverse iteration; the shift is nudged by 1e-8 relative if the shifted
    matrix is exactly singular at working precision."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    arr = as_ndarray(a)
    n = arr.shape[0]
    scale = float(np.max(np.abs(arr))) or 1.0
    shift = float(value)
    x = _sign_normalize(1.0 + 1e-6 * np.arange(n, dtype=float))
    for _ in range(3):
        shifted = arr - shift * np.eye(n)
        try:
            for _ in range(max_iter):
                y = np.linalg.solve(shifted, x)
                ynorm = float(np.max(np.abs(y)))
                if not np.isfinite(ynorm) or ynorm == 0.0:
                    raise np.linalg.LinAlgError
                x = _sign_normalize(y)
                res = float(np.max(np.abs(arr @ x - float(value) * x)))
                if res <= tol * scale:
                    return vec_from_ndarray(x)
            raise ConvergenceError(
                f"inverse iteration stalled at residual {res:.3e} for shift {value!r}"
            )
        except np.linalg.LinAlgError:
            shift = shift * (1.0 + 1e-8) if shift != 0.0 else 1e-8 * scale
    raise ConvergenceError(f"shifted matrix remained singular near {value!r}")


@dataclass(frozen=True)
class SpectralCheck:
    """Tri-state spectral property check.

    ``outcome`` is True/False when decided, None when the underlying
    iteration could not resolve a dominant eigenpair.
    """

    outcome: Optional[bool]
    reason: Optional[str] = None
    certificate: Optional[SpectralCertificate] = None
    certificates: tuple = ()
    partition: Optional[SignPartition] = None
    partitions: tuple = ()

    def __bool__(self) -> bool:
        return self.outcome is True


def _zero_coord_indices(v: Vector) -> list[int]:
    arr = vec_as_ndarray(v)
    cutoff = ZERO_COORD_RTOL * float(np.max(np.abs(arr)))
    return [i + 1 for i, value in enumerate(arr) if abs(value) <= cutoff]


def check_strong_pf(a: Matrix, tol: float = DEFAULT_TOL) -> SpectralCheck:
    """Positive dominant eigenvalue with a strictly one-signed eigenvector."""
    cert = dominant_eigenpair(a, tol)
    if isinstance(cert, IterationFailure):
        return SpectralCheck(None, f"iteration failure: {cert.reason}")
    if cert.value <= 0:
        return SpectralCheck(False, f"dominant eigenvalue {cert.value:.6g} is not positive",
                             certificate=cert)
    zeros = _zero_coord_indices(cert.x)
    if zeros:
        return SpectralCheck(
            False,
            f"dominant eigenvector has zero coordinate(s) at {zeros}",
            certificate=cert,
        )
    coords = vec_as_ndarray(cert.x)
    if np.any(coords < 0):
        return SpectralCheck(False, "dominant eigenvector has mixed signs", certificate=cert)
    return SpectralCheck(True, certificate=cert)


def check_signature_equality(a: Matrix, tol: float = DEFAULT_TOL) -> SpectralCheck:
    """Positive dominant eigenvalue whose eigenvector and eigenfunctional
    have no zero coordinates and identical sign patterns; returns the
    partition J = {i : x_i > 0} on success (index 1 always in J because of
    the first-nonzero-positive normalization)."""
    cert = dominant_eigenpair(a, tol)
    if isinstance(cert, IterationFailure):
        return SpectralCheck(None, f"iteration failure: {cert.reason}")
    if cert.value <= 0:
        return SpectralCheck(False, f"dominant eigenvalue {cert.value:.6g} is not positive",
                             certificate=cert)
    zeros = _zero_coord_indices(cert.x) + _zero_coord_indices(cert.x_star)
    if zeros:
        return SpectralCheck(
            False,
            f"eigenvector/eigenfunctional zero coordinate(s) at {sorted(set(zeros))}",
            certificate=cert,
        )
    sx = np.sign(vec_as_ndarray(cert.x))
    sxs = np.sign(vec_as_ndarray(cert.x_star))
    if not np.array_equal(sx, sxs):
        return SpectralCheck(False, "eigenvector and eigenfunctional sign patterns differ",
                             certificate=cert)
    plus = frozenset(i + 1 for i, s in enumerate(sx) if s > 0)
    return SpectralCheck(True, certificate=cert,
                         partition=SignPartition(a.n_rows, plus))


def check_weak_signature_equality(a: Matrix, tol: float = DEFAULT_TOL) -> SpectralCheck:
    """Positive dominant eigenvalue with x_i * xstar_i >= 0 coordinatewise."""
    cert = dominant_eigenpair(a, tol)
    if isinstance(cert, IterationFailure):
        return SpectralCheck(None, f"iteration failure: {cert.reason}")
    if cert.value <= 0:
        return SpectralCheck(False, f"dominant eigenvalue {cert.value:.6g} is not positive",
                             certificate=cert)
    products = vec_as_ndarray(cert.x) * vec_as_ndarray(cert.x_star)
    cutoff = ZERO_COORD_RTOL ** 2
    bad = [i + 1 for i, p in enumerate(products) if p < -cutoff]
    if bad:
        return SpectralCheck(False, f"x_i * xstar_i < 0 at indices {bad}", certificate=cert)
    return SpectralCheck(True, certificate=cert)


@dataclass(frozen=True)
class MarkovCheck:
    ok: bool
    signs: tuple[int, ...]  # per prefix length: +1 / -1 one-signed, 0 = not

    def __bool__(self) -> bool:
        return self.ok


def check_markov_system(vectors: Sequence[Vector]) -> MarkovCheck:
    """Every prefix wedge x_1 ^ ... ^ x_j strictly one-signed."""
    signs: list[int] = []
    ok = True
    for j in range(1, len(vectors) + 1):
        wedge = exterior_product(list(vectors[:j]))
        arr = vec_as_ndarray(wedge)
        peak = float(np.max(np.abs(arr)))
        if peak == 0.0:
            signs.append(0)
            ok = False
            continue
        cutoff = ZERO_COORD_RTOL * peak
        if np.all(arr > cutoff):
            signs.append(1)
        elif np.all(arr < -cutoff):
            signs.append(-1)
        else:
            signs.append(0)
            ok = False
    return MarkovCheck(ok, tuple(signs))


def check_gk_property(
    a: Matrix, tol: float = DEFAULT_TOL, transpose_compounds: bool = False
) -> SpectralCheck:
    """Strong Perron-Frobenius property of every compound (the
    Gantmacher-Krein criterion: positive simple spectrum with a Markov
    system of eigenvectors).

    With ``transpose_compounds`` the check runs on the transposed compounds,
    which equals the check for the transposed matrix because transposition
    commutes with taking compounds.
    """
    if not a.is_square:
        raise DimensionError("square matrix required")
    if a.n_rows > 12:
        raise DimensionError("compound-based checks support n <= 12")
    certs = []
    for j in range(1, a.n_rows + 1):
        comp = compound(a, j)
        if transpose_compounds:
            comp = transpose(comp)
        sub = check_strong_pf(comp, tol)
        certs.append(sub.certificate)
        if sub.outcome is False:
            return SpectralCheck(False, f"compound {j}: {sub.reason}",
                                 certificates=tuple(certs))
        if sub.outcome is None:
            return SpectralCheck(None, f"compound {j}: {sub.reason}",
                                 certificates=tuple(certs))
    return SpectralCheck(True, certificates=tuple(certs))


def check_tse_property(a: Matrix, tol: float = DEFAULT_TOL) -> SpectralCheck:
    """Signature equality at every compound level, with the per-level
    partitions on success."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    if a.n_rows > 12:
        raise DimensionError("compound-based checks support n <= 12")
    partitions = []
    certs = []
    for j in range(1, a.n_rows + 1):
        sub = check_signature_equality(compound(a, j), tol)
        partitions.append(sub.partition)
        certs.append(sub.certificate)
        if sub.outcome is False:
            return SpectralCheck(False, f"compound {j}: {sub.reason}",
                                 certificates=tuple(certs), partitions=tuple(partitions))
        if sub.outcome is None:
            return SpectralCheck(None, f"compound {j}: {sub.reason}",
                                 certificates=tuple(certs), partitions=tuple(partitions))
    return SpectralCheck(True, certificates=tuple(certs), partitions=tuple(partitions))


def rank_one_limit_residual(a: Matrix, k: int, tol: float = DEFAULT_TOL) -> float:
    """Max-abs distance between A^k / lambda^k and the rank-one spectral
    projector x (x*)^T, with the eigenfunctional scaled so x* . x = 1.

    Requires a converged positive dominant eigenpair; the distance decays
    like |lambda_2 / lambda_1|^k when the dominant eigenvalue is simple and
    strictly dominant.
    """
    if k < 0:
        raise ValueError("power must be non-negative")
    cert = dominant_eigenpair(a, tol)
    if isinstance(cert, IterationFailure):
        raise ValueError(f"no dominant eigenpair: {cert.reason}")
    if cert.value <= 0:
        raise ValueError(f"dominant eigenvalue {cert.value:.6g} is not positive")
    x = vec_as_ndarray(cert.x)
    x_star = vec_as_ndarray(cert.x_star)
    pairing = float(x_star @ x)
    if abs(pairing) < 1e-12:
        raise ValueError("eigenvector and eigenfunctional are numerically biorthogonal")
    projector = np.outer(x, x_star / pairing)
    powered = np.linalg.matrix_power(as_ndarray(a) / cert.value, k)
    return float(np.max(np.abs(powered - projector)))

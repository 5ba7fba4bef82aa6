"""Tri-state classification of eventual matrix properties.

Every eventual verdict rests on two legs: a spectral certificate (via the
equivalences between eventual sign structure of powers and dominant-eigenpair
structure) and a finite power search up to ``k_max``.  A ``yes`` requires the
two routes to agree; a ``no`` requires a concrete witness (an exact spectral
obstruction, a sign obstruction, or an exactly periodic power sequence that
violates the property forever); everything else is ``unknown`` with the
reasons recorded.

Power searches on the float backend rescale each power to unit max-abs entry,
which leaves every predicate used here invariant (they are all determined by
signs of entries or minors).  On the exact backend powers are computed
exactly and repeated powers are detected, which upgrades finite evidence into
a proof for matrices of finite multiplicative order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .core import (
    DimensionError,
    Matrix,
    det,
    inverse,
    mat_mul,
    mat_pow,
    max_abs,
    scale as scale_matrix,
    shifted,
    to_exact,
    transpose,
    vec_as_ndarray,
)
from .exterior import compound
from .signs import (
    PropertyCheck,
    SignPartition,
    default_zero_tolerance,
    detect_js,
    detect_sjs,
    is_monotone,
    is_oscillatory,
    is_p_matrix,
    is_stjs,
    is_stp,
    is_tjs,
    is_tp,
    is_tsa,
)
from .spectral import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    IterationFailure,
    SpectralCheck,
    check_gk_property,
    check_signature_equality,
    check_strong_pf,
    check_tse_property,
    dominant_eigenpair,
    eigenvalues_2x2,
    spectrum_via_compounds,
)

logger = logging.getLogger("matprops")

DEFAULT_K_MAX = 64
#: |lambda_2|/|lambda_1| this close to 1 counts as "not strictly dominant".
RATIO_GUARD = 1e-9


class Status(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    status: Status
    power_index_observed: Optional[int] = None
    theorem_basis: str = ""
    certificates: tuple = ()
    partitions: tuple = ()
    witness: Optional[str] = None
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class CrossCheck:
    name: str
    passed: Optional[bool]  # None = premise absent, nothing to check
    detail: str = ""


@dataclass
class ClassificationReport:
    description: str
    backend: str
    tolerances: dict
    verdicts: dict[str, Verdict]
    cross_checks: list[CrossCheck]
    warnings: list[str]


@dataclass(frozen=True)
class ClassifyConfig:
    tol: float = DEFAULT_TOL
    k_max: int = DEFAULT_K_MAX
    max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.k_max < 2:
            raise ValueError("k_max must be at least 2 (consecutive powers are needed)")


# ---------------------------------------------------------------------------
# power search


@dataclass(frozen=True)
class SearchResult:
    """Outcome of testing a predicate on A^1 .. A^(k_max).

    ``proven`` is set when the power sequence was observed to repeat exactly
    (exact backend, or a power collapsed to the zero matrix): True means the
    property provably holds for all large k, False that it provably fails
    infinitely often.
    """

    holds: tuple[bool, ...]
    payloads: tuple
    first_persistent: Optional[int]
    flicker: tuple[int, ...]
    proven: Optional[bool] = None
    cycle: Optional[tuple[int, int]] = None

    @property
    def found(self) -> bool:
        if self.proven is True:
            return True
        if self.proven is False:
            return False
        return self.first_persistent is not None and not self.flicker


def power_search(
    a: Matrix,
    predicate: Callable[[Matrix], tuple[bool, object]],
    k_max: int = DEFAULT_K_MAX,
) -> SearchResult:
    """Evaluate ``predicate`` (which must be invariant under positive scaling)
    on successive powers of ``a``."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    holds: list[bool] = []
    payloads: list[object] = []
    proven: Optional[bool] = None
    cycle: Optional[tuple[int, int]] = None
    seen: dict[object, int] = {}
    power = a
    if a.backend == "float":
        top = float(max_abs(a))
        if top > 0.0:
            power = scale_matrix(a, 1.0 / top)
    for k in range(1, k_max + 1):
        if a.backend == "exact":
            key = power.entries
            if key in seen:
                start = seen[key]
                cycle = (start, k - start)
                segment = holds[start - 1:]
                proven = all(segment)
                break
            seen[key] = k
        ok, payload = predicate(power)
        holds.append(ok)
        payloads.append(payload)
        if k == k_max:
            break
        power = mat_mul(power, a)
        if a.backend == "float":
            top = float(max_abs(power))
            if top == 0.0:
                # The zero matrix reproduces itself: evaluate once and stop.
                ok, payload = predicate(power)
                cycle = (k + 1, 1)
                proven = ok
                holds.append(ok)
                payloads.append(payload)
                break
            power = scale_matrix(power, 1.0 / top)
        elif max_abs(power) == 0:
            ok, payload = predicate(power)
            cycle = (k + 1, 1)
            proven = ok
            holds.append(ok)
            payloads.append(payload)
            break
    first_persistent = None
    for idx in range(len(holds) - 1, -1, -1):
        if holds[idx]:
            first_persistent = idx + 1
        else:
            break
    if proven is True and first_persistent is None:
        first_persistent = len(holds)
    flicker = tuple(
        idx + 1
        for idx in range(len(holds))
        if not holds[idx] and any(holds[:idx])
    )
    if proven is not None:
        flicker = ()
    return SearchResult(tuple(holds), tuple(payloads), first_persistent, flicker, proven, cycle)


def _entrywise_positive(m: Matrix) -> bool:
    tol = default_zero_tolerance(m)
    return all(x > tol for row in m.entries for x in row)


def _entrywise_nonnegative(m: Matrix) -> bool:
    tol = default_zero_tolerance(m)
    return all(x >= -tol for row in m.entries for x in row)


def compound_power_search(
    a: Matrix,
    per_level: Callable[[int, Matrix], tuple[bool, object]],
    k_max: int = DEFAULT_K_MAX,
) -> SearchResult:
    """Test a per-compound-order predicate on the powers of every compound.

    By the Cauchy-Binet identity (A^k)^(j) = (A^(j))^k, so checking the k-th
    power of the j-th compound is the same as checking the j-th compound of
    A^k; working per level keeps every float power rescaled to unit max-abs,
    which avoids the underflow that minors of high powers would hit if the
    compounds of A^k were formed directly.  The predicate must be invariant
    under positive scaling.  On the exact backend, repeated powers of the
    matrix itself are detected as in :func:`power_search` and upgrade the
    outcome to a proof.
    """
    if not a.is_square:
        raise DimensionError("square matrix required")
    n = a.n_rows
    levels = [compound(a, j) for j in range(1, n + 1)]
    powers = list(levels)
    if a.backend == "float":
        powers = [
            scale_matrix(m, 1.0 / float(max_abs(m))) if float(max_abs(m)) > 0.0 else m
            for m in powers
        ]
    holds: list[bool] = []
    payloads: list[object] = []
    proven: Optional[bool] = None
    cycle: Optional[tuple[int, int]] = None
    seen: dict[object, int] = {}
    base = a
    for k in range(1, k_max + 1):
        if a.backend == "exact":
            key = base.entries
            if key in seen:
                start = seen[key]
                cycle = (start, k - start)
                proven = all(holds[start - 1:])
                break
            seen[key] = k
        ok = True
        level_payloads = []
        for j, m in enumerate(powers, start=1):
            level_ok, payload = per_level(j, m)
            if not level_ok:
                ok = False
                break
            level_payloads.append(payload)
        holds.append(ok)
        payloads.append(tuple(level_payloads) if ok else None)
        if k == k_max:
            break
        powers = [mat_mul(m, level) for m, level in zip(powers, levels)]
        if a.backend == "float":
            rescaled = []
            for m in powers:
                top = float(max_abs(m))
                rescaled.append(scale_matrix(m, 1.0 / top) if top > 0.0 else m)
            powers = rescaled
        else:
            base = mat_mul(base, a)
    first_persistent = None
    for idx in range(len(holds) - 1, -1, -1):
        if holds[idx]:
            first_persistent = idx + 1
        else:
            break
    if proven is True and first_persistent is None:
        first_persistent = len(holds)
    flicker = tuple(
        idx + 1 for idx in range(len(holds)) if not holds[idx] and any(holds[:idx])
    )
    if proven is not None:
        flicker = ()
    return SearchResult(tuple(holds), tuple(payloads), first_persistent, flicker,
                        proven, cycle)


# ---------------------------------------------------------------------------
# shared probes


def _fmt_check(check: SpectralCheck) -> str:
    if check.outcome is True:
        return "holds"
    if check.outcome is False:
        return f"fails ({check.reason})"
    return f"undecided ({check.reason})"


def _fmt_search(sr: SearchResult, what: str) -> str:
    if sr.proven is True:
        return f"search: {what} proven from k={sr.first_persistent} (periodic powers)"
    if sr.proven is False:
        return (
            f"search: {what} provably fails infinitely often "
            f"(powers repeat from k={sr.cycle[0]} with period {sr.cycle[1]})"
        )
    if sr.first_persistent is not None and not sr.flicker:
        return f"search: {what} holds from k={sr.first_persistent} through k_max"
    if sr.flicker:
        return f"search: {what} flickered (lost at powers {list(sr.flicker)})"
    return f"search: {what} never observed up to k_max"


def _dominance_ratio(a: Matrix, tol: float) -> Optional[float]:
    """Estimate |lambda_2| / |lambda_1| from the second compound radius."""
    if a.n_rows < 2:
        return 0.0
    top = dominant_eigenpair(a, tol)
    if isinstance(top, IterationFailure) or top.value == 0:
        return None
    second = dominant_eigenpair(compound(a, 2), tol)
    if isinstance(second, IterationFailure):
        return None
    return abs(second.value) / (abs(top.value) ** 2)


def _quadratic_obstruction(a: Matrix) -> Optional[str]:
    """Definite reason a 2x2 matrix has no simple, strictly dominant,
    positive eigenvalue.  Exact: the characteristic quadratic is evaluated in
    rational arithmetic (float entries convert exactly), so these are proofs
    about the stored matrix."""
    pair = eigenvalues_2x2(to_exact(a))
    tr, dt, disc = pair.trace, pair.determinant, pair.discriminant
    if disc < 0:
        return (
            f"complex eigenvalue pair: trace {tr}, determinant {dt}, "
            f"discriminant {disc} < 0"
        )
    if disc == 0:
        return f"dominant eigenvalue is not simple (repeated root, trace {tr}, determinant {dt})"
    if tr == 0:
        return "dominance tie: the eigenvalues are +/-r with equal modulus"
    assert pair.roots is not None
    if pair.roots[0] < 0:
        return f"dominant eigenvalue {pair.roots[0]:.6g} is negative"
    return None


def _exact_det_sign(a: Matrix) -> int:
    value = det(to_exact(a))
    return (value > 0) - (value < 0)


def conjugate(a: Matrix, s: Matrix) -> Matrix:
    """S^-1 A S (raises SingularMatrixError for singular S)."""
    if not a.is_square or not s.is_square or a.n_rows != s.n_rows:
        raise DimensionError("conjugation needs square matrices of equal size")
    return mat_mul(mat_mul(inverse(s), a), s)


def shift_check(a: Matrix, alpha, tol: float = DEFAULT_TOL, k_max: int = DEFAULT_K_MAX) -> bool:
    """Whether "GK(a) implies GK(a + alpha I)" held on this input.

    Positive diagonal shifts translate the spectrum without touching the
    eigenvectors, so the implication must always hold; this is exposed as a
    property probe and the result is logged.
    """
    if not alpha > 0:
        raise ValueError("shift must be positive")
    base = check_gk_property(a, tol)
    if base.outcome is not True:
        logger.info("shift_check: premise GK not established (%s); implication vacuous",
                    base.reason)
        return True
    shifted_check = check_gk_property(shifted(a, alpha), tol)
    held = shifted_check.outcome is True
    logger.info("shift_check: GK preserved under +%s I: %s", alpha, held)
    return held


# ---------------------------------------------------------------------------
# eventual classifiers

EP_BASIS = ("eventual positivity <=> strong Perron-Frobenius property of the matrix "
            "and its transpose (Johnson-Tarazaga); anchored by two consecutive positive powers")
EN_BASIS = ("finite power evidence only; Perron-Frobenius structure is necessary "
            "(Noutsos) but not sufficient for eventual nonnegativity")
ESJS_BASIS = ("signature equality <=> eventual strict J-sign-symmetry; "
              "diagonal conjugation carries the matrix to an eventually positive one")
ESTP_BASIS = ("Gantmacher-Krein property of the matrix and its transpose <=> every "
              "compound eventually positive <=> eventual strict total positivity")
ESTJS_BASIS = ("total signature equality <=> every compound eventually strictly "
               "J-sign-symmetric <=> eventual strict total J-sign-symmetry")
EVP_BASIS = ("finite power evidence (principal minors of consecutive powers); "
             "with a positive simple distinct spectrum, eventual P-ness forces "
             "eventual strict total J-sign-symmetry")


def classify_ep(a: Matrix, tol: float = DEFAULT_TOL, k_max: int = DEFAULT_K_MAX) -> Verdict:
    """Eventually positive: A^k entrywise positive for all k >= k_0."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    search = power_search(a, lambda m: (_entrywise_positive(m), None), k_max)
    spf = check_strong_pf(a, tol)
    spf_t = check_strong_pf(transpose(a), tol)
    spectral_ok = spf.outcome is True and spf_t.outcome is True
    notes = [
        f"spectral route: A {_fmt_check(spf)}; A^T {_fmt_check(spf_t)}",
        _fmt_search(search, "entrywise positivity"),
    ]
    certs = tuple(c for c in (spf.certificate, spf_t.certificate) if c is not None)
    if search.proven is False:
        return Verdict(Status.NO, None, EP_BASIS, certs,
                       witness=_fmt_search(search, "entrywise positivity"),
                       notes=tuple(notes))
    if spectral_ok and search.found:
        k0 = search.first_persistent
        if k0 is not None and k0 < len(search.holds):
            notes.append(f"consecutive positive powers at k={k0}, {k0 + 1}")
        return Verdict(Status.YES, k0, EP_BASIS, certs, notes=tuple(notes))
    if search.flicker:
        notes.append(f"positivity flickered at powers {list(search.flicker)}")
        return Verdict(Status.UNKNOWN, None, EP_BASIS, certs, notes=tuple(notes))
    if not search.found:
        if a.n_rows == 2:
            obstruction = _quadratic_obstruction(a)
            if obstruction:
                return Verdict(Status.NO, None, EP_BASIS, certs, witness=obstruction,
                               notes=tuple(notes))
        for label, check in (("A", spf), ("A^T", spf_t)):
            if check.outcome is False:
                return Verdict(Status.NO, None, EP_BASIS, certs,
                               witness=f"{label}: {check.reason}", notes=tuple(notes))
        if spectral_ok:
            ratio = _dominance_ratio(a, tol)
            if ratio is not None and ratio >= 1.0 - RATIO_GUARD:
                return Verdict(
                    Status.NO, None, EP_BASIS, certs,
                    witness=(f"dominant eigenvalue is not strictly dominant: "
                             f"|lambda_2|/|lambda_1| = {ratio:.9f}"),
                    notes=tuple(notes),
                )
            notes.append("route disagreement: spectral certificate present but no "
                         "positive power within k_max")
        return Verdict(Status.UNKNOWN, None, EP_BASIS, certs, notes=tuple(notes))
    notes.append("route disagreement: positive powers found but the spectral route "
                 "did not certify them")
    return Verdict(Status.UNKNOWN, search.first_persistent, EP_BASIS, certs,
                   notes=tuple(notes))


def classify_en(a: Matrix, tol: float = DEFAULT_TOL, k_max: int = DEFAULT_K_MAX) -> Verdict:
    """Eventually nonnegative: search-only yes; no with a sound spectral
    obstruction (there is no spectral converse)."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    search = power_search(a, lambda m: (_entrywise_nonnegative(m), None), k_max)
    notes = [_fmt_search(search, "entrywise nonnegativity")]
    if search.proven is False:
        return Verdict(Status.NO, None, EN_BASIS,
                       witness=_fmt_search(search, "entrywise nonnegativity"),
                       notes=tuple(notes))
    if search.found:
        notes.append("finite evidence only: eventual nonnegativity has no spectral converse")
        return Verdict(Status.YES, search.first_persistent, EN_BASIS, notes=tuple(notes))
    if search.flicker:
        notes.append(f"nonnegativity flickered at powers {list(search.flicker)}")
        return Verdict(Status.UNKNOWN, None, EN_BASIS, notes=tuple(notes))
    cert = dominant_eigenpair(a, tol)
    cert_t = dominant_eigenpair(transpose(a), tol)
    ratio = _dominance_ratio(a, tol)
    strictly_dominant = ratio is not None and ratio < 1.0 - RATIO_GUARD
    for label, c in (("A", cert), ("A^T", cert_t)):
        if isinstance(c, IterationFailure) or not strictly_dominant:
            continue
        if c.value < 0:
            return Verdict(
                Status.NO, None, EN_BASIS, (c,),
                witness=(f"{label}: dominant eigenvalue {c.value:.6g} is negative "
                         f"(Perron-Frobenius necessity fails; power sign patterns "
                         f"alternate forever)"),
                notes=tuple(notes),
            )
        if c.value > 0:
            x = vec_as_ndarray(c.x)
            xs = vec_as_ndarray(c.x_star)
            pairing = float(xs @ x)
            if abs(pairing) > 1e-12:
                proj = np.outer(x, xs / pairing)
                cutoff = 1e-7 * float(np.max(np.abs(proj)))
                spots = np.argwhere(proj < -cutoff)
                if len(spots):
                    i, j = spots[0] + 1
                    return Verdict(
                        Status.NO, None, EN_BASIS, (c,),
                        witness=(f"rank-one power limit has a negative entry at "
                                 f"({i}, {j}); large powers repeat its sign"),
                        notes=tuple(notes),
                    )
    notes.append("power search exhausted and no sound spectral obstruction applies")
    return Verdict(Status.UNKNOWN, None, EN_BASIS, notes=tuple(notes))


def _constant_payload(search: SearchResult):
    """The payload shared by every power from first_persistent on, or None."""
    if search.first_persistent is None:
        return None
    tail = search.payloads[search.first_persistent - 1:]
    tail = [p for p in tail if p is not None]
    if not tail:
        return None
    first = tail[0]
    return first if all(p == first for p in tail) else None


def classify_esjs(a: Matrix, tol: float = DEFAULT_TOL, k_max: int = DEFAULT_K_MAX) -> Verdict:
    """Eventually strictly J-sign-symmetric."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    search = power_search(a, lambda m: ((p := detect_sjs(m)) is not None, p), k_max)
    sig = check_signature_equality(a, tol)
    notes = [
        f"spectral route: signature equality {_fmt_check(sig)}",
        _fmt_search(search, "strict J-sign-symmetry"),
    ]
    certs = (sig.certificate,) if sig.certificate is not None else ()
    if search.proven is False:
        return Verdict(Status.NO, None, ESJS_BASIS, certs,
                       witness=_fmt_search(search, "strict J-sign-symmetry"),
                       notes=tuple(notes))
    stable_partition = _constant_payload(search) if search.found else None
    if search.found and stable_partition is None:
        notes.append("partition drifted across the persistent range")
    if sig.outcome is True:
        d = sig.partition.diagonal(a.backend)
        ep_sub = classify_ep(conjugate(a, d), tol, k_max)
        notes.append(f"conjugated matrix D^-1 A D eventually positive: {ep_sub.status.value}")
        if (
            ep_sub.status is Status.YES
            and search.found
            and stable_partition == sig.partition
        ):
            return Verdict(Status.YES, search.first_persistent, ESJS_BASIS, certs,
                           partitions=(sig.partition,), notes=tuple(notes))
        if not search.found and not search.flicker:
            ratio = _dominance_ratio(a, tol)
            if ratio is not None and ratio >= 1.0 - RATIO_GUARD:
                return Verdict(
                    Status.NO, None, ESJS_BASIS, certs,
                    witness=(f"dominant eigenvalue is not strictly dominant: "
                             f"|lambda_2|/|lambda_1| = {ratio:.9f}"),
                    notes=tuple(notes),
                )
        notes.append("route disagreement between signature equality, conjugation and search")
        return Verdict(Status.UNKNOWN, None, ESJS_BASIS, certs, notes=tuple(notes))
    if sig.outcome is False and not search.found and not search.flicker:
        return Verdict(Status.NO, None, ESJS_BASIS, certs,
                       witness=f"signature equality fails: {sig.reason}", notes=tuple(notes))
    if a.n_rows == 2 and not search.found and not search.flicker:
        obstruction = _quadratic_obstruction(a)
        if obstruction:
            return Verdict(Status.NO, None, ESJS_BASIS, certs, witness=obstruction,
                           notes=tuple(notes))
    return Verdict(Status.UNKNOWN, None, ESJS_BASIS, certs, notes=tuple(notes))


def classify_estp(a: Matrix, tol: float = DEFAULT_TOL, k_max: int = DEFAULT_K_MAX) -> Verdict:
    """Eventually strictly totally positive."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    if a.n_rows > 12:
        raise DimensionError("compound-based classification supports n <= 12")
    n = a.n_rows
    dsign = _exact_det_sign(a)
    if dsign <= 0:
        reason = ("det(A) = 0: every power is singular, so the top minor is never positive"
                  if dsign == 0 else
                  "det(A) < 0: odd powers have a negative determinant")
        return Verdict(Status.NO, None, ESTP_BASIS, witness=reason)
    if n == 2:
        obstruction = _quadratic_obstruction(a)
        if obstruction:
            return Verdict(Status.NO, None, ESTP_BASIS, witness=obstruction)
    # is_stp(A^k) evaluated level-by-level through the Cauchy-Binet identity
    search = compound_power_search(a, lambda j, m: (_entrywise_positive(m), None), k_max)
    gk = check_gk_property(a, tol)
    gk_t = check_gk_property(a, tol, transpose_compounds=True)
    subs = [classify_ep(compound(a, j), tol, k_max) for j in range(1, n + 1)]
    spectral_ok = gk.outcome is True and gk_t.outcome is True
    compounds_ok = all(s.status is Status.YES for s in subs)
    notes = [
        f"spectral route: GK {_fmt_check(gk)}; transposed compounds {_fmt_check(gk_t)}",
        "compound route: " + ", ".join(
            f"order {j}: {s.status.value}" for j, s in enumerate(subs, start=1)),
        _fmt_search(search, "strict total positivity"),
    ]
    if search.proven is False:
        return Verdict(Status.NO, None, ESTP_BASIS, gk.certificates,
                       witness=_fmt_search(search, "strict total positivity"),
                       notes=tuple(notes))
    if spectral_ok and compounds_ok and search.found:
        k0 = search.first_persistent
        compound_k0 = max((s.power_index_observed or 1) for s in subs)
        if compound_k0 == k0:
            notes.append(f"power index agrees with the maximum over compounds ({compound_k0})")
        else:
            notes.append(f"power index {k0} vs max over compounds {compound_k0}")
        return Verdict(Status.YES, k0, ESTP_BASIS, gk.certificates, notes=tuple(notes))
    if search.flicker:
        notes.append(f"strict total positivity flickered at powers {list(search.flicker)}")
        return Verdict(Status.UNKNOWN, None, ESTP_BASIS, gk.certificates, notes=tuple(notes))
    if not search.found:
        for j, s in enumerate(subs, start=1):
            if s.status is Status.NO:
                return Verdict(Status.NO, None, ESTP_BASIS, gk.certificates,
                               witness=f"compound {j} is not eventually positive: {s.witness}",
                               notes=tuple(notes))
        for label, check in (("compounds", gk), ("transposed compounds", gk_t)):
            if check.outcome is False:
                return Verdict(Status.NO, None, ESTP_BASIS, gk.certificates,
                               witness=f"{label}: {check.reason}", notes=tuple(notes))
        return Verdict(Status.UNKNOWN, None, ESTP_BASIS, gk.certificates, notes=tuple(notes))
    notes.append("route disagreement: strictly totally positive powers found but the "
                 "spectral/compound routes did not certify them")
    return Verdict(Status.UNKNOWN, search.first_persistent, ESTP_BASIS, gk.certificates,
                   notes=tuple(notes))


def classify_estjs(a: Matrix, tol: float = DEFAULT_TOL, k_max: int = DEFAULT_K_MAX) -> Verdict:
    """Eventually strictly totally J-sign-symmetric."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    if a.n_rows > 12:
        raise DimensionError("compound-based classification supports n <= 12")
    n = a.n_rows
    dsign = _exact_det_sign(a)
    if dsign <= 0:
        reason = ("det(A) = 0: the top compound of every power vanishes"
                  if dsign == 0 else
                  "det(A) < 0: odd powers have a negative determinant, which can "
                  "never be strictly J-sign-symmetric at the top order")
        return Verdict(Status.NO, None, ESTJS_BASIS, witness=reason)
    if n == 2:
        obstruction = _quadratic_obstruction(a)
        if obstruction:
            return Verdict(Status.NO, None, ESTJS_BASIS, witness=obstruction)

    def level_predicate(j: int, m: Matrix) -> tuple[bool, object]:
        partition = detect_sjs(m)
        return partition is not None, partition

    search = compound_power_search(a, level_predicate, k_max)
    tse = check_tse_property(a, tol)
    subs = [classify_esjs(compound(a, j), tol, k_max) for j in range(1, n + 1)]
    compounds_ok = all(s.status is Status.YES for s in subs)
    notes = [
        f"spectral route: total signature equality {_fmt_check(tse)}",
        "compound route: " + ", ".join(
            f"order {j}: {s.status.value}" for j, s in enumerate(subs, start=1)),
        _fmt_search(search, "strict total J-sign-symmetry"),
    ]
    if search.proven is False:
        return Verdict(Status.NO, None, ESTJS_BASIS,
                       witness=_fmt_search(search, "strict total J-sign-symmetry"),
                       notes=tuple(notes))
    stable = _constant_payload(search) if search.found else None
    if search.found and stable is None:
        notes.append("compound partitions drifted across the persistent range")
    if tse.outcome is True and compounds_ok and search.found and stable is not None:
        sub_partitions = tuple(s.partitions[0] if s.partitions else None for s in subs)
        if stable == tse.partitions and stable == sub_partitions:
            return Verdict(Status.YES, search.first_persistent, ESTJS_BASIS,
                           tse.certificates, partitions=stable, notes=tuple(notes))
        notes.append("per-order partitions disagree between the routes")
        return Verdict(Status.UNKNOWN, search.first_persistent, ESTJS_BASIS,
                       tse.certificates, notes=tuple(notes))
    if search.flicker:
        notes.append(f"the property flickered at powers {list(search.flicker)}")
        return Verdict(Status.UNKNOWN, None, ESTJS_BASIS, tse.certificates,
                       notes=tuple(notes))
    if not search.found:
        for j, s in enumerate(subs, start=1):
            if s.status is Status.NO:
                return Verdict(Status.NO, None, ESTJS_BASIS, tse.certificates,
                               witness=(f"compound {j} is not eventually strictly "
                                        f"J-sign-symmetric: {s.witness}"),
                               notes=tuple(notes))
        if tse.outcome is False:
            return Verdict(Status.NO, None, ESTJS_BASIS, tse.certificates,
                           witness=f"total signature equality fails: {tse.reason}",
                           notes=tuple(notes))
    return Verdict(Status.UNKNOWN, None, ESTJS_BASIS, tse.certificates, notes=tuple(notes))


def classify_eventually_p(a: Matrix, tol: float = DEFAULT_TOL,
                          k_max: int = DEFAULT_K_MAX) -> Verdict:
    """Eventually a P-matrix (all principal minors of A^k positive from some
    k_0 on)."""
    if not a.is_square:
        raise DimensionError("square matrix required")
    n = a.n_rows
    dsign = _exact_det_sign(a)
    if dsign <= 0:
        reason = ("det(A) = 0: the full principal minor of every power vanishes"
                  if dsign == 0 else
                  "det(A) < 0: odd powers have a negative determinant, a failing "
                  "principal minor")
        return Verdict(Status.NO, None, EVP_BASIS, witness=reason)
    if n == 2:
        pair = eigenvalues_2x2(to_exact(a))
        if pair.is_complex_pair:
            return Verdict(
                Status.NO, None, EVP_BASIS,
                witness=(f"complex eigenvalue pair: trace {pair.trace}, determinant "
                         f"{pair.determinant}, discriminant {pair.discriminant} < 0; "
                         f"power spectra leave the P-matrix wedge infinitely often"),
            )
    # the principal minors of A^k of order j are the diagonal entries of the
    # k-th power of the j-th compound (Cauchy-Binet)
    def level_predicate(j: int, m: Matrix) -> tuple[bool, object]:
        tol = default_zero_tolerance(m)
        return all(m[i, i] > tol for i in range(m.n_rows)), None

    search = compound_power_search(a, level_predicate, k_max)
    notes = [_fmt_search(search, "P-matrix property")]
    if search.proven is False:
        return Verdict(Status.NO, None, EVP_BASIS,
                       witness=_fmt_search(search, "P-matrix property"), notes=tuple(notes))
    if search.found:
        spectrum = spectrum_via_compounds(a, tol)
        if spectrum and all(v > 0 for v in spectrum.eigenvalues):
            values = spectrum.eigenvalues
            separated = all(
                abs(values[i + 1]) < (1.0 - RATIO_GUARD) * abs(values[i])
                for i in range(len(values) - 1)
            )
            if separated:
                estjs = classify_estjs(a, tol, k_max)
                notes.append(
                    "positive simple distinct spectrum: eventual P-ness forces eventual "
                    f"strict total J-sign-symmetry (got: {estjs.status.value})"
                )
                tse = check_tse_property(a, tol)
                notes.append(f"total signature equality {_fmt_check(tse)}")
        return Verdict(Status.YES, search.first_persistent, EVP_BASIS, notes=tuple(notes))
    if search.flicker:
        notes.append(f"P-ness flickered at powers {list(search.flicker)}")
        return Verdict(Status.UNKNOWN, None, EVP_BASIS, notes=tuple(notes))
    cert = dominant_eigenpair(a, tol)
    if not isinstance(cert, IterationFailure) and cert.value < 0:
        ratio = _dominance_ratio(a, tol)
        if ratio is not None and ratio < 1.0 - RATIO_GUARD:
            return Verdict(
                Status.NO, None, EVP_BASIS, (cert,),
                witness=(f"dominant eigenvalue {cert.value:.6g} is negative: diagonal "
                         f"entries of odd powers eventually go negative"),
                notes=tuple(notes),
            )
    notes.append("k_max exhausted before the P-matrix property stabilised")
    return Verdict(Status.UNKNOWN, None, EVP_BASIS, notes=tuple(notes))


# ---------------------------------------------------------------------------
# aggregation

STATIC_PROPERTIES = (
    "TP", "STP", "oscillatory", "P-matrix", "JS", "SJS", "TJS", "STJS", "TSA", "monotone",
)
EVENTUAL_PROPERTIES = ("EP", "EN", "ESJS", "ESTP", "ESTJS", "eventually-P")

#: Static checks cross-validated between the float and exact backends.
_CROSS_CHECKED = ("TP", "STP", "P-matrix", "JS", "SJS", "TJS", "STJS", "TSA", "monotone")


def _static_checks(a: Matrix, k_max: int) -> dict[str, object]:
    return {
        "TP": is_tp(a),
        "STP": is_stp(a),
        "oscillatory": is_oscillatory(a, k_max),
        "P-matrix": is_p_matrix(a),
        "JS": detect_js(a),
        "SJS": detect_sjs(a),
        "TJS": is_tjs(a),
        "STJS": is_stjs(a),
        "TSA": is_tsa(a),
        "monotone": is_monotone(a),
    }


def _static_ok(result) -> bool:
    if isinstance(result, bool):
        return result
    if isinstance(result, SignPartition):
        return True
    if result is None:
        return False
    return bool(result)


def _static_verdict(name: str, result) -> Verdict:
    ok = _static_ok(result)
    witness = None
    partitions: tuple = ()
    power = None
    if result is None:
        witness = "no consistent sign partition"
    if isinstance(result, PropertyCheck):
        power = result.power
        if result.witness is not None:
            witness = str(result.witness)
    if isinstance(result, SignPartition):
        partitions = (result,)
    if hasattr(result, "partitions") and getattr(result, "ok", False):
        partitions = tuple(p for p in result.partitions if p is not None)
    if getattr(result, "failing_order", None):
        witness = f"compound {result.failing_order} is not sign-symmetric"
    return Verdict(
        Status.YES if ok else Status.NO,
        power_index_observed=power,
        theorem_basis="definition (direct minor/sign enumeration)",
        partitions=partitions,
        witness=witness if not ok else None,
    )


def classify(a: Matrix, config: Optional[ClassifyConfig] = None) -> ClassificationReport:
    """Full static + eventual classification with implication cross-checks.

    On the float backend, every purely combinatorial static verdict is
    recomputed in exact arithmetic on the exact image of the stored floats;
    disagreements resolve in favour of the exact result and are surfaced as
    tolerance warnings, never silently.
    """
    if not a.is_square:
        raise DimensionError("square matrix required")
    cfg = config or ClassifyConfig()
    warnings: list[str] = []
    statics = _static_checks(a, cfg.k_max)
    if a.backend == "float":
        exact_statics = _static_checks(to_exact(a), cfg.k_max)
        for name in _CROSS_CHECKED:
            float_ok = _static_ok(statics[name])
            exact_ok = _static_ok(exact_statics[name])
            if float_ok != exact_ok:
                message = (f"tolerance warning: {name} differs between float "
                           f"({float_ok}) and exact ({exact_ok}) arithmetic; "
                           f"exact wins")
                warnings.append(message)
                logger.warning(message)
                statics[name] = exact_statics[name]
    verdicts = {name: _static_verdict(name, result) for name, result in statics.items()}

    def run(classifier, basis):
        try:
            return classifier(a, cfg.tol, cfg.k_max)
        except DimensionError as exc:
            return Verdict(Status.UNKNOWN, None, basis, notes=(str(exc),))

    verdicts["EP"] = run(classify_ep, EP_BASIS)
    verdicts["EN"] = run(classify_en, EN_BASIS)
    verdicts["ESJS"] = run(classify_esjs, ESJS_BASIS)
    verdicts["ESTP"] = run(classify_estp, ESTP_BASIS)
    verdicts["ESTJS"] = run(classify_estjs, ESTJS_BASIS)
    verdicts["eventually-P"] = run(classify_eventually_p, EVP_BASIS)

    cross_checks: list[CrossCheck] = []

    def implication(name: str, premise: bool, conclusion: Optional[bool], detail: str = ""):
        if not premise:
            cross_checks.append(CrossCheck(name, None, "premise not established"))
        else:
            cross_checks.append(CrossCheck(name, bool(conclusion), detail))

    estp_yes = verdicts["ESTP"].status is Status.YES
    implication("ESTP => EP", estp_yes, verdicts["EP"].status is Status.YES)
    estjs = verdicts["ESTJS"]
    full_sets = bool(estjs.partitions) and all(
        p is not None and len(p.minus) == 0 for p in estjs.partitions
    )
    implication("ESTP => ESTJS with full index sets at every order", estp_yes,
                estjs.status is Status.YES and full_sets,
                "all compound partitions must be the whole index set")
    implication("ESTP => eventually-P", estp_yes,
                verdicts["eventually-P"].status is Status.YES)
    implication("STP => oscillatory", verdicts["STP"].status is Status.YES,
                verdicts["oscillatory"].status is Status.YES)
    implication("oscillatory => ESTP", verdicts["oscillatory"].status is Status.YES,
                estp_yes)
    if verdicts["STP"].status is Status.YES and a.n_rows <= 12:
        gk = check_gk_property(a, cfg.tol)
        implication("STP => Gantmacher-Krein property", True, gk.outcome is True,
                    gk.reason or "")
    else:
        implication("STP => Gantmacher-Krein property", False, None)
    if verdicts["eventually-P"].status is Status.YES:
        spectrum = spectrum_via_compounds(a, cfg.tol)
        distinct_positive = bool(spectrum) and all(v > 0 for v in spectrum.eigenvalues) and all(
            abs(spectrum.eigenvalues[i + 1]) < (1.0 - RATIO_GUARD) * abs(spectrum.eigenvalues[i])
            for i in range(len(spectrum.eigenvalues) - 1)
        )
        implication("eventually-P with positive distinct spectrum => ESTJS",
                    distinct_positive, estjs.status is Status.YES)
    else:
        implication("eventually-P with positive distinct spectrum => ESTJS", False, None)
    if estp_yes:
        cube = classify_estp(mat_pow(a, 3), cfg.tol, cfg.k_max)
        implication("commuting product stays ESTP (A * A^2)", True,
                    cube.status is Status.YES,
                    f"A^3 classified {cube.status.value}")
    else:
        implication("commuting product stays ESTP (A * A^2)", False, None)

    tolerances = {
        "tol": cfg.tol,
        "k_max": cfg.k_max,
        "sign_rtol": 1e-9,
        "zero_coord_rtol": 1e-7,
    }
    description = f"{a.n_rows}x{a.n_cols} {a.backend} matrix"
    return ClassificationReport(description, a.backend, tolerances, verdicts,
                                cross_checks, warnings)

"""matprops: eventual-property analysis of real square matrices.

Classifies matrices as eventually positive / nonnegative / strictly
J-sign-symmetric / strictly totally positive / strictly totally
J-sign-symmetric / eventually P, pairing spectral certificates with
brute-force power searches, over exact-rational and binary64 backends.
"""

from .core import (
    BackendMismatchError,
    DimensionError,
    Matrix,
    MatrixError,
    SingularMatrixError,
    Vector,
    add,
    as_ndarray,
    det,
    from_ndarray,
    identity,
    inverse,
    lu_solve,
    mat_mul,
    mat_pow,
    mat_vec,
    max_abs,
    scale,
    shifted,
    to_exact,
    to_float,
    transpose,
    zeros,
)
from .exterior import (
    IndexSet,
    compound,
    exterior_product,
    index_sets,
    lex_rank,
    lex_unrank,
    minor,
    tensor_product,
)
from .signs import (
    MinorWitness,
    PropertyCheck,
    SignPartition,
    SignPattern,
    TotalSignCheck,
    checkerboard,
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
    s_minus,
    s_plus,
    sign_pattern,
)
from .spectral import (
    CharPair,
    ConvergenceError,
    IterationFailure,
    MarkovCheck,
    SpectralCertificate,
    SpectralCheck,
    Spectrum,
    SpectrumFailure,
    check_gk_property,
    check_markov_system,
    check_signature_equality,
    check_strong_pf,
    check_tse_property,
    check_weak_signature_equality,
    dominant_eigenpair,
    eigenvalues_2x2,
    eigenvector_for,
    rank_one_limit_residual,
    spectrum_via_compounds,
)
from .classify import (
    ClassificationReport,
    ClassifyConfig,
    CrossCheck,
    SearchResult,
    Status,
    Verdict,
    classify,
    classify_en,
    classify_ep,
    classify_esjs,
    classify_estjs,
    classify_estp,
    classify_eventually_p,
    conjugate,
    power_search,
    shift_check,
)

__version__ = "0.1.0"

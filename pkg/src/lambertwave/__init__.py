"""Band-limited orthonormal wavelets with Lambert-W decay envelopes.

Construction chain: weight sequences and their associated function
(`gevrey`), the Lambert W evaluator backing the asymptotics (`lambert`),
the convolution-cascade cutoff (`mollifier`), the frequency-domain bell and
wavelet synthesis (`bell`), and the numerical certification suite
(`verify`).  The `cli` module drives the full pipeline and emits CSV/JSON
artifacts.
"""

from .bell import (
    BellEvaluator,
    CumulativeProfile,
    LatticeSynthesis,
    WaveletBuild,
    WaveletIndex,
    bell,
    build_wavelet,
    eval_psi_point,
    psi_derivative_spectrum,
    psi_hat,
    synthesize_psi_lattice,
    theta,
    wavelet_member_spectrum,
)
from .errors import (
    ConvergenceError,
    DomainError,
    InputError,
    LambertwaveError,
    ResolutionError,
    VerificationError,
)
from .gevrey import (
    AssocFnReport,
    BoundFitReport,
    LogSequence,
    SeqAuditReport,
    SequenceParams,
    assoc_t_asym,
    assoc_t_exact,
    comparison_envelopes,
    fit_assoc_bounds,
    log_m,
    moritoh_l,
    seq_property_audit,
)
from .grids import GridFunction, GridSpec, SpectralFunction
from .lambert import (
    DEFAULT_W_CONFIG,
    WBoundsReport,
    WEvalConfig,
    lambert_w0,
    w_bounds_check,
)
from .mollifier import (
    DerivativeAuditReport,
    MollifierBuild,
    ScaleSequence,
    base_bump,
    block_thresholds,
    build_mollifier,
    derivative_bound_audit,
    dilate_normalize,
    scale_sequence,
)
from .verify import (
    CompletenessReport,
    DecayFitReport,
    DerivativeDecayRow,
    DyadicReport,
    EnvelopeTable,
    GramReport,
    InterceptGrowthFit,
    MixedBoundReport,
    completeness_check,
    decay_envelope,
    derivative_decay_check,
    dyadic_sum_check,
    fit_decay,
    gaussian_spectrum,
    gram_matrix,
    inner_product,
    intercept_growth_fit,
    mixed_bound_audit,
)

__version__ = "0.1.0"

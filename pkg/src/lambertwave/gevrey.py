"""Weight sequences p^(tau * p^sigma), their property audits, and the
associated (Legendre-type) function in exact-sup and Lambert-asymptotic form.

All sequence arithmetic is done on logarithms: the raw entries overflow
double precision already at small p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError, VerificationError
from .lambert import lambert_w0

_E = float(np.e)


@dataclass(frozen=True)
class SequenceParams:
    """The (tau, sigma) pair parameterizing the weight sequence.

    sigma = 1 collapses to the classical factorial-power (Gevrey) scale and
    is permitted only for comparison envelopes via ``allow_gevrey``.
    """

    tau: float
    sigma: float
    allow_gevrey: bool = False

    def __post_init__(self):
        if not (np.isfinite(self.tau) and self.tau > 0):
            raise DomainError(f"tau must be positive, got {self.tau}")
        floor = 1.0 if self.allow_gevrey else 1.0 + 1e-12
        if not (np.isfinite(self.sigma) and self.sigma >= floor):
            raise DomainError(
                f"sigma must be > 1 (or == 1 with allow_gevrey), got {self.sigma}"
            )


def log_m(p, params: SequenceParams):
    """log of the weight-sequence entry: tau * p^sigma * log p, zero at p in {0, 1}."""
    pa = np.asarray(p, dtype=float)
    out = np.where(
        pa >= 2.0,
        params.tau * pa ** params.sigma * np.log(np.maximum(pa, 2.0)),
        0.0,
    )
    return float(out) if np.isscalar(p) else out


@dataclass
class LogSequence:
    """Tabulated log-entries for p = 0..p_max; entry 0 is exactly 0."""

    params: SequenceParams
    log_values: np.ndarray

    def __post_init__(self):
        self.log_values = np.asarray(self.log_values, dtype=float)
        if self.log_values[0] != 0.0:
            raise InputError("log sequence must start at 0 (unit zeroth entry)")

    @staticmethod
    def build(params: SequenceParams, p_max: int) -> "LogSequence":
        return LogSequence(params, log_m(np.arange(p_max + 1), params))


@dataclass(frozen=True)
class SeqAuditReport:
    """Outcome of the sequence property audit."""

    params: SequenceParams
    p_max: int
    log_convex_ok: bool
    ratio_bound_ok: bool
    min_log_c: float          # minimal feasible log C in the split-index bound
    sum_ratio_partial: float  # partial sum of M_{p-1}/M_p
    quasianalytic: bool       # sigma == 1 and tau <= 1: the ratio sum diverges
    notes: str = ""


def seq_property_audit(params: SequenceParams, p_max: int) -> SeqAuditReport:
    """Audit log-convexity, the ratio decay bound, and the split-index bound.

    The split-index bound asks for a finite C with

        log M_{p+q} <= (p^sigma + q^sigma) log C
                       + log M_p^{(2^{sigma-1} tau)} + log M_q^{(2^{sigma-1} tau)}

    for all p, q <= p_max; the minimal feasible log C over the audited range
    is reported.  Any violated inequality raises VerificationError naming the
    offending index.
    """
    if p_max < 3:
        raise InputError(f"p_max must be >= 3, got {p_max}")
    sig, tau = params.sigma, params.tau
    ps = np.arange(p_max + 1)
    lm = log_m(ps, params)

    # (log-convexity) 2 log M_p <= log M_{p-1} + log M_{p+1}, interior p.
    mid = 2.0 * lm[1:-1]
    sides = lm[:-2] + lm[2:]
    conv_ok = bool(np.all(mid <= sides + 1e-9 * np.maximum(1.0, np.abs(sides))))
    if not conv_ok:
        p_bad = int(np.argmax(mid - sides) + 1)
        raise VerificationError(
            f"log-convexity fails at p={p_bad}", detail=("p", p_bad)
        )

    # ratio decay: log(M_{p-1}/M_p) <= -tau (p-1)^(sigma-1) log(2p).
    # For sigma > 1 the p = 1 exponent is exactly 0; at sigma = 1 (flagged
    # Gevrey comparison) the claim starts at p = 2.
    p_lo = 1 if sig > 1.0 else 2
    p_in = ps[p_lo:]
    lhs = lm[p_lo - 1:-1] - lm[p_lo:]
    rhs = -tau * (p_in - 1.0) ** (sig - 1.0) * np.log(2.0 * p_in)
    ratio_ok = bool(np.all(lhs <= rhs + 1e-9 * np.maximum(1.0, np.abs(rhs))))
    if not ratio_ok:
        p_bad = int(np.argmax(lhs - rhs) + 1)
        raise VerificationError(
            f"ratio bound fails at p={p_bad}", detail=("p", p_bad)
        )

    # split-index bound: minimal feasible log C over p, q <= p_max.
    doubled = SequenceParams(2.0 ** (sig - 1.0) * tau, sig, params.allow_gevrey)
    lm2 = log_m(ps, doubled)
    lm_ext = log_m(np.arange(2 * p_max + 1), params)
    min_log_c = 0.0
    for p in range(p_max + 1):
        for q in range(p_max + 1):
            denom = float(p) ** sig + float(q) ** sig
            if denom == 0.0:
                continue  # p = q = 0: both sides vanish, any C >= 1 works
            need = (lm_ext[p + q] - lm2[p] - lm2[q]) / denom
            min_log_c = max(min_log_c, need)

    partial = float(np.sum(np.exp(lm[:-1] - lm[1:])))
    quasi = abs(sig - 1.0) < 1e-12 and tau <= 1.0
    notes = "quasianalytic regime: ratio sum diverges" if quasi else ""
    return SeqAuditReport(
        params=params,
        p_max=p_max,
        log_convex_ok=conv_ok,
        ratio_bound_ok=ratio_ok,
        min_log_c=min_log_c,
        sum_ratio_partial=partial,
        quasianalytic=quasi,
        notes=notes,
    )


@dataclass(frozen=True)
class AssocFnReport:
    """Exact sup value of the associated function at one argument, with the
    Lambert-form asymptote and their ratio (nan where k <= e)."""

    k: float
    t_exact: float
    argmax_p: int
    t_asym: float
    ratio: float


def assoc_t_exact(k: float, params: SequenceParams, p_cap: int = 200000) -> AssocFnReport:
    """Exact associated-function value sup_p max(0, p log k - log M_p).

    The scan terminates once the term has decreased on three consecutive p
    past the running maximum: for sigma > 1 the term is eventually strictly
    decreasing, and the margin guards short plateaus.
    """
    if not (np.isfinite(k) and k > 0):
        raise DomainError(f"k must be positive, got {k}")
    lk = math.log(k)
    best, best_p = 0.0, 0
    prev = 0.0  # term at p = 0
    drops = 0
    p = 1
    while p <= p_cap:
        term = p * lk - float(log_m(p, params))
        if term > best:
            best, best_p = term, p
            drops = 0
        elif term < prev:
            drops += 1
            if drops >= 3:
                break
        prev = term
        p += 1

    if k > _E:
        ta = assoc_t_asym(k, params.sigma)
        scale = params.tau ** (-1.0 / (params.sigma - 1.0))
        ratio = best / (scale * ta) if ta > 0 else float("nan")
    else:
        ta, ratio = float("nan"), float("nan")
    return AssocFnReport(k=float(k), t_exact=best, argmax_p=best_p, t_asym=ta, ratio=ratio)


def assoc_t_asym(k, sigma: float):
    """Lambert-form asymptote log^(s/(s-1))(k) / W^(1/(s-1))(log k), k > e."""
    if sigma <= 1.0:
        raise DomainError(f"sigma must exceed 1, got {sigma}")
    ka = np.asarray(k, dtype=float)
    if np.any(~np.isfinite(ka)) or np.any(ka <= _E):
        raise DomainError("asymptotic form requires k > e")
    lk = np.log(ka)
    out = lk ** (sigma / (sigma - 1.0)) / lambert_w0(lk) ** (1.0 / (sigma - 1.0))
    return float(out) if np.isscalar(k) else out


@dataclass(frozen=True)
class BoundFitReport:
    """Empirical two-sided bound witness: the ratio band of exact over
    scaled-asymptotic values across a grid."""

    params: SequenceParams
    k_grid: np.ndarray
    ratios: np.ndarray
    r_min: float
    r_max: float
    band: float


def fit_assoc_bounds(
    params: SequenceParams, k_grid, band_limit: float = 10.0
) -> BoundFitReport:
    """Ratio band of t_exact / (tau^(-1/(sigma-1)) * t_asym) over a log grid.

    The grid must hold at least 20 points inside [1e2, 1e14].  A band wider
    than ``band_limit`` (multiplicative) raises VerificationError.
    """
    ks = np.atleast_1d(np.asarray(k_grid, dtype=float))
    if len(ks) < 20:
        raise InputError(f"need at least 20 grid points, got {len(ks)}")
    if np.any(ks < 1e2) or np.any(ks > 1e14):
        raise InputError("grid must lie within [1e2, 1e14]")
    ratios = np.array([assoc_t_exact(float(k), params).ratio for k in ks])
    r_min, r_max = float(np.min(ratios)), float(np.max(ratios))
    band = r_max / r_min
    if not np.isfinite(band) or band > band_limit:
        raise VerificationError(
            f"ratio band {band:.3f} exceeds limit {band_limit}", detail=band
        )
    return BoundFitReport(
        params=params, k_grid=ks, ratios=ratios, r_min=r_min, r_max=r_max, band=band
    )


# ---------------------------------------------------------------------------
# Comparison envelopes (used only by the verification fits)
# ---------------------------------------------------------------------------

def moritoh_l(x, n: int, sigma: float):
    """Iterated-log comparator l_{n,sigma}(x) = log x * ... * (log_n x)^sigma.

    log_j is the j-fold iterated natural log; requires x large enough that
    every iterate is positive.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    xa = np.asarray(x, dtype=float)
    out = np.ones_like(xa)
    cur = np.log(xa)
    for _ in range(n - 1):
        if np.any(cur <= 0):
            raise DomainError("iterated log undefined on this range")
        out = out * cur
        cur = np.log(cur)
    if np.any(cur <= 0):
        raise DomainError("iterated log undefined on this range")
    out = out * cur ** sigma
    return float(out) if np.isscalar(x) else out


def comparison_envelopes(x, sigma: float) -> dict:
    """Negated log-envelopes of the literature decay classes, tabulated.

    Returns -log of each comparator bound (up to constants): exponential |x|,
    factorial-scale |x|^(1/s') for s' in {2, 3}, the iterated-log form
    x / l_{1,sigma}(x), and the Lambert regressor itself.
    """
    xa = np.asarray(x, dtype=float)
    lk = np.log(xa)
    return {
        "exp": xa,
        "gevrey2": xa ** 0.5,
        "gevrey3": xa ** (1.0 / 3.0),
        "moritoh": xa / moritoh_l(xa, 1, sigma),
        "lambert": lk ** (sigma / (sigma - 1.0))
        / lambert_w0(lk) ** (1.0 / (sigma - 1.0)),
    }

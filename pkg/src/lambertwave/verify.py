"""Numerical certification: orthonormality, completeness, decay-law fits,
and the mixed moment-derivative bound audit.

All operations are read-only over their inputs and deterministic; pairwise
inner products reduce to scale-free integrals so equivalent pairs share one
quadrature (bitwise-identical values by construction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import linprog

from .bell import (
    BellEvaluator,
    SpectralFunction,
    psi_derivative_spectrum,
    synthesize_psi_lattice,
)
from .errors import DomainError, InputError, VerificationError
from .gevrey import comparison_envelopes
from .grids import GridFunction
from .lambert import lambert_w0


# ---------------------------------------------------------------------------
# Inner products and the Gram matrix
# ---------------------------------------------------------------------------

def inner_product(F: SpectralFunction, G: SpectralFunction, n_quad: int = 2 ** 14 + 1) -> complex:
    """(1/2pi) Int F conj(G) over the support intersection.

    Identical grids integrate directly; otherwise both sides need point
    evaluators (fresh common grid) or an integer grid refinement
    relationship.  Disjoint supports return exactly 0.
    """
    lo = max(F.support[0], G.support[0])
    hi = min(F.support[1], G.support[1])
    if lo >= hi:
        return 0.0 + 0.0j
    same_grid = (
        abs(F.xi0 - G.xi0) < 1e-12 and abs(F.dxi - G.dxi) < 1e-15 and F.n == G.n
    )
    if same_grid:
        integrand = F.values * np.conj(G.values)
        return complex(np.trapezoid(integrand, dx=F.dxi) / (2.0 * np.pi))
    if F.eval_fn is not None and G.eval_fn is not None:
        u = np.linspace(lo, hi, n_quad)
        integrand = F.at(u) * np.conj(G.at(u))
        return complex(np.trapezoid(integrand, dx=u[1] - u[0]) / (2.0 * np.pi))
    ratio = G.dxi / F.dxi
    if abs(ratio - round(ratio)) < 1e-9 and round(ratio) >= 1:
        fine, coarse = F, G
    elif abs(1.0 / ratio - round(1.0 / ratio)) < 1e-9:
        fine, coarse = G, F
    else:
        raise InputError("incommensurate grids and no point evaluators")
    u = fine.xi()
    inside = (u >= coarse.xi0 - 1e-12) & (u <= coarse.xi_end + 1e-12)
    cu = np.interp(u[inside], coarse.xi(), coarse.values.real) + 1j * np.interp(
        u[inside], coarse.xi(), coarse.values.imag
    )
    fv = fine.values[inside]
    integrand = (fv * np.conj(cu)) if fine is F else (cu * np.conj(fv))
    return complex(np.trapezoid(integrand, dx=fine.dxi) / (2.0 * np.pi))


@dataclass
class GramReport:
    """Pairwise inner products over a dyadic index window."""

    index_range: Tuple[int, int, int, int]
    max_offdiag: float
    max_diag_dev: float
    entries: List[Tuple[Tuple[int, int], Tuple[int, int], complex]]
    worst_pair: Tuple


def _band_grid(ev: BellEvaluator, lo: float, hi: float, n_quad: int) -> np.ndarray:
    return np.linspace(lo, hi, n_quad)


def gram_matrix(
    ph: SpectralFunction,
    m_range: Tuple[int, int] = (-2, 2),
    n_range: Tuple[int, int] = (-8, 8),
    tol: float = 1e-7,
    n_quad: int = 2 ** 13 + 1,
) -> GramReport:
    """All pairwise member inner products over the index window.

    Scale pairs two or more octaves apart have disjoint frequency bands and
    are exactly zero.  Same-scale values depend only on the translation
    difference and adjacent-scale values only on 2*n1 - n2 (exact identities
    under the scale-free substitution), so each distinct value is computed
    once.  Breaching ``tol`` raises VerificationError naming the worst pair.
    """
    ev = ph.source
    if not isinstance(ev, BellEvaluator):
        raise InputError("gram_matrix requires the bell evaluation context")
    a = ev.a
    m_lo, m_hi = m_range
    n_lo, n_hi = n_range

    # same scale: (1/pi) Re Int_+ b^2 e^{i d u} du, d = n1 - n2
    band = _band_grid(ev, np.pi - a, 2.0 * (np.pi + a), n_quad)
    b2 = ev.bell_at(band) ** 2
    du = band[1] - band[0]
    same: Dict[int, complex] = {}
    for d in range(0, n_hi - n_lo + 1):
        p = np.trapezoid(b2 * np.exp(1j * d * band), dx=du)
        same[d] = complex(p.real / np.pi)
        same[-d] = complex(np.conj(same[d]))

    # adjacent scales: (2^{-1/2}/pi) Re Int_+ b(u) b(u/2) e^{i(mu + 1/4)u} du,
    # mu = n1 - n2/2; u runs over the upper band where both bells live
    band2 = _band_grid(ev, 2.0 * (np.pi - a), 2.0 * (np.pi + a), n_quad)
    bb = ev.bell_at(band2) * ev.bell_at(band2 / 2.0)
    du2 = band2[1] - band2[0]
    adj: Dict[int, complex] = {}
    for key in range(2 * n_lo - n_hi, 2 * n_hi - n_lo + 1):  # key = 2 n1 - n2
        mu = key / 2.0 + 0.25
        p = np.trapezoid(bb * np.exp(1j * mu * band2), dx=du2)
        adj[key] = complex(2.0 ** (-0.5) * p.real / np.pi)

    members = [(m, n) for m in range(m_lo, m_hi + 1) for n in range(n_lo, n_hi + 1)]
    entries = []
    max_off, max_diag = 0.0, 0.0
    worst = (None, None, 0.0)
    for i, (m1, n1) in enumerate(members):
        for (m2, n2) in members[i:]:
            if m1 == m2:
                val = same[n1 - n2]
            elif m2 == m1 + 1:
                val = adj[2 * n1 - n2]
            elif m1 == m2 + 1:
                val = complex(np.conj(adj[2 * n2 - n1]))
            else:
                val = 0.0 + 0.0j  # disjoint dyadic bands
            entries.append(((m1, n1), (m2, n2), val))
            if (m1, n1) == (m2, n2):
                dev = abs(val - 1.0)
                if dev > max_diag:
                    max_diag = dev
                    if dev > tol:
                        worst = ((m1, n1), (m2, n2), dev)
            else:
                mag = abs(val)
                if mag > max_off:
                    max_off = mag
                    if mag > tol:
                        worst = ((m1, n1), (m2, n2), mag)
    if max_off > tol or max_diag > tol:
        raise VerificationError(
            f"gram deviation exceeds {tol:.1e}: pair {worst[0]} / {worst[1]} "
            f"at {worst[2]:.3e}",
            detail=worst,
        )
    return GramReport(
        index_range=(m_lo, m_hi, n_lo, n_hi),
        max_offdiag=max_off,
        max_diag_dev=max_diag,
        entries=entries,
        worst_pair=worst,
    )


# ---------------------------------------------------------------------------
# Dyadic partition and completeness
# ---------------------------------------------------------------------------

@dataclass
class DyadicReport:
    xi: np.ndarray
    s: np.ndarray
    max_dev: float


def dyadic_sum_check(
    ph: SpectralFunction,
    xi_grid: Optional[np.ndarray] = None,
    m_window: int = 6,
    tol: float = 1e-9,
) -> DyadicReport:
    """s(xi) = sum_{|m| <= window} |psi_hat(2^m xi)|^2 must equal 1 on the
    covered dyadic range (xi = 0 is excluded: the sum vanishes there)."""
    ev = ph.source
    if not isinstance(ev, BellEvaluator):
        raise InputError("dyadic check requires the bell evaluation context")
    a = ev.a
    if xi_grid is None:
        base = np.linspace(np.pi - a + 1e-3, 2.0 * (np.pi + a) - 1e-3, 601)
        xi_grid = np.concatenate([base * 2.0 ** j for j in range(-5, 6)])
    xi_grid = np.asarray(xi_grid, dtype=float)
    if np.any(np.abs(xi_grid) < 1e-9):
        raise InputError("dyadic grid must avoid xi = 0")
    s = np.zeros_like(xi_grid)
    for m in range(-m_window, m_window + 1):
        s += ev.bell_at(2.0 ** m * xi_grid) ** 2
    max_dev = float(np.max(np.abs(s - 1.0)))
    if max_dev > tol:
        i = int(np.argmax(np.abs(s - 1.0)))
        raise VerificationError(
            f"dyadic sum deviates by {max_dev:.3e} at xi = {xi_grid[i]:.6f}",
            detail=float(xi_grid[i]),
        )
    return DyadicReport(xi=xi_grid, s=s, max_dev=max_dev)


def gaussian_spectrum(center: float = 4.0, width: float = 1.0,
                      band: Tuple[float, float] = (1.0, 10.0)) -> Callable:
    """Truncated Gaussian test spectrum (even, real: a real-valued signal)."""

    def fhat(xi):
        ax = np.abs(np.asarray(xi, dtype=float))
        out = np.exp(-((ax - center) ** 2) / (2.0 * width ** 2))
        return np.where((ax >= band[0]) & (ax <= band[1]), out, 0.0).astype(complex)

    fhat.band = band
    return fhat


@dataclass
class CompletenessReport:
    ratio: float
    m_window: Tuple[int, int]
    n_used: Dict[int, int]
    status: str  # "pass" or "inconclusive"
    f_energy: float


def completeness_check(
    ph: SpectralFunction,
    f_hat: Optional[Callable] = None,
    m_window: Tuple[int, int] = (-4, 4),
    stop_tol: float = 1e-5,
    target_tol: float = 1e-3,
    n_cap: int = 256,
    n_quad: int = 2 ** 13 + 1,
) -> CompletenessReport:
    """Recovered energy fraction sum |<f, member>|^2 / ||f||^2.

    Translations are added symmetrically until the partial sums move by less
    than ``stop_tol`` (relative); hitting the cap first yields an
    "inconclusive" status rather than a failure.  A converged ratio outside
    the target band raises VerificationError.
    """
    ev = ph.source
    if not isinstance(ev, BellEvaluator):
        raise InputError("completeness check requires the bell evaluation context")
    if f_hat is None:
        f_hat = gaussian_spectrum()
    a = ev.a
    band_hi = getattr(f_hat, "band", (0.0, 12.0))[1]
    ug = np.linspace(-band_hi - 1.0, band_hi + 1.0, 2 ** 16 + 1)
    f_energy = float(
        np.trapezoid(np.abs(f_hat(ug)) ** 2, dx=ug[1] - ug[0]) / (2.0 * np.pi)
    )

    u_pos = np.linspace(np.pi - a, 2.0 * (np.pi + a), n_quad)
    du = u_pos[1] - u_pos[0]
    psihat_pos = ev.psi_hat_at(u_pos)
    psihat_neg = ev.psi_hat_at(-u_pos)

    total = 0.0
    n_used: Dict[int, int] = {}
    converged = True
    for m in range(m_window[0], m_window[1] + 1):
        gp = f_hat(2.0 ** m * u_pos) * np.conj(psihat_pos)
        gn = f_hat(-(2.0 ** m) * u_pos) * np.conj(psihat_neg)
        pref = 2.0 ** (m / 2.0) / (2.0 * np.pi)
        ssum = 0.0
        n = 0
        while True:
            inc = 0.0
            for nn in ([0] if n == 0 else [n, -n]):
                cp = np.trapezoid(gp * np.exp(-1j * nn * u_pos), dx=du)
                cn = np.trapezoid(gn * np.exp(1j * nn * u_pos), dx=du)
                inc += abs(pref * (cp + cn)) ** 2
            ssum += inc
            if n > 8 and inc < stop_tol * f_energy:
                break
            n += 1
            if n > n_cap:
                converged = False
                break
        n_used[m] = n
        total += ssum

    ratio = total / f_energy
    status = "pass" if converged else "inconclusive"
    if converged and abs(ratio - 1.0) > target_tol:
        raise VerificationError(
            f"energy ratio {ratio:.6f} outside 1 +/- {target_tol}", detail=ratio
        )
    return CompletenessReport(
        ratio=ratio, m_window=m_window, n_used=n_used, status=status,
        f_energy=f_energy,
    )


# ---------------------------------------------------------------------------
# Decay envelopes and fits
# ---------------------------------------------------------------------------

@dataclass
class EnvelopeTable:
    x: np.ndarray
    env: np.ndarray
    usable: np.ndarray
    window: float
    dropped: int
    floor: float


def decay_envelope(
    lattice: GridFunction,
    x_grid: np.ndarray,
    window: Optional[float] = None,
    floor: float = 1e-15,
    evaluator: Optional[BellEvaluator] = None,
) -> EnvelopeTable:
    """Windowed max of |psi| around each grid point.

    The wavelet oscillates under its envelope, and the band-edge components
    of the bell beat against each other; the window therefore covers both
    one carrier period (2 pi / omega_c, omega_c ~ 3 pi/2) and one full beat
    of the closest edge pair (2 pi / ramp half-width) so the windowed max
    tracks the amplitude, not the beat phase.  Points whose max sits at or
    below ``floor`` are dropped and counted.
    """
    x_grid = np.asarray(x_grid, dtype=float)
    if window is None:
        carrier = 2.0 * np.pi / (1.5 * np.pi)
        beat = (
            2.0 * np.pi / evaluator.ramp_half_width
            if evaluator is not None
            else carrier
        )
        window = max(carrier, beat)
    vals = lattice.values
    n = len(vals)
    dxl = lattice.dx
    env = np.empty(len(x_grid))
    for i, x in enumerate(x_grid):
        j0 = int(np.floor((x - window / 2.0 - lattice.x0) / dxl))
        j1 = int(np.ceil((x + window / 2.0 - lattice.x0) / dxl))
        if j0 < 0 or j1 >= n:
            raise InputError(f"envelope window at x={x:.3g} leaves the lattice")
        env[i] = np.max(np.abs(vals[j0:j1 + 1]))
    usable = env > floor
    return EnvelopeTable(
        x=x_grid,
        env=env,
        usable=usable,
        window=float(window),
        dropped=int(np.sum(~usable)),
        floor=floor,
    )


@dataclass
class DecayFitReport:
    sigma: float
    h_fit: float
    h_stderr: float
    intercept: float
    r_squared: float
    x_range: Tuple[float, float]
    n_points: int
    shape_checks: Dict[str, bool]
    crossovers: Dict[str, float]
    comparator_table: Optional[np.ndarray]  # columns per comparator_columns
    comparator_columns: Tuple[str, ...] = ()


def _regress_on_t(x: np.ndarray, y: np.ndarray, sigma: float):
    T = np.log(x) ** (sigma / (sigma - 1.0)) / lambert_w0(np.log(x)) ** (
        1.0 / (sigma - 1.0)
    )
    if np.any(np.diff(T) <= 0):
        raise InputError("decay regressor is not strictly increasing on the range")
    A = np.vstack([T, np.ones_like(T)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 - ss_res / ss_tot
    dof = max(len(x) - 2, 1)
    se = math.sqrt(ss_res / dof / float(np.sum((T - np.mean(T)) ** 2)))
    return float(coef[0]), float(coef[1]), r2, se, T


def fit_decay(
    table: EnvelopeTable,
    sigma: float,
    comparators: bool = True,
    r2_min: float = 0.9,
) -> DecayFitReport:
    """Regress -log env on the Lambert-form regressor and audit the shape.

    Requires >= 30 usable points spanning >= 2 decades.  Gates: positive
    slope and r^2 >= ``r2_min``.  The monotone-ratio shape checks run where
    adjacent envelope windows are disjoint (overlapping windows can capture
    the same peak twice, flattening the ratio artificially): -log env grows
    faster than any multiple of log x (ratio increasing) yet slower than
    sqrt(x) on the top decade (ratio decreasing), with reported crossovers
    against the factorial-scale comparators.
    """
    xs = table.x[table.usable]
    env = table.env[table.usable]
    if len(xs) < 30:
        raise InputError(f"need >= 30 usable envelope points, got {len(xs)}")
    if xs[-1] / xs[0] < 99.0:
        raise InputError(
            f"usable points span {np.log10(xs[-1] / xs[0]):.2f} decades, need >= 2"
        )
    y = -np.log(env)
    h, icpt, r2, se, T = _regress_on_t(xs, y, sigma)
    if h <= 0:
        raise VerificationError(f"fitted decay slope {h:.4f} is not positive")
    if r2 < r2_min:
        raise VerificationError(f"decay fit r^2 = {r2:.4f} below {r2_min}")

    # shape diagnostics on the window-disjoint subrange
    step = (xs[-1] / xs[0]) ** (1.0 / max(len(xs) - 1, 1))
    disjoint = xs >= table.window / max(step - 1.0, 1e-9)
    xs_d, y_d = xs[disjoint], y[disjoint]
    checks: Dict[str, bool] = {}
    if len(xs_d) >= 3:
        checks["log_ratio_increasing"] = bool(
            np.all(np.diff(y_d / np.log(xs_d)) > 0)
        )
        top = xs_d >= xs_d[-1] / 10.0
        checks["sqrt_ratio_decreasing_top_decade"] = bool(
            np.all(np.diff((y_d / np.sqrt(xs_d))[top]) < 0)
        )
        checks["sublinear"] = bool(np.all(np.diff(y_d / xs_d) < 0))
    crossovers: Dict[str, float] = {}
    for name, expo in (("gevrey2", 0.5), ("gevrey3", 1.0 / 3.0)):
        ratio = y_d / xs_d ** expo
        dec_from = len(ratio) - 1
        for i in range(len(ratio) - 1, 0, -1):
            if ratio[i] < ratio[i - 1]:
                dec_from = i - 1
            else:
                break
        crossovers[name] = float(xs_d[dec_from]) if len(ratio) else float("nan")

    tab, cols = None, ()
    if comparators:
        envs = comparison_envelopes(xs, sigma)
        with np.errstate(under="ignore"):
            tab = np.column_stack(
                [
                    xs,
                    env,
                    envs["lambert"],
                    np.exp(-(h * T + icpt)),
                    np.exp(-envs["gevrey2"]),
                    np.exp(-envs["gevrey3"]),
                    np.exp(-envs["moritoh"]),
                    np.exp(-envs["exp"]),
                ]
            )
        cols = (
            "x",
            "env",
            "T_sigma",
            "lambert_bound",
            "gevrey2",
            "gevrey3",
            "moritoh",
            "exp",
        )
    return DecayFitReport(
        sigma=sigma,
        h_fit=h,
        h_stderr=se,
        intercept=icpt,
        r_squared=r2,
        x_range=(float(xs[0]), float(xs[-1])),
        n_points=len(xs),
        shape_checks=checks,
        crossovers=crossovers,
        comparator_table=tab,
        comparator_columns=cols,
    )


@dataclass
class DerivativeDecayRow:
    n: int
    h_fit: float
    intercept: float
    r_squared: float
    usable: int
    sup: float


def derivative_decay_check(
    ph: SpectralFunction,
    n: int,
    x_grid: np.ndarray,
    L: float,
    N: int,
    window: float,
    sigma: float,
    floor: float = 1e-15,
    r2_min: float = 0.9,
    lattice: Optional[GridFunction] = None,
) -> DerivativeDecayRow:
    """Envelope regression for the n-th derivative; slope must be positive.

    The floor scales with the derivative's sup so the relative noise floor
    matches the synthesis accuracy.
    """
    if lattice is None:
        dph = psi_derivative_spectrum(ph, n)
        lattice = synthesize_psi_lattice(dph, L=L, N=N, check_periodization=False).grid
    sup = lattice.sup()
    table = decay_envelope(
        lattice, x_grid, window=window, floor=floor * max(1.0, sup)
    )
    xs = table.x[table.usable]
    y = -np.log(table.env[table.usable])
    if len(xs) < 10:
        raise InputError(f"too few usable envelope points for n={n}")
    h, icpt, r2, _, _ = _regress_on_t(xs, y, sigma)
    if h <= 0:
        raise VerificationError(f"derivative n={n}: slope {h:.4f} not positive")
    if r2 < r2_min:
        raise VerificationError(f"derivative n={n}: r^2 = {r2:.4f} below {r2_min}")
    return DerivativeDecayRow(
        n=n, h_fit=h, intercept=icpt, r_squared=r2, usable=len(xs), sup=sup
    )


@dataclass
class InterceptGrowthFit:
    log_c_ls: float
    s_ls: float
    log_c_at_s1: float
    feasible: bool


def intercept_growth_fit(rows: List[DerivativeDecayRow]) -> InterceptGrowthFit:
    """Fit amplitude growth across derivative orders to (n+1) log C + s log n!.

    The growth of the fitted amplitude C_n = exp(-intercept_n) relative to
    n = 0 is regressed on the two-parameter form.  Feasibility of the bound
    for *some* s <= 1 reduces to the s = 1 envelope having a finite log C
    (larger s only weakens the bound); the least-squares s is reported as
    the shape estimate and is only identifiable once the order ladder
    reaches n >= 4 or so.
    """
    rows = sorted(rows, key=lambda r: r.n)
    if rows[0].n != 0:
        raise InputError("intercept growth fit needs the n = 0 row")
    ns = np.array([r.n for r in rows], dtype=float)
    growth = np.array([rows[0].intercept - r.intercept for r in rows])
    basis = np.vstack([ns + 1.0, [math.lgamma(k + 1.0) for k in ns]]).T
    coef, *_ = np.linalg.lstsq(basis, growth, rcond=None)
    log_c_ls, s_ls = float(coef[0]), float(coef[1])
    lg = basis[:, 1]
    log_c_at_s1 = float(np.max((growth - lg) / (ns + 1.0)))
    return InterceptGrowthFit(
        log_c_ls=log_c_ls,
        s_ls=s_ls,
        log_c_at_s1=log_c_at_s1,
        feasible=bool(np.isfinite(log_c_at_s1)),
    )


# ---------------------------------------------------------------------------
# Mixed moment-derivative bound audit
# ---------------------------------------------------------------------------

@dataclass
class MixedBoundReport:
    s: float
    tau: float
    sigma: float
    k_max: int
    q_max: int
    sup_table: np.ndarray  # sup_x |x^k psi^(q)(x)|, indexed [k, q]
    log_c: float
    log_a: float
    log_b: float
    feasible: bool
    violations: List[Tuple[int, int]]


def mixed_bound_audit(
    ph: SpectralFunction,
    k_max: int,
    q_max: int,
    s: float,
    tau: float,
    sigma: float,
    L: float,
    N: int,
    box: float = 40.0,
    lattice_cache: Optional[Dict[int, GridFunction]] = None,
) -> MixedBoundReport:
    """Solve for constants (log C, log A, log B) with

        log S(k, q) <= log C + k log A + q log B + s log k! + tau q^sigma log q

    over all k <= k_max, q <= q_max, where S(k, q) = sup over the synthesis
    lattice of |x^k psi^(q)(x)|.  The LP minimizes log C with log A, log B
    confined to [-box, box]; infeasibility (non-finite sups or no solution
    in the box) raises VerificationError listing the offending pairs.
    """
    if not (0.0 < s <= 1.0):
        raise DomainError(f"s must lie in (0, 1], got {s}")
    if k_max > 10 or q_max > 10:
        raise InputError("k_max and q_max are capped at 10")
    sup_table = np.empty((k_max + 1, q_max + 1))
    for q in range(q_max + 1):
        if lattice_cache is not None and q in lattice_cache:
            grid = lattice_cache[q]
        else:
            dph = psi_derivative_spectrum(ph, q)
            grid = synthesize_psi_lattice(dph, L=L, N=N, check_periodization=False).grid
            if lattice_cache is not None:
                lattice_cache[q] = grid
        absv = np.abs(grid.values)
        ax = np.abs(grid.x())
        for k in range(k_max + 1):
            sup_table[k, q] = float(np.max(ax ** k * absv))

    violations = [
        (k, q)
        for k in range(k_max + 1)
        for q in range(q_max + 1)
        if not (np.isfinite(sup_table[k, q]) and sup_table[k, q] > 0)
    ]
    if violations:
        raise VerificationError(
            f"non-finite moment sups at {violations}", detail=violations
        )

    rows, rhs = [], []
    for k in range(k_max + 1):
        for q in range(q_max + 1):
            slack = s * math.lgamma(k + 1.0) + tau * q ** sigma * (
                math.log(q) if q >= 1 else 0.0
            )
            rows.append([-1.0, -float(k), -float(q)])
            rhs.append(slack - math.log(sup_table[k, q]))
    res = linprog(
        c=[1.0, 0.0, 0.0],
        A_ub=rows,
        b_ub=rhs,
        bounds=[(None, None), (-box, box), (-box, box)],
        method="highs",
    )
    if res.status != 0:
        slacks = np.array(rhs)
        worst = np.argsort(slacks)[:3]
        pairs = [(int(i // (q_max + 1)), int(i % (q_max + 1))) for i in worst]
        raise VerificationError(
            f"mixed bound system infeasible; tightest constraints at {pairs}",
            detail=pairs,
        )
    return MixedBoundReport(
        s=s,
        tau=tau,
        sigma=sigma,
        k_max=k_max,
        q_max=q_max,
        sup_table=sup_table,
        log_c=float(res.x[0]),
        log_a=float(res.x[1]),
        log_b=float(res.x[2]),
        feasible=True,
        violations=[],
    )

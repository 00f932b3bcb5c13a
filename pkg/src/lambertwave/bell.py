"""Frequency-domain bell, the wavelet transform profile, and synthesis.

The bell is

    b(xi) = sin(theta_a(|xi| - pi)) * cos(theta_2a(|xi| - 2 pi)),

vanishing for |xi| <= pi - a and |xi| >= 2 (pi + a), identically 1 on
[pi + a, 2 (pi - a)] (the admissible range 0 < a < pi/3 makes those regions
meet properly).  theta_a is the running integral of a mass-pi/2 cutoff of
half-width a, clamped bit-exactly to 0 and pi/2 outside its support; the
width-2a profile is the exact dyadic dilation of the same cutoff, which is
what makes the quadrature-free dyadic identities hold to rounding error.

exp(i xi / 2) * b(xi) is then the Fourier transform of a real orthonormal
wavelet; synthesis inverts it with the convention
psi(x) = (1/2pi) Int b(xi) e^{i xi / 2} e^{-i x xi} d xi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError, ResolutionError
from .grids import GridFunction, GridSpec, SpectralFunction
from .mollifier import MollifierBuild, build_mollifier, dilate_normalize

HALF_PI = np.pi / 2.0


@dataclass(frozen=True)
class WaveletIndex:
    """Dyadic scale m and integer translation n."""

    m: int
    n: int


class CumulativeProfile:
    """Exact running integral of the linear interpolant of a sampled bump.

    Evaluation anywhere is the piecewise-quadratic antiderivative; outside
    the sampled support it clamps bit-exactly to 0 on the left and to
    ``total`` on the right.  Samples are rescaled so the full integral is
    exactly ``total``.
    """

    def __init__(self, phi: GridFunction, total: float):
        v = np.asarray(phi.values, dtype=float)
        h = phi.dx
        cum = np.concatenate([[0.0], np.cumsum(0.5 * (v[1:] + v[:-1]) * h)])
        if cum[-1] <= 0:
            raise InputError("profile has no mass")
        scale = total / cum[-1]
        self.values = v * scale
        self.cum = cum * scale
        self.x0 = phi.x0
        self.h = h
        self.total = total
        nz = np.nonzero(self.values)[0]
        if len(nz) == 0:
            raise InputError("profile has no nonzero samples")
        self.lo_x = phi.x0 + nz[0] * h
        self.hi_x = phi.x0 + nz[-1] * h

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        j = np.clip(
            np.floor((x - self.x0) / self.h).astype(int), 0, len(self.values) - 2
        )
        frac = x - (self.x0 + j * self.h)
        out = (
            self.cum[j]
            + self.values[j] * frac
            + (self.values[j + 1] - self.values[j]) * frac * frac / (2.0 * self.h)
        )
        out = np.where(x <= self.lo_x, 0.0, out)
        out = np.where(x >= self.hi_x, self.total, out)
        return out


def theta(phi_a: GridFunction) -> GridFunction:
    """Running integral of a mass-pi/2 cutoff, sampled on its own grid.

    Nondecreasing, exactly 0 left of the support and exactly pi/2 right of
    it; an input mass off pi/2 by more than 1e-6 is rejected.
    """
    mass = phi_a.integral()
    if abs(mass - HALF_PI) > 1e-6:
        raise InputError(
            f"cutoff mass {mass:.9f} deviates from pi/2 by more than 1e-6"
        )
    prof = CumulativeProfile(phi_a, HALF_PI)
    vals = prof(phi_a.x())
    return GridFunction(phi_a.x0, phi_a.dx, vals, (phi_a.x0, phi_a.x_end))


class BellEvaluator:
    """Point evaluator for the bell and the wavelet transform.

    Bundles the two cumulative profiles with the half-width a; carries the
    knot spacing of the underlying sampled cutoff so that oscillatory
    quadratures can align their panels with it.
    """

    def __init__(self, a: float, prof_a: CumulativeProfile, prof_2a: CumulativeProfile):
        self.a = a
        self.prof_a = prof_a
        self.prof_2a = prof_2a
        self.knot_h = prof_a.h
        self.band = (np.pi - a, 2.0 * (np.pi + a))
        # minimal separation of ramp knot frequencies: half-width of the
        # actual (possibly narrower) cutoff support; governs beat periods
        self.ramp_half_width = prof_a.hi_x

    def bell_at(self, xi):
        u = np.abs(np.asarray(xi, dtype=float))
        out = np.sin(self.prof_a(u - np.pi)) * np.cos(self.prof_2a(u - 2.0 * np.pi))
        return np.where((u <= self.band[0]) | (u >= self.band[1]), 0.0, out)

    def psi_hat_at(self, xi):
        xi = np.asarray(xi, dtype=float)
        return np.exp(0.5j * xi) * self.bell_at(xi)


def bell(
    a: float,
    phi_a: GridFunction,
    phi_2a: GridFunction,
    freq_spec: GridSpec,
) -> SpectralFunction:
    """Evaluate the bell on a frequency grid (real values, even extension).

    ``phi_a`` and ``phi_2a`` are the mass-pi/2 cutoffs of half-widths a and
    2a; build the second as the exact dilation of the first so the dyadic
    identity theta_2a(2v) = theta_a(v) holds to rounding error.
    """
    if not (0.0 < a < np.pi / 3.0):
        raise DomainError(f"half-width a must lie in (0, pi/3), got {a}")
    for name, gf, width in (("phi_a", phi_a, a), ("phi_2a", phi_2a, 2 * a)):
        if abs(gf.integral() - HALF_PI) > 1e-6:
            raise InputError(f"{name} mass deviates from pi/2 by more than 1e-6")
        if gf.support[0] < -width - 1e-12 or gf.support[1] > width + 1e-12:
            raise InputError(f"{name} support exceeds [-{width}, {width}]")
    ev = BellEvaluator(a, CumulativeProfile(phi_a, HALF_PI), CumulativeProfile(phi_2a, HALF_PI))
    vals = ev.bell_at(freq_spec.points()).astype(complex)
    return SpectralFunction(
        xi0=freq_spec.x0,
        dxi=freq_spec.dx,
        values=vals,
        support=(-2.0 * (np.pi + a), 2.0 * (np.pi + a)),
        hermitian_real=True,
        eval_fn=lambda xi: ev.bell_at(xi).astype(complex),
        source=ev,
    )


def psi_hat(b: SpectralFunction) -> SpectralFunction:
    """Attach the half-shift phase: psi_hat(xi) = e^{i xi/2} b(xi)."""
    xi = b.xi()
    vals = np.exp(0.5j * xi) * b.values
    ev = b.source
    fn = ev.psi_hat_at if isinstance(ev, BellEvaluator) else None
    return SpectralFunction(
        xi0=b.xi0,
        dxi=b.dxi,
        values=vals,
        support=b.support,
        hermitian_real=True,
        eval_fn=fn,
        source=ev,
    )


# ---------------------------------------------------------------------------
# Synthesis
# ---------------------------------------------------------------------------

@dataclass
class LatticeSynthesis:
    """Wavelet samples on the lattice x = j L / N with diagnostics."""

    grid: GridFunction
    imag_max: float
    periodization_diff: float
    l2_norm: float


def _lattice_values(spectrum_at, band: float, L: float, N: int) -> np.ndarray:
    dxi = 2.0 * np.pi / L
    M = int(np.ceil(band / dxi)) + 2
    if 2 * M + 1 >= N:
        raise ResolutionError("lattice too small for the spectral bandwidth")
    j = np.arange(-M, M + 1)
    spec = np.zeros(N, dtype=complex)
    spec[j % N] = spectrum_at(j * dxi)
    return np.fft.fft(spec) * (dxi / (2.0 * np.pi))


def synthesize_psi_lattice(
    ph: SpectralFunction,
    L: float = 2.0 ** 18,
    N: int = 2 ** 22,
    check_periodization: bool = True,
) -> LatticeSynthesis:
    """Inverse transform onto the lattice {j L / N} via a zero-padded DFT.

    Sampling the spectrum at 2 pi / L computes the L-periodization of the
    wavelet.  The wraparound on the reporting range |x| <= L/4 is certified
    below 1e-13 by re-synthesizing at twice the period and comparing there
    (a half-period reference would be dirtier than the synthesis itself).
    The Hermitian spectrum must synthesize real: the imaginary residue is
    checked against 1e-12.
    """
    band = max(abs(ph.support[0]), abs(ph.support[1]))
    if ph.eval_fn is not None:
        spectrum_at = ph.eval_fn
    else:
        # fall back to the sampled grid; the synthesis frequencies must hit it
        ratio = (2.0 * np.pi / L) / ph.dxi
        if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
            raise InputError(
                "synthesis frequencies do not align with the sampled spectrum"
            )
        xi_grid = ph.xi()
        sampled = ph.values

        def spectrum_at(q):
            q = np.asarray(q, dtype=float)
            out = np.zeros(len(q), dtype=complex)
            idx = np.round((q - ph.xi0) / ph.dxi).astype(int)
            ok = (idx >= 0) & (idx < len(sampled))
            ok[ok] &= np.abs(xi_grid[idx[ok]] - q[ok]) < 1e-9
            out[ok] = sampled[idx[ok]]
            return out

    # resolve the bell across its support: at least 2^12 samples
    if (2.0 * band) / (2.0 * np.pi / L) < 2 ** 12:
        raise ResolutionError("frequency sampling too coarse across the band")

    vals = _lattice_values(spectrum_at, band, L, N)
    imag_max = float(np.max(np.abs(vals.imag)))
    scale = max(1.0, float(np.max(np.abs(vals.real))))
    if imag_max > 1e-12 * scale:
        raise ResolutionError(
            f"imaginary residue {imag_max:.3e} exceeds 1e-12 relative to "
            f"the synthesis scale {scale:.3e}"
        )
    psi = vals.real

    per_diff = 0.0
    if check_periodization:
        dbl = _lattice_values(spectrum_at, band, 2.0 * L, 2 * N)
        x_dbl = np.fft.fftfreq(2 * N, d=0.5 / L)
        keep = np.abs(x_dbl) <= L / 4.0
        idx = np.round(x_dbl[keep] / (L / N)).astype(int) % N
        per_diff = float(np.max(np.abs(dbl.real[keep] - psi[idx])))
        if per_diff > 1e-13:
            raise ResolutionError(
                f"periodization residual {per_diff:.3e} exceeds 1e-13"
            )

    dxl = L / N
    l2 = float(np.sqrt(np.sum(psi ** 2) * dxl))
    grid = GridFunction(
        x0=-L / 2.0,
        dx=dxl,
        values=np.fft.fftshift(psi),
        support=(-L / 2.0, L / 2.0 - dxl),
    )
    return LatticeSynthesis(
        grid=grid, imag_max=imag_max, periodization_diff=per_diff, l2_norm=l2
    )


def eval_psi_point(ph: SpectralFunction, x: float, nodes_per_panel: int = 8) -> float:
    """Direct oscillatory quadrature of one wavelet value,

        psi(x) = (1/pi) Int_{band} b(xi) cos((x - 1/2) xi) d xi.

    Panels align with the knots of the sampled bell profile, where its
    piecewise polynomial changes; Gauss-Legendre nodes per panel then give
    well over the minimum 8 nodes per oscillation period for |x| up to the
    synthesis range.
    """
    if not np.isfinite(x):
        raise DomainError("evaluation point must be finite")
    ev = ph.source
    if not isinstance(ev, BellEvaluator):
        raise InputError("point evaluation requires the bell evaluation context")
    u = x - 0.5
    lo, hi = ev.band
    n_panels = int(np.ceil((hi - lo) / ev.knot_h))
    gl_x, gl_w = np.polynomial.legendre.leggauss(nodes_per_panel)
    edges = np.linspace(lo, hi, n_panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    haf = 0.5 * (edges[1:] - edges[:-1])
    xi = (mid[:, None] + haf[:, None] * gl_x[None, :]).ravel()
    wts = (haf[:, None] * gl_w[None, :]).ravel()
    vals = ev.bell_at(xi).real
    return float(np.sum(vals * np.cos(u * xi) * wts) / np.pi)


def wavelet_member_spectrum(ph: SpectralFunction, idx: WaveletIndex) -> SpectralFunction:
    """Transform of the dilated/translated member 2^{m/2} psi(2^m x - n):

        xi -> 2^{-m/2} e^{i 2^{-m} n xi} psi_hat(2^{-m} xi),

    on the source grid scaled by 2^m (so the base samples are reused
    exactly).  |m| > 30 is rejected as an overflow guard.
    """
    if abs(idx.m) > 30:
        raise DomainError(f"scale |m| > 30 rejected (overflow guard), got {idx.m}")
    s = 2.0 ** idx.m
    u = ph.xi()  # member value at xi = s * u uses the base sample at u
    vals = 2.0 ** (-idx.m / 2.0) * np.exp(1j * idx.n * u) * ph.values
    base_fn = ph.eval_fn

    fn = None
    if base_fn is not None:
        def fn(xi, _m=idx.m, _n=idx.n, _f=base_fn):
            xi = np.asarray(xi, dtype=float)
            us = 2.0 ** (-_m) * xi
            return 2.0 ** (-_m / 2.0) * np.exp(1j * _n * us) * _f(us)

    return SpectralFunction(
        xi0=ph.xi0 * s,
        dxi=ph.dxi * s,
        values=vals,
        support=(ph.support[0] * s, ph.support[1] * s),
        hermitian_real=True,
        eval_fn=fn,
        source=ph.source,
    )


def psi_derivative_spectrum(ph: SpectralFunction, q: int) -> SpectralFunction:
    """Multiply by (-i xi)^q: the transform of the q-th derivative.  Exact
    for band-limited spectra; q is capped at 40."""
    if q < 0 or q > 40:
        raise DomainError(f"derivative order must be in [0, 40], got {q}")
    xi = ph.xi()
    vals = (-1j * xi) ** q * ph.values
    base_fn = ph.eval_fn
    fn = None
    if base_fn is not None:
        def fn(z, _q=q, _f=base_fn):
            z = np.asarray(z, dtype=float)
            return (-1j * z) ** _q * _f(z)

    return SpectralFunction(
        xi0=ph.xi0,
        dxi=ph.dxi,
        values=vals,
        support=ph.support,
        hermitian_real=ph.hermitian_real,
        eval_fn=fn,
        source=ph.source,
    )


# ---------------------------------------------------------------------------
# Pipeline bundle
# ---------------------------------------------------------------------------

@dataclass
class WaveletBuild:
    """Everything the verification stages need, built in one shot."""

    sigma: float
    a: float
    master: MollifierBuild
    phi_a: GridFunction
    phi_2a: GridFunction
    b: SpectralFunction
    ph: SpectralFunction
    synthesis: LatticeSynthesis
    L: float
    N: int


def build_wavelet(
    sigma: float = 2.0,
    a: float = np.pi / 6.0,
    grid_pow: int = 17,
    freq_pow: int = 16,
    profile_cutoff: float = 0.2,
    base: str = "cone",
    base_width: float = 1.0,
    L: float = 2.0 ** 18,
    N: int = 2 ** 22,
    check_periodization: bool = True,
) -> WaveletBuild:
    """Build cutoff -> bell -> transform -> lattice synthesis.

    The spectral profile keeps only the widest cascade factors
    (``profile_cutoff``): deeper factors steepen the decay beyond what
    double precision can exhibit across the verification window, while the
    orthonormality structure is exact at any truncation depth.
    """
    spec = GridSpec.symmetric(1.5, grid_pow)
    master = build_mollifier(
        sigma, spec, cutoff=profile_cutoff, base=base, base_width=base_width
    )
    phi_a = dilate_normalize(master.phi, a, HALF_PI)
    phi_2a = dilate_normalize(master.phi, 2.0 * a, HALF_PI)
    band = 2.0 * (np.pi + a) + 1.0
    nfreq = 2 ** freq_pow
    fspec = GridSpec(-band, 2.0 * band / nfreq, nfreq + 1)
    b = bell(a, phi_a, phi_2a, fspec)
    ph = psi_hat(b)
    synth = synthesize_psi_lattice(ph, L=L, N=N, check_periodization=check_periodization)
    return WaveletBuild(
        sigma=sigma,
        a=a,
        master=master,
        phi_a=phi_a,
        phi_2a=phi_2a,
        b=b,
        ph=ph,
        synthesis=synth,
        L=L,
        N=N,
    )

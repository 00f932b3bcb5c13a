"""Bell structure, wavelet transform, synthesis, and point evaluation."""

import math

import numpy as np
import pytest

from lambertwave import (
    DomainError,
    GridSpec,
    InputError,
    WaveletIndex,
    bell,
    dilate_normalize,
    eval_psi_point,
    inner_product,
    psi_derivative_spectrum,
    synthesize_psi_lattice,
    theta,
    wavelet_member_spectrum,
)

A = math.pi / 6.0
HALF_PI = math.pi / 2.0


@pytest.fixture(scope="module")
def profiles(wavelet):
    return wavelet.phi_a, wavelet.phi_2a


def test_theta_clamps_and_center(profiles):
    phi_a, _ = profiles
    th = theta(phi_a)
    x = th.x()
    supp_hi = phi_a.support[1]
    assert np.all(th.values[x <= -supp_hi] == 0.0)
    assert np.all(th.values[x >= supp_hi] == HALF_PI)
    center = int(round(-th.x0 / th.dx))
    assert th.values[center] == pytest.approx(math.pi / 4.0, abs=1e-9)
    assert np.all(np.diff(th.values) >= 0.0)


def test_theta_complementarity(wavelet):
    ev = wavelet.ph.source
    rng = np.random.RandomState(0)
    xs = rng.uniform(-A, A, 100)
    vals = ev.prof_a(xs) + ev.prof_a(-xs)
    assert np.max(np.abs(vals - HALF_PI)) <= 1e-9


def test_theta_mass_guard(profiles):
    phi_a, _ = profiles
    bad = dilate_normalize(phi_a, 1.0, HALF_PI * 1.001)
    with pytest.raises(InputError):
        theta(bad)


def test_bell_flat_region_exact(wavelet):
    ev = wavelet.ph.source
    xi = np.linspace(math.pi + A, 2.0 * (math.pi - A), 1001)
    assert np.all(ev.bell_at(xi) == 1.0)
    assert np.all(ev.bell_at(-xi) == 1.0)


def test_bell_zero_outside(wavelet):
    ev = wavelet.ph.source
    xi = np.concatenate(
        [
            np.linspace(0.0, math.pi - A, 300),
            np.linspace(2.0 * (math.pi + A), 20.0, 300),
        ]
    )
    assert np.all(ev.bell_at(xi) == 0.0)
    assert np.all(ev.bell_at(-xi) == 0.0)


def test_bell_range_and_midpoint(wavelet):
    ev = wavelet.ph.source
    xi = np.linspace(-10.0, 10.0, 4001)
    vals = ev.bell_at(xi)
    assert np.all(vals >= 0.0) and np.all(vals <= 1.0)
    assert ev.bell_at(np.array([math.pi]))[0] == pytest.approx(
        math.sqrt(2.0) / 2.0, abs=1e-9
    )


def test_bell_partition_identity(wavelet):
    # sin^2 + cos^2 of the same profile value: exact to one ulp
    ev = wavelet.ph.source
    xs = np.linspace(-A, A, 501)
    t = ev.prof_a(xs)
    assert np.max(np.abs(np.sin(t) ** 2 + np.cos(t) ** 2 - 1.0)) <= 4e-16


def test_bell_domain_errors(wavelet):
    fspec = GridSpec.symmetric(9.0, 12)
    with pytest.raises(DomainError):
        bell(1.2, wavelet.phi_a, wavelet.phi_2a, fspec)
    with pytest.raises(DomainError):
        bell(0.0, wavelet.phi_a, wavelet.phi_2a, fspec)
    too_wide = dilate_normalize(wavelet.master.phi, 5.0 * A, HALF_PI)
    with pytest.raises(InputError):
        bell(A, too_wide, wavelet.phi_2a, fspec)  # support exceeds [-a, a]


def test_psi_hat_modulus_and_zero(wavelet):
    b_abs = np.abs(wavelet.b.values)
    assert np.max(np.abs(np.abs(wavelet.ph.values) - b_abs)) <= 1e-15
    assert wavelet.ph.at(np.array([0.0]))[0] == 0.0
    # phase at pi: e^{i pi/2} b(pi) = i b(pi)
    val = wavelet.ph.at(np.array([math.pi]))[0]
    assert val.real == pytest.approx(0.0, abs=1e-12)
    assert val.imag == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-9)


def test_synthesis_certificates(wavelet):
    syn = wavelet.synthesis
    assert abs(syn.l2_norm - 1.0) <= 1e-8
    assert syn.imag_max <= 1e-12
    assert syn.periodization_diff <= 1e-13


def test_synthesis_symmetry_about_half(wavelet):
    grid = wavelet.synthesis.grid
    x = grid.x()
    i_half = int(round((0.5 - grid.x0) / grid.dx))
    assert x[i_half] == 0.5
    for r in (1, 5, 40, 333, 4096):
        assert grid.values[i_half + r] == pytest.approx(
            grid.values[i_half - r], rel=1e-10, abs=1e-13
        )


def test_point_eval_matches_lattice(wavelet):
    grid = wavelet.synthesis.grid
    sup = grid.sup()
    x = grid.x()
    # 20 deterministic probe points in the main-lobe region
    sel = []
    for xt in np.linspace(-6.0, 7.0, 53):
        i = int(round((xt - grid.x0) / grid.dx))
        if abs(grid.values[i]) >= 1e-3 * sup:
            sel.append(i)
        if len(sel) == 20:
            break
    assert len(sel) == 20
    for i in sel:
        pv = eval_psi_point(wavelet.ph, float(x[i]))
        assert abs(pv - grid.values[i]) <= 1e-8 * abs(grid.values[i])


def test_point_eval_symmetry_and_errors(wavelet):
    u = 0.77
    left = eval_psi_point(wavelet.ph, 0.5 - u)
    right = eval_psi_point(wavelet.ph, 0.5 + u)
    assert left == right  # cosine kernel is even in (x - 1/2)
    with pytest.raises(DomainError):
        eval_psi_point(wavelet.ph, float("nan"))


def test_member_spectrum_identity_and_support(wavelet):
    m00 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(0, 0))
    assert np.array_equal(m00.values, wavelet.ph.values)
    m23 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(2, 3))
    lo, hi = m23.support
    assert hi == pytest.approx(4.0 * 2.0 * (math.pi + A), rel=1e-15)
    # nonzero samples only inside the dyadic band
    xi = m23.xi()
    band = (np.abs(xi) >= 4.0 * (math.pi - A)) & (np.abs(xi) <= 8.0 * (math.pi + A))
    assert np.all(m23.values[~band] == 0.0)
    with pytest.raises(DomainError):
        wavelet_member_spectrum(wavelet.ph, WaveletIndex(31, 0))


def test_member_norm_preserved(wavelet):
    m13 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(1, 3))
    val = inner_product(m13, m13)
    assert abs(val - 1.0) <= 1e-8


def test_derivative_spectrum(wavelet):
    d0 = psi_derivative_spectrum(wavelet.ph, 0)
    assert np.array_equal(d0.values, wavelet.ph.values)
    d1 = psi_derivative_spectrum(wavelet.ph, 1)
    at_pi = d1.at(np.array([math.pi]))[0]
    expect = -1j * math.pi * wavelet.ph.at(np.array([math.pi]))[0]
    assert abs(at_pi - expect) <= 1e-12
    with pytest.raises(DomainError):
        psi_derivative_spectrum(wavelet.ph, 41)


def test_derivative_sup_bandwidth_bound(wavelet, lattice_cache):
    # sup |psi^(q)| <= max|xi|^q * (1/2pi) Int b  (band-limited growth)
    band = 2.0 * (math.pi + A)
    xi = wavelet.b.xi()
    b_l1 = np.trapezoid(np.abs(wavelet.b.values), dx=wavelet.b.dxi).real
    cap = b_l1 / (2.0 * math.pi)
    for q in (1, 2, 4, 8):
        sup = lattice_cache[q].sup()
        assert sup <= band ** q * cap * 1.0001


def test_synthesis_alignment_guard(wavelet):
    with pytest.raises(Exception):
        synthesize_psi_lattice(wavelet.ph, L=100.0, N=2 ** 10)


def test_build_wavelet_profile_flags(wavelet):
    # default profile truncates after the first cascade factor
    assert not wavelet.master.degenerate  # a_1 = 0.25 clears the 0.2 cutoff
    assert len(wavelet.master.scales) == 1
    assert wavelet.phi_a.support[1] <= A
    assert wavelet.phi_2a.support[1] <= 2 * A


def test_psi_at_half_fixture(wavelet):
    # (1/pi) Int b over the band; frozen from the trapezoid oracle, and the
    # lattice peak sits exactly there
    val = eval_psi_point(wavelet.ph, 0.5)
    assert val == pytest.approx(1.0238174991247, abs=1e-9)
    ev = wavelet.ph.source
    u = np.linspace(math.pi - A, 2 * (math.pi + A), 2 ** 20 + 1)
    oracle = np.trapezoid(ev.bell_at(u), dx=u[1] - u[0]) / math.pi
    assert val == pytest.approx(oracle, abs=1e-9)
    grid = wavelet.synthesis.grid
    assert grid.x()[int(np.argmax(np.abs(grid.values)))] == 0.5

"""Certification operations: inner products, Gram, dyadic partition,
completeness, decay fits, and the mixed bound audit."""

import math

import numpy as np
import pytest

from lambertwave import (
    DomainError,
    InputError,
    VerificationError,
    WaveletIndex,
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
    wavelet_member_spectrum,
)

A = math.pi / 6.0


def test_self_inner_product(wavelet):
    val = inner_product(wavelet.ph, wavelet.ph)
    assert abs(val - 1.0) <= 1e-8
    assert abs(val.imag) <= 1e-12


def test_disjoint_scales_exactly_zero(wavelet):
    m0 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(0, 2))
    m3 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(3, -5))
    assert inner_product(m0, m3) == 0.0


def test_translate_orthogonality(wavelet):
    m0 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(0, 0))
    m1 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(0, 1))
    assert abs(inner_product(m0, m1)) <= 1e-8


def test_inner_product_refinement_stability(wavelet):
    m0 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(0, 3))
    m1 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(1, -2))
    coarse = inner_product(m0, m1, n_quad=2 ** 14 + 1)
    fine = inner_product(m0, m1, n_quad=2 ** 15 + 1)
    assert abs(coarse - fine) <= 1e-9


def test_gram_small_window(wavelet):
    rep = gram_matrix(wavelet.ph, m_range=(-1, 1), n_range=(-3, 3))
    assert rep.max_diag_dev <= 1e-7
    assert rep.max_offdiag <= 1e-7
    seen = {(i1, i2): v for i1, i2, v in rep.entries}
    # Hermitian pairing: stored upper triangle, conjugate closure
    v = seen[((0, 1), (1, -2))]
    assert abs(np.conj(v) - _lookup_or_conj(seen, (1, -2), (0, 1))) == 0.0
    n_members = 3 * 7
    assert len(rep.entries) == n_members * (n_members + 1) // 2


def _lookup_or_conj(seen, i1, i2):
    if (i1, i2) in seen:
        return seen[(i1, i2)]
    return np.conj(seen[(i2, i1)])


def test_gram_tolerance_failure_names_pair(wavelet):
    with pytest.raises(VerificationError) as exc:
        gram_matrix(wavelet.ph, m_range=(-1, 1), n_range=(-3, 3), tol=1e-16)
    assert exc.value.detail is not None


def test_dyadic_default_and_flat_region(wavelet):
    rep = dyadic_sum_check(wavelet.ph)
    assert rep.max_dev <= 1e-9
    # single-term flat region: the sum is exactly 1
    flat = np.linspace(math.pi + A, 2.0 * (math.pi - A), 257)
    rep2 = dyadic_sum_check(wavelet.ph, xi_grid=flat)
    assert np.all(rep2.s == 1.0)


def test_dyadic_rejects_zero(wavelet):
    with pytest.raises(InputError):
        dyadic_sum_check(wavelet.ph, xi_grid=np.array([0.0, 1.0]))


def test_completeness_on_psi_itself(wavelet):
    ev = wavelet.ph.source

    def fhat(xi):
        return ev.psi_hat_at(xi)

    fhat.band = (0.0, 2.0 * (math.pi + A))
    rep = completeness_check(wavelet.ph, f_hat=fhat)
    assert rep.status == "pass"
    assert abs(rep.ratio - 1.0) <= 1e-8


def test_completeness_on_member(wavelet):
    member = wavelet_member_spectrum(wavelet.ph, WaveletIndex(1, 5))

    def fhat(xi):
        return member.at(xi)

    fhat.band = (0.0, 4.0 * (math.pi + A))
    rep = completeness_check(wavelet.ph, f_hat=fhat)
    assert rep.status == "pass"
    assert abs(rep.ratio - 1.0) <= 1e-8


def test_completeness_gaussian(wavelet):
    rep = completeness_check(wavelet.ph, gaussian_spectrum())
    assert rep.status == "pass"
    assert abs(rep.ratio - 1.0) <= 1e-3


def test_envelope_shape(wavelet):
    grid = wavelet.synthesis.grid
    ev = wavelet.ph.source
    xg = np.logspace(np.log10(50.0), 4.0, 60)
    table = decay_envelope(grid, xg, evaluator=ev)
    assert np.all(table.env[table.usable] <= grid.sup())
    assert np.all(np.diff(table.env) <= 0.0)  # nonincreasing on [50, 1e4]
    assert table.dropped == 0


def test_envelope_floor_flagging(wavelet):
    grid = wavelet.synthesis.grid
    ev = wavelet.ph.source
    xg = np.logspace(2.0, np.log10(3e4), 20)
    table = decay_envelope(grid, xg, floor=1e-6, evaluator=ev)
    assert table.dropped > 0
    assert np.sum(table.usable) + table.dropped == len(xg)


def test_fit_decay_gates_and_shapes(wavelet, fit_grid):
    ev = wavelet.ph.source
    table = decay_envelope(wavelet.synthesis.grid, fit_grid, evaluator=ev)
    fit = fit_decay(table, wavelet.sigma)
    assert fit.h_fit > 0
    assert fit.r_squared >= 0.9
    assert fit.shape_checks["log_ratio_increasing"]
    assert fit.shape_checks["sqrt_ratio_decreasing_top_decade"]
    assert fit.shape_checks["sublinear"]
    assert np.isfinite(fit.crossovers["gevrey2"])
    assert fit.comparator_table is not None
    assert fit.comparator_columns[0] == "x"
    # regressor anchor: T_2(e^e) = e^2
    lk = math.e
    assert lk ** 2 / 1.0 == pytest.approx(math.e ** 2)


def test_fit_decay_input_gates(wavelet, fit_grid):
    ev = wavelet.ph.source
    table = decay_envelope(wavelet.synthesis.grid, fit_grid[:10], evaluator=ev)
    with pytest.raises(InputError):
        fit_decay(table, wavelet.sigma)
    narrow = np.logspace(2, 2.5, 40)
    table2 = decay_envelope(wavelet.synthesis.grid, narrow, evaluator=ev)
    with pytest.raises(InputError):
        fit_decay(table2, wavelet.sigma)


def test_derivative_decay_rows(wavelet, fit_grid, lattice_cache):
    ev = wavelet.ph.source
    window = decay_envelope(wavelet.synthesis.grid, fit_grid, evaluator=ev).window
    rows = []
    for n in (0, 1, 2, 4, 8):
        rows.append(
            derivative_decay_check(
                wavelet.ph, n, fit_grid, wavelet.L, wavelet.N, window,
                wavelet.sigma, lattice=lattice_cache[n],
            )
        )
        assert rows[-1].h_fit > 0
        assert rows[-1].r_squared >= 0.9
    growth = intercept_growth_fit(rows)
    assert growth.feasible
    assert 0.0 < growth.s_ls <= 1.0
    with pytest.raises(InputError):
        intercept_growth_fit(rows[1:])  # missing the n = 0 anchor


def test_mixed_audit_feasible(wavelet, lattice_cache):
    rep = mixed_bound_audit(
        wavelet.ph, 4, 4, 1.0, 1.0, 2.0, wavelet.L, wavelet.N,
        lattice_cache=lattice_cache,
    )
    assert rep.feasible
    assert rep.sup_table[0, 0] == pytest.approx(
        lattice_cache[0].sup(), rel=1e-15
    )
    # every constraint holds at the reported constants (direct substitution)
    for k in range(5):
        for q in range(5):
            lhs = math.log(rep.sup_table[k, q])
            rhs = (
                rep.log_c
                + k * rep.log_a
                + q * rep.log_b
                + rep.s * math.lgamma(k + 1.0)
                + rep.tau * q ** rep.sigma * (math.log(q) if q >= 1 else 0.0)
            )
            assert lhs <= rhs + 1e-9


def test_mixed_audit_domain(wavelet):
    with pytest.raises(DomainError):
        mixed_bound_audit(wavelet.ph, 2, 2, 1.5, 1.0, 2.0, wavelet.L, wavelet.N)
    with pytest.raises(InputError):
        mixed_bound_audit(wavelet.ph, 11, 2, 1.0, 1.0, 2.0, wavelet.L, wavelet.N)


def test_large_x_below_fitted_envelope(wavelet, fit_grid):
    # cross-module consistency: point values beyond the fit grid stay under
    # the fitted decay model (with an order-of-magnitude allowance)
    from lambertwave import eval_psi_point, lambert_w0

    ev = wavelet.ph.source
    table = decay_envelope(wavelet.synthesis.grid, fit_grid, evaluator=ev)
    fit = fit_decay(table, wavelet.sigma)
    for x in (4.0e4, 5.5e4):
        t = math.log(x) ** 2 / lambert_w0(math.log(x))
        model = math.exp(-(fit.h_fit * t + fit.intercept))
        assert abs(eval_psi_point(wavelet.ph, x)) <= 10.0 * model


def test_completeness_inconclusive_on_tiny_cap(wavelet):
    rep = completeness_check(wavelet.ph, gaussian_spectrum(), n_cap=2)
    assert rep.status == "inconclusive"


def test_inner_product_hermitian_swap(wavelet):
    m0 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(0, 3))
    m1 = wavelet_member_spectrum(wavelet.ph, WaveletIndex(1, -2))
    assert inner_product(m1, m0) == np.conj(inner_product(m0, m1))

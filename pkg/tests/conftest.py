"""Shared fixtures: the default wavelet build and the deep cutoff build are
expensive, so they are session-scoped and reused across test modules."""

import numpy as np
import pytest

from lambertwave import (
    GridSpec,
    build_mollifier,
    build_wavelet,
    psi_derivative_spectrum,
    synthesize_psi_lattice,
)


@pytest.fixture(scope="session")
def wavelet():
    """Default pipeline wavelet: sigma=2, a=pi/6, single-factor cone profile,
    full 2^21-sample synthesis."""
    return build_wavelet()


@pytest.fixture(scope="session")
def deep_moll():
    """Deep analytic-bump cascade at the certificate grid (2^17)."""
    return build_mollifier(2.0, GridSpec.symmetric(1.5, 17))


@pytest.fixture(scope="session")
def fit_grid():
    return np.logspace(2, np.log10(3e4), 36)


@pytest.fixture(scope="session")
def lattice_cache(wavelet):
    """Derivative-order -> synthesized lattice, shared by decay and moment
    audits (order 0 is the base synthesis)."""
    cache = {0: wavelet.synthesis.grid}
    for q in range(1, 9):
        dph = psi_derivative_spectrum(wavelet.ph, q)
        cache[q] = synthesize_psi_lattice(
            dph, L=wavelet.L, N=wavelet.N, check_periodization=False
        ).grid
    return cache

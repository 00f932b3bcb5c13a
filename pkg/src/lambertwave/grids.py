"""Sampled-function containers: uniform space grids and frequency grids."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class GridSpec:
    """Uniform 1-D grid: points x0 + k*dx for k = 0..n-1."""

    x0: float
    dx: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.x0) and np.isfinite(self.dx)):
            raise InputError("grid endpoints must be finite")
        if self.dx <= 0:
            raise InputError(f"grid spacing must be positive, got {self.dx}")
        if self.n < 2:
            raise InputError(f"grid needs at least 2 points, got {self.n}")

    @property
    def x_end(self) -> float:
        return self.x0 + self.dx * (self.n - 1)

    def points(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @staticmethod
    def symmetric(half_width: float, pow2: int) -> "GridSpec":
        """Symmetric grid over [-half_width, half_width] with 2**pow2 + 1 points."""
        n = 2 ** pow2 + 1
        return GridSpec(-half_width, 2.0 * half_width / (n - 1), n)


@dataclass
class GridFunction:
    """Real samples on a uniform grid, with explicit support bounds.

    Samples are exactly zero outside ``support``; treat instances as
    immutable after construction.
    """

    x0: float
    dx: float
    values: np.ndarray
    support: tuple

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(self.values)):
            raise InputError("grid function contains non-finite samples")
        lo, hi = self.support
        if lo < self.x0 - 1e-12 or hi > self.x_end + 1e-12:
            raise InputError("support exceeds the sampled interval")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def x_end(self) -> float:
        return self.x0 + self.dx * (self.n - 1)

    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    def integral(self) -> float:
        return float(np.trapezoid(self.values, dx=self.dx))

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass
class SpectralFunction:
    """Complex samples of a compactly supported frequency-domain function.

    ``support`` is the closed interval outside which the function vanishes;
    ``hermitian_real`` marks F(-xi) = conj(F(xi)), i.e. a real time-domain
    counterpart.  ``eval_fn`` (optional) evaluates the underlying function at
    arbitrary frequencies; ``source`` (optional) carries the evaluation
    context it was built from.
    """

    xi0: float
    dxi: float
    values: np.ndarray
    support: tuple
    hermitian_real: bool = False
    eval_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    source: object = field(default=None, repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def xi_end(self) -> float:
        return self.xi0 + self.dxi * (self.n - 1)

    def xi(self) -> np.ndarray:
        return self.xi0 + self.dxi * np.arange(self.n)

    def at(self, xi: np.ndarray) -> np.ndarray:
        """Evaluate at arbitrary frequencies (requires eval_fn)."""
        if self.eval_fn is None:
            raise InputError("this spectral function has no point evaluator")
        return self.eval_fn(np.asarray(xi, dtype=float))

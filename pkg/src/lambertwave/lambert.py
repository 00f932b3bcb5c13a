"""Principal branch of the Lambert W function on [0, inf).

W(x) solves w * exp(w) = x.  The evaluator is a Halley iteration seeded by
the asymptotic expansion log(x) - log(log(x)) for x > e and by the leading
series behaviour near zero; convergence is cubic and five iterations or so
reach double precision on the whole nonnegative axis.  See Corless, Gonnet,
Hare, Jeffrey, Knuth, "On the Lambert W Function", Adv. Comput. Math. 5
(1996) for the method.

Also provided: a certified check of the two-sided asymptotic sandwich

    log x - log(log x) <= W(x) <= log x - (1/2) log(log x),   x >= e,

with per-point slack reporting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

_E = float(np.e)


@dataclass(frozen=True)
class WEvalConfig:
    """Evaluation policy: residual tolerance (relative to max(1, x)) and
    iteration cap."""

    abs_tol: float = 1e-13
    max_iter: int = 64

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")


DEFAULT_W_CONFIG = WEvalConfig()


def lambert_w0(x, cfg: WEvalConfig = DEFAULT_W_CONFIG):
    """Evaluate W on the principal branch for x >= 0.

    Parameters
    ----------
    x : float or array_like
        Nonnegative, finite argument(s).
    cfg : WEvalConfig
        Residual tolerance and iteration cap.

    Returns
    -------
    float or ndarray
        w >= 0 with |w * exp(w) - x| <= cfg.abs_tol * max(1, x).

    Raises
    ------
    DomainError
        For negative or non-finite input.
    ConvergenceError
        If the iteration cap is hit before the residual tolerance is met;
        the exception carries the worst residual.
    """
    scalar = np.isscalar(x)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(xa)):
        raise DomainError("lambert_w0 requires finite input")
    if np.any(xa < 0):
        raise DomainError("lambert_w0 is restricted to x >= 0")

    # Seeds: asymptotic two-term expansion for x > e, W(x) ~ x near 0.
    # x/(1+x) matches both ends of [0, e] well enough for Halley.
    with np.errstate(divide="ignore", invalid="ignore"):
        lx = np.log(np.maximum(xa, 1e-300))
        seed_hi = lx - np.log(np.maximum(lx, 1e-300))
    w = np.where(xa > _E, seed_hi, xa / (1.0 + xa))

    converged = False
    for _ in range(cfg.max_iter):
        ew = np.exp(w)
        f = w * ew - xa
        wp1 = w + 1.0
        # Halley step for f(w) = w e^w - x.
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w = w - dw
        if np.all(np.abs(dw) <= 1e-16 * (2.0 + np.abs(w))):
            converged = True
            break

    w = np.maximum(w, 0.0)
    residual = np.abs(w * np.exp(w) - xa) / np.maximum(1.0, xa)
    if not converged and np.any(residual > cfg.abs_tol):
        raise ConvergenceError(
            f"Halley iteration did not converge within {cfg.max_iter} steps",
            residual=float(np.max(residual)),
        )
    worst = float(np.max(residual))
    if worst > cfg.abs_tol:
        raise ConvergenceError(
            f"residual {worst:.3e} exceeds tolerance {cfg.abs_tol:.3e}",
            residual=worst,
        )
    return float(w[0]) if scalar else w


@dataclass(frozen=True)
class WBoundsReport:
    """Per-point sandwich slack for the x >= e bounds."""

    x: np.ndarray
    w: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    lower_slack: np.ndarray
    upper_slack: np.ndarray
    min_lower_slack: float
    min_upper_slack: float


def w_bounds_check(x_grid, cfg: WEvalConfig = DEFAULT_W_CONFIG) -> WBoundsReport:
    """Check log x - log log x <= W(x) <= log x - 0.5 log log x on x >= e.

    Raises DomainError if any grid point is below e (the bounds are not
    claimed there).  Both slacks vanish exactly at x = e.
    """
    x = np.atleast_1d(np.asarray(x_grid, dtype=float))
    if np.any(~np.isfinite(x)) or np.any(x < _E):
        raise DomainError("bound check requires every grid point >= e")
    w = np.atleast_1d(lambert_w0(x, cfg))
    lx = np.log(x)
    llx = np.log(lx)
    lower = lx - llx
    upper = lx - 0.5 * llx
    return WBoundsReport(
        x=x,
        w=w,
        lower=lower,
        upper=upper,
        lower_slack=w - lower,
        upper_slack=upper - w,
        min_lower_slack=float(np.min(w - lower)),
        min_upper_slack=float(np.min(upper - w)),
    )

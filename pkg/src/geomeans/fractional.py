"""Erdelyi-Kober and right-sided Riemann-Liouville fractional operators.

Positive orders are weighted integrals with an algebraic endpoint factor;
the factor is absorbed exactly by a Gauss-Jacobi rule after substituting
out the singularity, so smooth profiles integrate with spectral accuracy.
Nonpositive orders are realized by analytic continuation: integrate up to
a positive fractional order, then apply integer-order derivative formulas
from the numerics module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gamma, roots_jacobi

from .numerics import SampledProfile, TGrid, quintic_interp, d_operator_matrix, diff_matrix

__all__ = [
    "FractionalSpec",
    "erdelyi_kober",
    "erdelyi_kober_ac",
    "riemann_liouville_right",
    "ek_matrix",
    "ek_ac_matrix",
    "rl_matrix",
]

_CHUNK = 128


@dataclass(frozen=True)
class FractionalSpec:
    """Weight index eta and order alpha of an Erdelyi-Kober operator."""

    eta: float
    alpha: float

    def __post_init__(self):
        if self.alpha > 0 and self.eta < -0.5:
            raise ValueError("positive-order operators need eta >= -1/2")


@lru_cache(maxsize=64)
def _jacobi_rule(order: int, a: float, b: float):
    x, w = roots_jacobi(order, a, b)
    return x, w


def _ek_rule(eta: float, alpha: float, order: int):
    """Nodes s_i in (0, 1) and weights F_i with

    integral_0^1 c^{2a-1} (1-c^2)^eta g(sqrt(1-c^2)) dc  ~=  sum F_i g(s_i),

    where s = sqrt(1-c^2) = r/t is the radial fraction.
    """
    x, w = _jacobi_rule(order, eta, 2.0 * alpha - 1.0)
    c = 0.5 * (1.0 + x)
    F = w * 2.0 ** (-2.0 * alpha - eta) * (1.0 + c) ** eta
    s = np.sqrt(np.clip(1.0 - c * c, 0.0, None))
    return s, F


def ek_matrix(samples: np.ndarray, grid: TGrid, eta: float, alpha: float,
              order: int = 192) -> np.ndarray:
    """Positive-order Erdelyi-Kober integral of each row of samples (M, N).

    (I_eta^a phi)(t) = (2 t^{-2(a+eta)} / Gamma(a)) *
                       int_0^t (t^2 - r^2)^{a-1} r^{2 eta + 1} phi(r) dr,
    evaluated at every grid node; rows are treated as independent profiles
    extended by zero outside the grid.
    """
    if alpha <= 0:
        raise ValueError("use the analytic-continuation path for alpha <= 0")
    if eta < -0.5:
        raise ValueError("positive-order operators need eta >= -1/2")
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    t = grid.values
    s, F = _ek_rule(eta, alpha, order)
    out = np.empty((samples.shape[0], t.size))
    pref = 2.0 / gamma(alpha)
    for lo in range(0, t.size, _CHUNK):
        hi = min(lo + _CHUNK, t.size)
        r = t[lo:hi, None] * s[None, :]
        vals = quintic_interp(samples, grid, r.ravel(), fill=0.0)
        vals = vals.reshape(samples.shape[0], hi - lo, s.size)
        out[:, lo:hi] = pref * np.einsum("mtq,q->mt", vals, F)
    return out


def _ek_integer_neg_matrix(samples: np.ndarray, grid: TGrid, eta: float, m: int) -> np.ndarray:
    """(I_eta^{-m} phi)(t) = t^{-2(eta-m)} D^m [t^{2 eta} phi(t)], D = (1/2t) d/dt."""
    t = grid.values
    weighted = np.asarray(samples, dtype=float) * t ** (2.0 * eta)
    return d_operator_matrix(weighted, grid, m) * t ** (-2.0 * (eta - m))


def ek_ac_matrix(samples: np.ndarray, grid: TGrid, eta: float, alpha: float,
                 order: int = 192) -> np.ndarray:
    """Erdelyi-Kober operator of order alpha <= 0 by analytic continuation.

    With m = ceil(-alpha), factor I_eta^alpha = I_eta^{m+alpha} o
    I_{eta+m+alpha}^{-m}; the integer-negative factor is the derivative
    formula, the fractional remainder (if any) the positive-order integral.
    """
    if alpha > 0:
        raise ValueError("alpha must be <= 0 on this path")
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    if alpha == 0:
        return samples.copy()
    m = int(np.ceil(-alpha))
    rem = m + alpha
    eta_prime = eta + rem
    inner = _ek_integer_neg_matrix(samples, grid, eta_prime, m)
    if rem == 0:
        return inner
    return ek_matrix(inner, grid, eta, rem, order=order)


def erdelyi_kober(profile: SampledProfile, spec: FractionalSpec, order: int = 192) -> SampledProfile:
    """Positive-order Erdelyi-Kober integral of a sampled profile."""
    if spec.alpha <= 0:
        raise ValueError("alpha <= 0: use erdelyi_kober_ac")
    out = ek_matrix(profile.samples[None, :], profile.grid, spec.eta, spec.alpha, order)
    return SampledProfile(profile.grid, out[0])


def erdelyi_kober_ac(profile: SampledProfile, spec: FractionalSpec, order: int = 192) -> SampledProfile:
    """Erdelyi-Kober operator of nonpositive order (analytic continuation)."""
    out = ek_ac_matrix(profile.samples[None, :], profile.grid, spec.eta, spec.alpha, order)
    return SampledProfile(profile.grid, out[0])


def rl_matrix(samples: np.ndarray, grid: TGrid, alpha: float, order: int = 192) -> np.ndarray:
    """Right-sided Riemann-Liouville integral of order alpha of rows (M, N).

    alpha > 0: (I_-^a u)(t) = (1/Gamma(a)) int_t^b (tau - t)^{a-1} u(tau) dtau
    with b the grid end (profiles vanish beyond it). alpha <= 0 with
    m = ceil(-alpha): (-d/dt)^m applied to the order m + alpha integral.
    """
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    if alpha == 0:
        return samples.copy()
    if alpha < 0:
        m = int(np.ceil(-alpha))
        rem = m + alpha
        inner = samples if rem == 0 else rl_matrix(samples, grid, rem, order)
        return (-1.0) ** m * diff_matrix(inner, grid, m)
    t = grid.values
    b = grid.b
    x, w = _jacobi_rule(order, 0.0, alpha - 1.0)
    v = 0.5 * (1.0 + x)
    F = w * 2.0 ** (-alpha)
    out = np.empty((samples.shape[0], t.size))
    for lo in range(0, t.size, _CHUNK):
        hi = min(lo + _CHUNK, t.size)
        span = (b - t[lo:hi])[:, None]
        tau = t[lo:hi, None] + span * v[None, :]
        vals = quintic_interp(samples, grid, tau.ravel(), fill=0.0)
        vals = vals.reshape(samples.shape[0], hi - lo, v.size)
        out[:, lo:hi] = (span.T ** alpha / gamma(alpha)) * np.einsum("mtq,q->mt", vals, F)
    return out


def riemann_liouville_right(profile: SampledProfile, alpha: float, order: int = 192) -> SampledProfile:
    """Right-sided Riemann-Liouville operator of any real order."""
    out = rl_matrix(profile.samples[None, :], profile.grid, alpha, order)
    return SampledProfile(profile.grid, out[0])

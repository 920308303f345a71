"""Scalar spectral weights and the boundary Fourier filter matrix.

Two weights appear.  ``g_weight`` is the smooth regularized square root

    G_h(sigma) = sqrt(sigma) chi1(sigma / h^{2/3}) + h^{1/3} chi2(sigma / h^{2/3})

with a C-infinity partition chi1^2 + chi2^2 = 1 built from the bump-integral
smooth step; it is used for the exact disc identities.  ``f_weight`` is the
simpler inverse weight actually used inside the tension,

    F_h(sigma) = 1 / max(sigma_+^{1/2}, h^{1/3}),

and ``build_filter_matrix`` realizes F_h(1 - h^2 Laplacian) on a boundary
grid by filtering Fourier coefficients in the arclength variable.
"""

from dataclasses import dataclass

import numpy as np

from .errors import FilterAssemblyError, InvalidCurveError

# Gauss-Legendre rule for the bump integral; the integrand is C-infinity with
# all derivatives vanishing at the endpoints, so 200 nodes is far beyond
# machine precision for the accuracy this weight needs.
_GL_X, _GL_W = np.polynomial.legendre.leggauss(200)


def _bump_integral(b):
    """integral_0^b exp(-1/(v(1-v))) dv for b in [0, 1], vectorized."""
    b = np.asarray(b, dtype=float)
    x = 0.5 * b[..., None] * (_GL_X + 1.0)
    w = 0.5 * b[..., None] * _GL_W
    v = x * (1.0 - x)
    f = np.where(v > 0, np.exp(-1.0 / np.where(v > 0, v, 1.0)), 0.0)
    return (w * f).sum(-1)


_BUMP_TOTAL = float(_bump_integral(1.0))


def smooth_step(u):
    """C-infinity step: 0 for u <= 0, 1 for u >= 1, bump-integral in between."""
    u = np.asarray(u, dtype=float)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    out = np.clip(u, 0.0, 1.0).copy()
    mid = (u > 0.0) & (u < 1.0)
    if np.any(mid):
        out[mid] = _bump_integral(u[mid]) / _BUMP_TOTAL
    return float(out[0]) if scalar else out


def g_weight(sigma, h):
    """Smooth regularized square root G_h(sigma).

    Equals sqrt(sigma) for sigma >= 2 h^{2/3} and h^{1/3} for
    sigma <= h^{2/3} (in particular for all sigma <= 0).
    """
    if not 0 < h <= 1:
        raise InvalidCurveError("h must lie in (0, 1]")
    sigma = np.asarray(sigma, dtype=float)
    t = sigma / h ** (2.0 / 3.0)
    c1 = np.sin(0.5 * np.pi * smooth_step(t - 1.0))
    c2 = np.sqrt(np.maximum(0.0, 1.0 - c1 * c1))
    out = np.sqrt(np.maximum(sigma, 0.0)) * c1 + h ** (1.0 / 3.0) * c2
    return float(out) if out.ndim == 0 else out


def f_weight(sigma, h):
    """Inverse spectral weight 1 / max(sigma_+^{1/2}, h^{1/3}), in [1, h^{-1/3}]
    for sigma <= 1."""
    if not 0 < h <= 1:
        raise InvalidCurveError("h must lie in (0, 1]")
    sigma = np.asarray(sigma, dtype=float)
    out = 1.0 / np.maximum(np.sqrt(np.maximum(sigma, 0.0)), h ** (1.0 / 3.0))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FilterSpec:
    """Frequency bookkeeping for the boundary filter at one energy."""

    h: float
    L: float
    M: int
    n_max: int
    xi: np.ndarray  # scaled frequencies 2 pi n h / L for n = -n_max..n_max

    @classmethod
    def for_grid(cls, grid, h):
        if grid.M % 4:
            raise InvalidCurveError("grid size must be divisible by 4")
        n_max = grid.M // 4
        n = np.arange(-n_max, n_max + 1)
        return cls(h=float(h), L=float(grid.L), M=grid.M, n_max=n_max,
                   xi=2 * np.pi * n * h / grid.L)


def build_filter_matrix(grid, h):
    """Dense symmetric approximation of F_h(1 - h^2 Laplacian) on the grid.

    Low frequencies |n| <= M/4 are handled by projection onto the boundary
    Fourier basis e^{2 pi i n s/L} (s the spectral arclength), everything
    above defaults to h^{-1/3} I.  The analysis weights are w_m / L.  The
    raw product is real up to rounding (the +-n terms are conjugate);
    the result is checked and then explicitly symmetrized.
    """
    spec = FilterSpec.for_grid(grid, h)
    n = np.arange(-spec.n_max, spec.n_max + 1)
    d = f_weight(1.0 - spec.xi ** 2, h) - h ** (-1.0 / 3.0)
    P = np.exp((2j * np.pi / grid.L) * np.outer(grid.s, n))
    K = (P * d) @ P.conj().T
    F = K * (grid.w / grid.L)[None, :]
    scale = np.abs(F.real).max()
    if np.abs(F.imag).max() > 1e-12 * max(scale, 1.0):
        raise FilterAssemblyError(
            f"residual imaginary part {np.abs(F.imag).max():.3e} "
            f"exceeds tolerance (arclength/phase inconsistency?)"
        )
    F = F.real + h ** (-1.0 / 3.0) * np.eye(grid.M)
    return 0.5 * (F + F.T)

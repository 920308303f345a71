"""Assembly of the boundary matrices at a fixed energy.

Basis functions are point sources phi_n(x) = Y0(sqrt(E) |x - y_n|) with the
charges y_n strictly exterior.  Four weighted trace matrices are built
(values, normal derivative, tangential derivative, dilation derivative), all
with rows scaled by sqrt(w_m) so that Euclidean norms approximate boundary
L2 norms.

The interior L2 norm of an E-Helmholtz function is evaluated on the boundary
through the Rellich-type identity

    2E ||u||^2_{L2(Omega)} =
        integral over the boundary of
            (x.n) (E u^2 - (d_n u)^2 - (d_t u)^2) + 2 (x.grad u)(d_n u) ds,

with n the outward normal.  (Note the minus sign on (d_n u)^2: with the full
gradient in the cross term this is the form that matches independent 2-D
quadrature; the terms differing from the commonly quoted
"+ (d_n u)^2" variant cancel on Neumann data, which is why both look right
near eigenvalues.)  The quadratic form is H; its truncated eigendecomposition
provides the square-root factor B with B^T B ~= H.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateNormError, SingularKernelError
from .geometry import build_grid, charge_points
from .special import bessel_y0, bessel_y1
from .weights import build_filter_matrix


@dataclass(frozen=True)
class TensionSystem:
    """All matrices needed to evaluate the weighted tension at one energy."""

    E: float
    h: float
    A_val: np.ndarray
    A_nor: np.ndarray
    A_tan: np.ndarray
    A_dil: np.ndarray
    F: np.ndarray
    A_w: np.ndarray      # F @ A_nor
    H: np.ndarray
    B: np.ndarray
    rank_H: int


def basis_matrices(grid, charges, E):
    """Weighted traces of the point-source basis and its derivatives.

    grad phi_n(x) = -sqrt(E) Y1(sqrt(E)|x - y_n|) (x - y_n)/|x - y_n|.
    """
    if not E > 0:
        raise ValueError("E must be positive")
    k = np.sqrt(E)
    dx = grid.x[:, None, :] - charges.y[None, :, :]
    dist = np.sqrt(np.einsum("mnd,mnd->mn", dx, dx))
    if dist.min() < 1e-12:
        m, n = divmod(int(np.argmin(dist)), charges.N)
        raise SingularKernelError(f"node {m} and charge {n} nearly coincide")
    sw = np.sqrt(grid.w)[:, None]
    gfac = -k * bessel_y1(k * dist) / dist
    A_val = sw * bessel_y0(k * dist)
    A_nor = sw * gfac * np.einsum("mnd,md->mn", dx, grid.nrm)
    A_tan = sw * gfac * np.einsum("mnd,md->mn", dx, grid.tng)
    A_dil = sw * gfac * np.einsum("mnd,md->mn", dx, grid.x)
    return A_val, A_nor, A_tan, A_dil


def interior_norm_matrix(grid, A_val, A_nor, A_tan, A_dil, E):
    """Quadratic form H with alpha^T H alpha ~= ||u||^2_{L2(Omega)} for
    u = sum alpha_n phi_n.  Valid because every basis column solves the
    Helmholtz equation at energy E inside the domain."""
    xn = np.einsum("md,md->m", grid.x, grid.nrm)[:, None]
    H = (E * (A_val * xn).T @ A_val
         - (A_nor * xn).T @ A_nor
         - (A_tan * xn).T @ A_tan
         + A_dil.T @ A_nor + A_nor.T @ A_dil) / (2.0 * E)
    return 0.5 * (H + H.T)


def sqrt_factor(H, eps_H=1e-12):
    """Truncated square root of a symmetric matrix.

    Eigenpairs with lambda_j < eps_H * lambda_1 are dropped (H is formally
    positive but assembled in floating point); returns (B, rank) with
    B = sqrt(Lambda) V^T on the kept pairs, so B^T B ~= H.
    """
    lam, V = np.linalg.eigh(H)
    lam = lam[::-1]
    V = V[:, ::-1]
    if lam[0] <= 0:
        raise DegenerateNormError("interior-norm matrix has no positive eigenvalue")
    keep = lam >= eps_H * lam[0]
    B = np.sqrt(lam[keep])[:, None] * V[:, keep].T
    return B, int(keep.sum())


def assemble_system(curve, M, N, tau, E, eps_H=1e-12):
    """One-shot assembly of the full tension system at energy E."""
    return SystemBuilder(curve, M, N, tau, eps_H=eps_H).system(E)


def point_source_sum(charges, alpha, E, points, block=65536):
    """u(p) = sum_n alpha_n Y0(sqrt(E) |p - y_n|) at interior points.

    Direct summation, blocked to bound memory; points must keep a positive
    distance from every charge (interior points always do)."""
    k = np.sqrt(E)
    points = np.asarray(points, dtype=float)
    out = np.empty(len(points))
    for lo in range(0, len(points), max(1, block // max(charges.N, 1))):
        hi = min(lo + max(1, block // max(charges.N, 1)), len(points))
        dx = points[lo:hi, None, :] - charges.y[None, :, :]
        dist = np.sqrt(np.einsum("pnd,pnd->pn", dx, dx))
        out[lo:hi] = bessel_y0(k * dist) @ alpha
    return out


class SystemBuilder:
    """Caches the energy-independent geometry so that assembling systems at
    many energies (a sweep, a minimum search) costs only the Bessel
    evaluations, the filter product, and the dense linear algebra."""

    def __init__(self, curve, M, N, tau, eps_H=1e-12):
        if M % 4:
            raise ValueError("M must be divisible by 4")
        if N > M:
            raise ValueError("N must not exceed M")
        self.curve = curve
        self.grid = build_grid(curve, M)
        self.charges = charge_points(curve, N, tau)
        self.eps_H = eps_H
        dx = self.grid.x[:, None, :] - self.charges.y[None, :, :]
        self._dist = np.sqrt(np.einsum("mnd,mnd->mn", dx, dx))
        if self._dist.min() < 1e-12:
            raise SingularKernelError("a node and a charge nearly coincide")
        inv = 1.0 / self._dist
        self._proj_nor = np.einsum("mnd,md->mn", dx, self.grid.nrm) * inv
        self._proj_tan = np.einsum("mnd,md->mn", dx, self.grid.tng) * inv
        self._proj_dil = np.einsum("mnd,md->mn", dx, self.grid.x) * inv
        self._sw = np.sqrt(self.grid.w)[:, None]

    def system(self, E):
        if not E > 0:
            raise ValueError("E must be positive")
        k = np.sqrt(E)
        h = 1.0 / k
        y1 = -k * bessel_y1(k * self._dist)
        A_val = self._sw * bessel_y0(k * self._dist)
        A_nor = self._sw * y1 * self._proj_nor
        A_tan = self._sw * y1 * self._proj_tan
        A_dil = self._sw * y1 * self._proj_dil
        F = build_filter_matrix(self.grid, h)
        A_w = F @ A_nor
        H = interior_norm_matrix(self.grid, A_val, A_nor, A_tan, A_dil, E)
        B, rank_H = sqrt_factor(H, self.eps_H)
        return TensionSystem(E=float(E), h=float(h), A_val=A_val, A_nor=A_nor,
                             A_tan=A_tan, A_dil=A_dil, F=F, A_w=A_w, H=H,
                             B=B, rank_H=rank_H)

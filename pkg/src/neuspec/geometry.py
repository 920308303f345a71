"""Star-shaped planar boundary curves and their discrete geometry.

A curve is given by a positive 2pi-periodic radius function r(theta); the
boundary is x(t) = (r(t) cos t, r(t) sin t), traversed counterclockwise.
Every radius formula used here is entire, so r and r' can be evaluated at
complex parameter values, which is how the exterior charge curve is produced.

Normals point outward.  The analysis behind the tension functional only uses
norms of the normal derivative, so orientation is free; outward keeps
x . n > 0 on star-shaped curves, which makes the interior-norm matrix built
downstream formally positive.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ChargePlacementError, InvalidCurveError

_VALIDATION_SAMPLES = 4096


class RadialCurve:
    """Boundary radius r(theta), either the cosine-wobble formula or a
    finite trigonometric series.

    Use the constructors :meth:`radial`, :meth:`trig` or :meth:`circle`.
    """

    __slots__ = ("kind", "_params")

    def __init__(self, kind, params):
        self.kind = kind
        self._params = params
        self._validate()

    # -- constructors -------------------------------------------------------

    @classmethod
    def radial(cls, a0, eps, k, b):
        """r(theta) = a0 + eps*cos(k*(theta + b*sin(theta))), k a positive int."""
        k = int(k)
        if k < 1:
            raise InvalidCurveError("k must be a positive integer")
        return cls("radial", (float(a0), float(eps), k, float(b)))

    @classmethod
    def trig(cls, cos_coeffs, sin_coeffs=()):
        """r(theta) = sum_j c_j cos(j theta) + sum_j d_j sin(j theta).

        ``cos_coeffs[0]`` is the constant term; ``sin_coeffs[j-1]`` multiplies
        sin(j theta).
        """
        c = np.atleast_1d(np.asarray(cos_coeffs, dtype=float))
        d = np.atleast_1d(np.asarray(sin_coeffs, dtype=float)) if len(sin_coeffs) else np.zeros(0)
        if c.size == 0:
            raise InvalidCurveError("need at least the constant cosine coefficient")
        return cls("trig", (c, d))

    @classmethod
    def circle(cls, radius=1.0):
        return cls.trig([float(radius)])

    # -- evaluation ----------------------------------------------------------

    def radius(self, theta):
        """r(theta); theta may be real or complex, scalar or array."""
        theta = np.asarray(theta)
        if self.kind == "radial":
            a0, eps, k, b = self._params
            return a0 + eps * np.cos(k * (theta + b * np.sin(theta)))
        c, d = self._params
        out = np.zeros_like(theta, dtype=np.result_type(theta, float))
        for j, cj in enumerate(c):
            out = out + cj * np.cos(j * theta)
        for j, dj in enumerate(d, start=1):
            out = out + dj * np.sin(j * theta)
        return out

    def radius_deriv(self, theta):
        """dr/dtheta, same domain as :meth:`radius`."""
        theta = np.asarray(theta)
        if self.kind == "radial":
            a0, eps, k, b = self._params
            return -eps * np.sin(k * (theta + b * np.sin(theta))) * k * (1.0 + b * np.cos(theta))
        c, d = self._params
        out = np.zeros_like(theta, dtype=np.result_type(theta, float))
        for j, cj in enumerate(c):
            if j:
                out = out - cj * j * np.sin(j * theta)
        for j, dj in enumerate(d, start=1):
            out = out + dj * j * np.cos(j * theta)
        return out

    def position(self, t):
        """Boundary point as a complex number r(t) e^{it}."""
        return self.radius(t) * np.exp(1j * np.asarray(t, dtype=complex))

    def velocity(self, t):
        """d/dt of :meth:`position`."""
        t = np.asarray(t, dtype=complex)
        return (self.radius_deriv(t) + 1j * self.radius(t)) * np.exp(1j * t)

    # -- internals -----------------------------------------------------------

    def _validate(self):
        th = 2 * np.pi * np.arange(_VALIDATION_SAMPLES) / _VALIDATION_SAMPLES
        r = self.radius(th)
        if not np.all(np.isfinite(r)) or np.min(r) <= 0.0:
            raise InvalidCurveError(
                f"radius must be positive; min sampled value {np.min(r):g}"
            )

    def __repr__(self):
        if self.kind == "radial":
            a0, eps, k, b = self._params
            return f"RadialCurve.radial(a0={a0}, eps={eps}, k={k}, b={b})"
        c, d = self._params
        return f"RadialCurve.trig({list(c)}, {list(d)})"


@dataclass(frozen=True)
class BoundaryGrid:
    """Periodic-trapezoid discretization of a boundary curve.

    Weights are w_m = 2pi |x'(t_m)| / M, so sum(w) reproduces the perimeter.
    ``s`` holds the spectrally computed arclength at the nodes.
    """

    M: int
    t: np.ndarray
    x: np.ndarray        # (M, 2) node coordinates
    speed: np.ndarray    # |x'(t_m)|
    w: np.ndarray        # quadrature weights (length units)
    nrm: np.ndarray      # (M, 2) outward unit normals
    tng: np.ndarray      # (M, 2) unit tangents, counterclockwise
    s: np.ndarray        # arclength at the nodes, s[0] = 0
    L: float             # perimeter


@dataclass(frozen=True)
class ChargeSet:
    """Exterior source points obtained by an imaginary shift of the
    boundary parametrization."""

    N: int
    tau: float
    y: np.ndarray        # (N, 2), all strictly exterior


@dataclass(frozen=True)
class InteriorGrid:
    """Rectangular raster over the curve's bounding box, masked to the interior."""

    nx: int
    xs: np.ndarray       # (nx,) grid abscissae
    ys: np.ndarray       # (nx,) grid ordinates
    inside: np.ndarray   # (nx, nx) bool, indexed [iy, ix]

    @property
    def points(self):
        """(K, 2) interior points, row-major over (iy, ix)."""
        iy, ix = np.nonzero(self.inside)
        return np.stack([self.xs[ix], self.ys[iy]], axis=1)

    @property
    def indices(self):
        """(K, 2) integer (ix, iy) pairs matching :attr:`points`."""
        iy, ix = np.nonzero(self.inside)
        return np.stack([ix, iy], axis=1)


def arclength_spectral(curve, M):
    """Arclength at the M grid nodes by integrating the trigonometric
    interpolant of the speed samples.

    The zero Fourier mode integrates to the linear term (L/2pi) t; each
    nonzero mode n contributes (c_n/(i n)) (e^{i n t} - 1).  The Nyquist mode
    integrates to zero at the nodes and is dropped.  Returns (s, L).
    """
    if M % 2:
        raise InvalidCurveError("M must be even")
    t = 2 * np.pi * np.arange(M) / M
    speed = np.abs(curve.velocity(t))
    c = np.fft.fft(speed) / M
    L = 2 * np.pi * c[0].real
    n = np.fft.fftfreq(M, d=1.0 / M)
    keep = (n != 0) & (np.abs(n) != M // 2)
    phase = np.exp(1j * np.outer(t, n[keep])) - 1.0
    s = c[0].real * t + (phase @ (c[keep] / (1j * n[keep]))).real
    return s, L


def build_grid(curve, M):
    """Periodic trapezoid grid with nodes x(2pi m / M), m = 0..M-1."""
    M = int(M)
    if M < 8 or M % 2:
        raise InvalidCurveError("M must be an even integer >= 8")
    t = 2 * np.pi * np.arange(M) / M
    r = curve.radius(t)
    if np.min(r) <= 0:
        raise InvalidCurveError("non-positive radius sample")
    z = r * np.exp(1j * t)
    zp = (curve.radius_deriv(t) + 1j * r) * np.exp(1j * t)
    speed = np.abs(zp)
    w = 2 * np.pi * speed / M
    tng_c = zp / speed
    nrm_c = -1j * tng_c          # rotate tangent by -pi/2: outward for ccw
    s, L = arclength_spectral(curve, M)
    as_xy = lambda v: np.stack([v.real, v.imag], axis=1)
    return BoundaryGrid(M=M, t=t, x=as_xy(z), speed=speed, w=w,
                        nrm=as_xy(nrm_c), tng=as_xy(tng_c), s=s, L=L)


def charge_points(curve, N, tau):
    """Source points y_n = x(2pi(n/N - i tau)), n = 0..N-1.

    ``tau`` is quoted in turns of the boundary parameter: the complex
    parameter shift is 2pi*tau, so on the unit circle the points sit at
    radius e^{2pi tau}.  Every point is checked to be strictly exterior.
    """
    N = int(N)
    if N < 1:
        raise InvalidCurveError("N must be positive")
    if not tau > 0:
        raise InvalidCurveError("tau must be positive")
    theta = 2 * np.pi * (np.arange(N) / N - 1j * tau)
    with np.errstate(over="ignore", invalid="ignore"):
        # overflow for absurd tau is caught by the finiteness check below
        z = curve.radius(theta) * np.exp(1j * theta)
    y = np.stack([z.real, z.imag], axis=1)
    for idx in range(N):
        if contains(curve, y[idx]) or not np.all(np.isfinite(y[idx])):
            raise ChargePlacementError(idx, tuple(y[idx]))
        # boundary itself is excluded by the strict inequality in contains();
        # also reject exact boundary hits
        ang = np.arctan2(y[idx, 1], y[idx, 0])
        if np.hypot(*y[idx]) <= curve.radius(ang):
            raise ChargePlacementError(idx, tuple(y[idx]))
    return ChargeSet(N=N, tau=float(tau), y=y)


def contains(curve, p):
    """True iff p lies strictly inside the curve."""
    p = np.asarray(p, dtype=float)
    return bool(np.hypot(p[0], p[1]) < curve.radius(np.arctan2(p[1], p[0])))


def interior_grid(curve, nx, box_samples=1024):
    """nx-by-nx uniform raster over the boundary's bounding box, masked by
    :func:`contains`.  Boundary nodes are extremal for star-shaped curves, so
    the box is the min/max of the nodes with no padding."""
    nx = int(nx)
    if nx < 2:
        raise InvalidCurveError("nx must be >= 2")
    t = 2 * np.pi * np.arange(box_samples) / box_samples
    z = curve.position(t)
    xs = np.linspace(z.real.min(), z.real.max(), nx)
    ys = np.linspace(z.imag.min(), z.imag.max(), nx)
    X, Y = np.meshgrid(xs, ys)
    rad = np.hypot(X, Y)
    ang = np.arctan2(Y, X)
    inside = rad < curve.radius(ang)
    return InteriorGrid(nx=nx, xs=xs, ys=ys, inside=inside)


def area(curve, samples=2048):
    """Enclosed area, (1/2) integral of r^2 by the periodic trapezoid rule."""
    samples = max(int(samples), 2048)
    th = 2 * np.pi * np.arange(samples) / samples
    r = curve.radius(th)
    return 0.5 * np.mean(r * r) * 2 * np.pi

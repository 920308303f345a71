"""Energy sweeps, minimum localization, and certified inclusion bounds.

The minimum tension as a function of energy looks like a slightly rounded
absolute-value graph near each Neumann eigenvalue, so its square is locally
parabolic: the search keeps a bracketing triple of t^2(E) ordinates, jumps to
the fitted parabola's vertex, and falls back to golden-section steps for
non-convex configurations.  Located minima convert to bounds:

    eps_new  = C_est * t_min          (C_est = 1.6)
    eps_clas = C_enn * E * t_clas     (C_enn = 7.4)

both bounding the distance from E to the Neumann spectrum in energy units.
"""

import math
from dataclasses import dataclass

import numpy as np

from .assembly import SystemBuilder
from .errors import ConvergenceFailureError, IllSeparatedError, NeuspecError
from .geometry import area, arclength_spectral
from .tension import classical_tension, min_tension

C_EST_DEFAULT = 1.6
C_ENNENBACH_DEFAULT = 7.4

_GOLDEN = 0.5 * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class SweepSample:
    sqrtE: float
    t_min: float
    rank_eps: int
    c_min: float
    error: str | None = None

    @property
    def ok(self):
        return self.error is None


@dataclass(frozen=True)
class EigenResult:
    sqrtE: float
    E: float
    t_min: float
    t_classical: float
    alpha: np.ndarray
    eps_new: float
    eps_clas: float
    n_evals: int
    weyl_index: float
    slope: float
    converged: bool = True


class TensionSolver:
    """Minimum-tension evaluator at fixed discretization parameters."""

    def __init__(self, curve, M, N, tau, eps=1e-14, eps_H=1e-12):
        self.builder = SystemBuilder(curve, M, N, tau, eps_H=eps_H)
        self.curve = curve
        self.eps = eps
        self.last_system = None

    def evaluate(self, E):
        """TensionEval at energy E (coefficients normalized to unit interior
        norm); keeps the assembled system available as ``last_system``."""
        system = self.builder.system(E)
        self.last_system = system
        return min_tension(system.A_w, system.B, eps=self.eps, energy=E)

    def classical(self, E, alpha=None):
        """Classical (unweighted) tension at E, by default for the minimizer."""
        if alpha is None:
            alpha = self.evaluate(E).alpha
        system = self.last_system
        if system is None or system.E != E:
            system = self.builder.system(E)
            self.last_system = system
        return classical_tension(alpha, system.A_nor, system.B)


def sweep(curve, M, N, tau, sqrtE_min, sqrtE_max, steps, eps=1e-14):
    """Evaluate the minimum tension at ``steps`` equispaced frequencies.

    Failures at individual energies are recorded as samples with an error
    message instead of aborting the whole sweep.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not 0 < sqrtE_min < sqrtE_max:
        raise ValueError("need 0 < sqrtE_min < sqrtE_max")
    solver = TensionSolver(curve, M, N, tau, eps=eps)
    out = []
    for f in np.linspace(sqrtE_min, sqrtE_max, steps):
        try:
            ev = solver.evaluate(f * f)
            out.append(SweepSample(sqrtE=float(f), t_min=ev.t_min,
                                   rank_eps=ev.rank_eps, c_min=ev.c_min))
        except NeuspecError as exc:
            out.append(SweepSample(sqrtE=float(f), t_min=float("nan"),
                                   rank_eps=0, c_min=float("nan"),
                                   error=str(exc)))
    return out


def parabolic_min(fn, e_lo, e_hi, tol=1e-13, budget=60):
    """Minimize a locally parabolic function on [e_lo, e_hi].

    ``fn`` maps an abscissa to the value being minimized (here: t^2 at an
    energy).  Starting from the endpoints and the midpoint, a bracketing
    triple is established by golden steps toward the lower side, then
    refined: fit a parabola through the triple, evaluate at its vertex, and
    update the bracket so the middle point stays the running minimum, with a
    golden-section step into the wider flank whenever the fit is non-convex
    or the vertex escapes.  Stops when the vertex update falls below ``tol``
    times the bracket middle.  Returns (e_best, y_best, n_evals, history).
    """
    if not e_lo < e_hi:
        raise ValueError("empty bracket")
    cache = {}

    def f(e):
        if e not in cache:
            cache[e] = fn(e)
        return cache[e]

    def finish():
        e_best = min(cache, key=cache.get)
        return e_best, cache[e_best], len(cache), cache

    def exhausted():
        e_best = min(cache, key=cache.get)
        return ConvergenceFailureError(
            f"evaluation budget {budget} exhausted",
            best=(e_best, cache[e_best], len(cache)))

    a, b, c = e_lo, 0.5 * (e_lo + e_hi), e_hi
    for e in (a, b, c):
        f(e)
    # establish a bracketing triple: the middle must not exceed either end
    # (if the minimum sits at a bracket endpoint this grinds toward it and
    # finish() returns the endpoint itself)
    while f(b) > min(f(a), f(c)):
        if len(cache) >= budget:
            raise exhausted()
        if f(a) < f(c):
            a, b, c = a, a + _GOLDEN * (b - a), b
        else:
            a, b, c = b, c - _GOLDEN * (c - b), c
        if c - a < tol * abs(b):
            return finish()
        f(b)
    while len(cache) < budget:
        ya, yb, yc = f(a), f(b), f(c)
        dab = (yb - ya) / (b - a)
        dbc = (yc - yb) / (c - b)
        curv = (dbc - dab) / (c - a)
        v = 0.5 * (a + b) - dab / (2.0 * curv) if curv > 0 else None
        if v is not None and abs(v - b) < tol * abs(b):
            return finish()
        if v is None or not a < v < c or v in cache:
            # non-convex fit, vertex escaping, or a repeated proposal:
            # golden step into the wider flank of the bracket middle
            v = b - _GOLDEN * (b - a) if (b - a) > (c - b) else b + _GOLDEN * (c - b)
            if v in cache or not a < v < c:
                return finish()
        yv = f(v)
        if v < b:
            a, b, c = (a, v, b) if yv < yb else (v, b, c)
        else:
            a, b, c = (b, v, c) if yv < yb else (a, b, v)
    raise exhausted()


def inclusion_bounds(E, t_min, t_clas, c_est=C_EST_DEFAULT,
                     c_ennenbach=C_ENNENBACH_DEFAULT):
    """Certified distances to the Neumann spectrum, new and classical."""
    if t_min < 0 or t_clas < 0:
        raise ValueError("tensions must be nonnegative")
    return c_est * t_min, c_ennenbach * E * t_clas


def mode_error_bound(t_min, E, E_star, c_est=C_EST_DEFAULT):
    """Bound on the relative distance of the trial function from the nearest
    eigenspace, C t / |E - E_star| with E_star the next-closest eigenvalue.
    The constant reuses C_est; no sharper explicit value is available."""
    gap = abs(E - E_star)
    if gap < 1e-12 * abs(E):
        raise IllSeparatedError("E and E_star are numerically indistinguishable")
    return c_est * t_min / gap


def weyl_index(curve, E):
    """Two-term eigenvalue-count estimate |Omega| E / 4pi + |dOmega| sqrt(E) / 4pi
    (Neumann sign: boundary term positive)."""
    if not E > 0:
        raise ValueError("E must be positive")
    _, L = arclength_spectral(curve, 2048)
    return area(curve) * E / (4 * np.pi) + L * np.sqrt(E) / (4 * np.pi)


def localize_minimum(curve, M, N, tau, bracket, tol=1e-13, eps=1e-14,
                     eps_H=1e-12, budget=60, c_est=C_EST_DEFAULT,
                     c_ennenbach=C_ENNENBACH_DEFAULT, solver=None,
                     slope_offset=None):
    """Locate one tension minimum inside a frequency bracket and certify it.

    ``bracket`` is (sqrtE_lo, sqrtE_hi) and should contain exactly one local
    minimum (use a sweep to isolate one).  The search runs in energy E with
    the parabola fit applied to t^2.  After convergence the slope of t vs E
    is measured from two flanking samples, and the inclusion bounds are
    attached.  If the evaluation budget runs out the best iterate is still
    returned, marked ``converged=False``.
    """
    f_lo, f_hi = bracket
    if not 0 < f_lo < f_hi:
        raise ValueError("bracket must satisfy 0 < lo < hi")
    if solver is None:
        solver = TensionSolver(curve, M, N, tau, eps=eps, eps_H=eps_H)
    evals = {}

    def tension_sq(E):
        ev = solver.evaluate(E)
        evals[E] = ev
        return ev.t_min ** 2

    try:
        E_star, _, n_evals, _ = parabolic_min(tension_sq, f_lo ** 2, f_hi ** 2,
                                              tol=tol, budget=budget)
        converged = True
    except ConvergenceFailureError as exc:
        E_star, _, n_evals = exc.best
        converged = False
    best = evals[E_star]
    t_clas = solver.classical(E_star, best.alpha)

    dE = slope_offset if slope_offset is not None else 10.0 * max(tol, 1e-13) * E_star
    # flanking samples for the slope; kept well above the tension floor
    t_plus = solver.evaluate(E_star + dE).t_min
    t_minus = solver.evaluate(E_star - dE).t_min
    slope = (t_plus + t_minus - 2.0 * best.t_min) / (2.0 * dE)

    eps_new, eps_clas = inclusion_bounds(E_star, best.t_min, t_clas,
                                         c_est=c_est, c_ennenbach=c_ennenbach)
    return EigenResult(sqrtE=float(np.sqrt(E_star)), E=float(E_star),
                       t_min=best.t_min, t_classical=float(t_clas),
                       alpha=best.alpha, eps_new=float(eps_new),
                       eps_clas=float(eps_clas), n_evals=n_evals,
                       weyl_index=float(weyl_index(curve, E_star)),
                       slope=float(slope), converged=converged)

import numpy as np
import pytest

from neuspec import (TensionSolver, inclusion_bounds, jnprime_zero,
                     jnprime_zeros_upto, localize_minimum, mode_error_bound,
                     parabolic_min, sweep, weyl_index)
from neuspec.errors import IllSeparatedError

MU_30_1 = 32.534223556790142


class TestParabolicMin:
    def test_exact_parabola_converges_in_four_evals(self):
        calls = []

        def f(E):
            calls.append(E)
            return (E - 5.0) ** 2 + 1e-6

        e, y, n, _ = parabolic_min(f, 3.0, 8.0, tol=1e-13)
        assert abs(e - 5.0) < 1e-9
        assert n <= 4
        assert len(calls) == n

    def test_budget_exhaustion_raises_with_best(self):
        from neuspec.errors import ConvergenceFailureError
        # noisy function defeats the vertex stopping rule
        rng = np.random.default_rng(7)

        def f(E):
            return abs(E - 5.0) + rng.uniform(0, 1e-3)

        with pytest.raises(ConvergenceFailureError) as info:
            parabolic_min(f, 3.0, 8.0, tol=1e-16, budget=12)
        e_best, y_best, n = info.value.best
        assert 3.0 <= e_best <= 8.0
        assert n == 12

    def test_golden_fallback_on_concave_start(self):
        # concave bump with a sharp minimum near the right edge
        f = lambda E: -((E - 5.0) ** 2) + 100 * max(E - 7.6, 0.0) ** 2
        e, y, n, _ = parabolic_min(f, 3.0, 8.0, tol=1e-10, budget=40)
        assert 3.0 <= e <= 8.0


class TestSweep:
    def test_disc_sweep_brackets_reference_zero(self, disc):
        samples = sweep(disc, 256, 128, 0.1, 32.4, 32.6, 21)
        assert all(s.ok for s in samples)
        assert all(s.t_min >= 0 for s in samples)
        best = min(samples, key=lambda s: s.t_min)
        step = (32.6 - 32.4) / 20
        assert abs(best.sqrtE - MU_30_1) <= step

    def test_deterministic(self, disc):
        a = sweep(disc, 64, 32, 0.1, 3.0, 3.5, 5)
        b = sweep(disc, 64, 32, 0.1, 3.0, 3.5, 5)
        for s1, s2 in zip(a, b):
            assert s1.t_min == s2.t_min
            assert s1.c_min == s2.c_min

    def test_bad_arguments(self, disc):
        with pytest.raises(ValueError):
            sweep(disc, 64, 32, 0.1, 3.0, 3.5, 1)
        with pytest.raises(ValueError):
            sweep(disc, 64, 32, 0.1, 3.5, 3.0, 5)


class TestLocalizeMinimum:
    def test_disc_reference_zero_to_1e10(self, disc):
        res = localize_minimum(disc, 256, 128, 0.1, (32.52, 32.55))
        assert res.converged
        assert abs(res.sqrtE - MU_30_1) < 1e-10
        assert res.n_evals >= 3
        assert res.t_min <= 1e-9
        assert res.eps_new == pytest.approx(1.6 * res.t_min, rel=1e-14)
        # certified inclusion holds against the independent zero
        assert abs(res.E - MU_30_1 ** 2) <= res.eps_new

    def test_wobbly_bracket_regression(self, wobbly):
        # self-derived reference eigenfrequency of this domain (frozen from a
        # converged run; certified there by eps_new/E ~ 2.4e-15)
        res = localize_minimum(wobbly, 700, 350, 0.025, (40.52, 40.54))
        assert res.converged
        assert res.n_evals <= 20
        assert abs(res.sqrtE - 40.530115494218926) < 1e-8
        assert res.eps_new / res.E < 1e-12
        assert 0.5 <= abs(res.slope) <= 0.8

    def test_slope_two_sided_agreement(self, disc):
        res = localize_minimum(disc, 256, 128, 0.1, (32.52, 32.55))
        solver = TensionSolver(disc, 256, 128, 0.1)
        dE = 1e-6 * res.E
        t0 = solver.evaluate(res.E).t_min
        left = (solver.evaluate(res.E - dE).t_min - t0) / dE
        right = (solver.evaluate(res.E + dE).t_min - t0) / dE
        assert abs(abs(left) - abs(right)) <= 0.15 * max(abs(left), abs(right))

    def test_returned_min_not_above_any_sample(self, disc):
        solver = TensionSolver(disc, 256, 128, 0.1)
        seen = []

        def f(E):
            t2 = solver.evaluate(E).t_min ** 2
            seen.append(t2)
            return t2

        e, y, n, cache = parabolic_min(f, 32.52 ** 2, 32.55 ** 2, tol=1e-13)
        assert y <= min(seen) + 1e-15


class TestBounds:
    def test_inclusion_trivials(self):
        eps_new, eps_clas = inclusion_bounds(100.0, 0.0, 1e-3)
        assert eps_new == 0.0
        assert eps_clas == pytest.approx(7.4 * 100.0 * 1e-3)

    def test_linearity_in_tension(self):
        a, _ = inclusion_bounds(10.0, 2e-5, 0.0)
        b, _ = inclusion_bounds(10.0, 4e-5, 0.0)
        assert b == pytest.approx(2 * a, rel=1e-15)

    def test_constants_overridable(self):
        eps_new, eps_clas = inclusion_bounds(2.0, 1.0, 1.0, c_est=2.5, c_ennenbach=3.0)
        assert eps_new == 2.5
        assert eps_clas == 6.0

    def test_mode_error_bound(self):
        E1 = jnprime_zero(30, 1) ** 2
        E2 = jnprime_zero(30, 2) ** 2
        val = mode_error_bound(1e-10, E1, E2)
        assert 0 < val < 1e-10
        assert mode_error_bound(0.0, E1, E2) == 0.0
        with pytest.raises(IllSeparatedError):
            mode_error_bound(1e-10, E1, E1 * (1 + 1e-15))

    def test_monotone_in_gap(self):
        assert mode_error_bound(1e-8, 100.0, 101.0) > mode_error_bound(1e-8, 100.0, 150.0)


class TestWeylIndex:
    def test_small_energy(self, disc):
        assert weyl_index(disc, 1e-6) < 1e-3

    def test_disc_low_mode_vs_enumeration(self, disc):
        # count disc Neumann eigenvalues below E (with multiplicity, plus the
        # zero eigenvalue) and compare with the two-term estimate
        mu01 = jnprime_zero(0, 1)
        E = mu01 ** 2
        count = 1  # eigenvalue 0
        for n in range(0, 10):
            for mu in jnprime_zeros_upto(n, mu01 - 1e-9):
                count += 1 if n == 0 else 2
        est = weyl_index(disc, E)
        assert abs(est - count) <= 1.0

    def test_wobbly_reference_index(self, wobbly):
        est = weyl_index(wobbly, 405.003269518228 ** 2)
        assert abs(est - 42612) / 42612 < 0.015

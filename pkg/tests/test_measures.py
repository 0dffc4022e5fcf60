import math

import numpy as np
import pytest

from hamcut.measures import (
    BallMixture,
    GridDensity,
    MeasureModel,
    ball_cap_fraction,
    box_halfspace_fraction,
    distance_to_target_segment,
    eval_f,
    in_truncated_target,
    solve_hamburger,
    target_spec,
    unit_sphere_param,
    verify_measure_cut,
)

from conftest import random_balanced_ball_model

SEGMENT_FRACTION = (math.pi / 3 - math.sqrt(3) / 4) / math.pi


def unit_disc_model():
    ball = BallMixture(np.array([[0.0, 0.0]]), np.array([1.0]), 1.0)
    empty = BallMixture(np.zeros((0, 2)), np.zeros(0), 1.0)
    return MeasureModel(2, (ball, empty, empty)).normalized()


def standard_simplex_model(radius=0.01):
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    return MeasureModel(
        2, tuple(BallMixture([verts[i]], [1.0], radius) for i in range(3))
    )


class TestBallCap:
    def test_half(self):
        assert ball_cap_fraction(0.0, 2) == pytest.approx(0.5)

    def test_circular_segment(self):
        assert 1.0 - ball_cap_fraction(0.5, 2) == pytest.approx(SEGMENT_FRACTION, abs=1e-12)

    def test_clamps(self):
        assert ball_cap_fraction(1.5, 3) == 1.0
        assert ball_cap_fraction(-1.5, 3) == 0.0

    def test_complement(self):
        a = np.linspace(-0.99, 0.99, 21)
        s = ball_cap_fraction(a, 3) + ball_cap_fraction(-a, 3)
        assert np.max(np.abs(s - 1.0)) < 1e-12


class TestBoxHalfspace:
    def test_exact_cases(self):
        assert box_halfspace_fraction([0, 0], [1, 1], [1, 0], 0.5) == pytest.approx(0.5)
        assert box_halfspace_fraction([0, 0], [1, 1], [1, 1], 1.0) == pytest.approx(0.5)
        assert box_halfspace_fraction([0, 0, 0], [1, 1, 1], [1, 1, 1], 1.5) == pytest.approx(0.5)
        assert box_halfspace_fraction([0, 0], [1, 1], [1, 1], 0.5) == pytest.approx(0.125)
        assert box_halfspace_fraction([0, 0], [1, 1], [-1, 0], -0.25) == pytest.approx(0.75)
        assert box_halfspace_fraction([0, 0], [1, 1], [1, 0], 2.0) == 1.0
        assert box_halfspace_fraction([0, 0], [1, 1], [1, 0], -1.0) == 0.0

    def test_against_monte_carlo(self):
        rng = np.random.Generator(np.random.PCG64(5))
        for _ in range(20):
            d = int(rng.integers(2, 4))
            lo = rng.uniform(-2, 2, d)
            widths = rng.uniform(0.5, 2.0, d)
            normal = rng.standard_normal(d)
            if rng.random() < 0.3:
                normal[int(rng.integers(0, d))] = 0.0
            if not normal.any():
                continue
            offset = float(normal @ (lo + widths * rng.random(d)))
            exact = box_halfspace_fraction(lo, widths, normal, offset)
            pts = lo + widths * rng.random((200_000, d))
            mc = float((pts @ normal < offset).mean())
            assert abs(exact - mc) < 0.005


class TestEvalF:
    def test_pole_conventions(self):
        m = unit_disc_model()
        omega = m.total_masses()
        assert np.allclose(eval_f(m, np.array([1.0, 0.0, 0.0])), omega)
        assert np.allclose(eval_f(m, np.array([-1.0, 0.0, 0.0])), 0.0)

    def test_symmetric_halving(self):
        m = unit_disc_model()
        y = eval_f(m, unit_sphere_param([0.0, 1.0, 0.0]))
        assert y[0] == pytest.approx(0.5)

    def test_circular_segment(self):
        m = unit_disc_model()
        # H- = {-x < -1/2} = {x > 1/2}.
        y = eval_f(m, unit_sphere_param([-0.5, -1.0, 0.0]))
        assert y[0] == pytest.approx(SEGMENT_FRACTION, abs=1e-12)

    def test_antipodality_random_models(self):
        rng = np.random.Generator(np.random.PCG64(7))
        for trial in range(10):
            d = 2 if trial % 2 == 0 else 3
            m = random_balanced_ball_model(d, rng)
            u = unit_sphere_param(rng.standard_normal(d + 1))
            total = m.total_masses()
            err = np.abs(eval_f(m, u) + eval_f(m, -u) - total).max()
            assert err <= 1e-9

    def test_monotone_in_offset(self):
        rng = np.random.Generator(np.random.PCG64(9))
        grid = GridDensity([0.0, 0.0], 0.5, rng.uniform(0, 1, (3, 3)))
        ball = BallMixture([[0.5, 0.5]], [1.0], 0.4)
        empty = BallMixture(np.zeros((0, 2)), np.zeros(0), 1.0)
        m = MeasureModel(2, (grid, ball, empty)).normalized()
        normal = np.array([0.8, -0.6])
        prev = None
        for off in np.linspace(-3, 3, 41):
            u = unit_sphere_param(np.concatenate(([off], normal)))
            y = eval_f(m, u)
            if prev is not None:
                assert np.all(y >= prev - 1e-12)
            prev = y

    def test_sphere_param_validated(self):
        m = unit_disc_model()
        with pytest.raises(ValueError):
            eval_f(m, np.array([1.0, 1.0, 0.0]))
        with pytest.raises(ValueError):
            eval_f(m, np.array([1.0, 0.0]))

    def test_grid_rejects_high_dimension(self):
        with pytest.raises(ValueError):
            GridDensity([0.0] * 4, 1.0, np.zeros((2, 2, 2, 2)))


class TestTargetSpec:
    def test_uniform_thirds(self):
        spec = target_spec([1 / 3, 1 / 3, 1 / 3], 2)
        assert spec.t == pytest.approx(1 / 6)
        assert spec.a == pytest.approx([1 / 6, 1 / 6, 0.0])
        assert spec.c == pytest.approx([1 / 6, 1 / 6, 1 / 3])
        assert spec.bound == pytest.approx(1 / 3)

    def test_decimal_masses(self):
        spec = target_spec([0.40, 0.35, 0.25], 2)
        assert spec.t == pytest.approx(0.25)
        assert spec.a == pytest.approx([0.25, 0.25, 0.0])
        assert spec.c == pytest.approx([0.15, 0.10, 0.25])
        assert spec.order == (0, 1, 2)

    def test_uniform_quarters_3d(self):
        spec = target_spec([0.25] * 4, 3)
        assert spec.t == pytest.approx(1 / 12)
        assert spec.bound == pytest.approx(0.25)

    def test_sorting_permutation_recorded(self):
        spec = target_spec([0.25, 0.40, 0.35], 2)
        assert spec.order == (1, 2, 0)
        assert spec.sort(np.array([0.25, 0.40, 0.35])) == pytest.approx([0.40, 0.35, 0.25])

    def test_unbalanced_rejected(self):
        with pytest.raises(ValueError):
            target_spec([0.6, 0.3, 0.1], 2)

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            target_spec([0.4, 0.4, 0.4], 2)

    def test_algebra_random(self):
        rng = np.random.Generator(np.random.PCG64(21))
        for _ in range(500):
            d = int(rng.integers(2, 6))
            while True:
                omega = rng.dirichlet(np.full(d + 1, 3.0))
                if omega.max() <= 1.0 / d:
                    break
            spec = target_spec(omega, d)
            assert np.array_equal(spec.a + spec.c, 2.0 * spec.b)
            w = spec.sort(spec.omega)
            assert np.all(spec.a >= -1e-15) and np.all(spec.a <= w + 1e-12)
            assert np.all(spec.c >= -1e-12) and np.all(spec.c <= w + 1e-12)
            assert in_truncated_target(_unsort(spec, spec.a), spec, 1e-12)
            assert in_truncated_target(_unsort(spec, spec.c), spec, 1e-12)
            assert spec.bound >= 1.0 / (d + 1) - 1e-12
            # Segment totals: sum(a) = d*t <= 1 - d*t = sum(c).
            assert spec.a.sum() == pytest.approx(d * spec.t, abs=1e-12)
            assert spec.c.sum() == pytest.approx(1.0 - d * spec.t, abs=1e-12)
            assert d * spec.t <= 1.0 - d * spec.t + 1e-12


def _unsort(spec, y_sorted):
    y = np.empty_like(y_sorted)
    y[list(spec.order)] = y_sorted
    return y


class TestInTruncatedTarget:
    def test_center_inside(self):
        spec = target_spec([1 / 3, 1 / 3, 1 / 3], 2)
        assert in_truncated_target(spec.omega / 2.0, spec, 1e-12)

    def test_endpoint_a_inside(self):
        spec = target_spec([1 / 3, 1 / 3, 1 / 3], 2)
        assert in_truncated_target(_unsort(spec, spec.a), spec, 1e-12)
        assert in_truncated_target(_unsort(spec, spec.c), spec, 1e-12)

    def test_unbalanced_point_outside(self):
        spec = target_spec([1 / 3, 1 / 3, 1 / 3], 2)
        assert not in_truncated_target(np.array([1 / 3, 0.0, 0.0]), spec, 1e-9)

    def test_total_mass_window(self):
        spec = target_spec([1 / 3, 1 / 3, 1 / 3], 2)
        assert not in_truncated_target(np.array([0.05, 0.05, 0.05]), spec, 1e-9)


class TestSolver:
    def test_concentric_discs(self):
        m = MeasureModel(2, tuple(BallMixture([[0.0, 0.0]], [1.0], 1.0) for _ in range(3)))
        sol = solve_hamburger(m, tol=1e-6)
        assert sol.residual <= 1e-10
        assert sol.masses == pytest.approx([1 / 6, 1 / 6, 1 / 6], abs=1e-9)
        assert verify_measure_cut(m, sol.u, 1e-6).ok

    def test_tightness_model(self):
        m = standard_simplex_model()
        sol = solve_hamburger(m, tol=1e-6)
        assert sol.residual <= 1e-6
        total = float(sol.masses.sum())
        min_side = min(total, 1.0 - total)
        assert min_side >= 1 / 3 - 1e-6
        assert min_side <= 1 / 3 + 0.05

    def test_grid_ham_sandwich(self):
        rng = np.random.Generator(np.random.PCG64(2))
        w2 = rng.uniform(0.1, 1.0, (4, 4))
        g1 = GridDensity([0.0, 0.0], 0.25, np.full((4, 4), 1.0 / 16))
        g2 = GridDensity([2.0, 0.5], 0.25, w2 / w2.sum())
        zero = GridDensity([0.0, 0.0], 1.0, np.zeros((1, 1)))
        m = MeasureModel(2, (g1, g2, zero))
        sol = solve_hamburger(m, tol=1e-6)
        omega = m.normalized().total_masses()
        assert sol.residual <= 1e-6
        assert np.abs(sol.masses - omega / 2.0).max() <= 1e-6

    def test_random_models_verified(self):
        rng = np.random.Generator(np.random.PCG64(31))
        for trial in range(6):
            d = 2 if trial % 2 == 0 else 3
            m = random_balanced_ball_model(d, rng)
            sol = solve_hamburger(m, tol=1e-6)
            assert sol.residual <= 1e-6
            assert distance_to_target_segment(sol.masses, sol.target) <= 1e-6
            report = verify_measure_cut(m, sol.u, 1e-6, mc_samples=20_000, mc_seed=trial)
            assert report.ok

    def test_deterministic(self):
        rng = np.random.Generator(np.random.PCG64(33))
        m = random_balanced_ball_model(2, rng)
        s1 = solve_hamburger(m, tol=1e-6)
        s2 = solve_hamburger(m, tol=1e-6)
        assert np.array_equal(s1.u, s2.u)

    def test_unbalanced_model_rejected(self):
        big = BallMixture([[0.0, 0.0]], [10.0], 0.5)
        small = BallMixture([[1.0, 1.0]], [1.0], 0.5)
        m = MeasureModel(2, (big, small, small.scaled(1.0)))
        with pytest.raises(ValueError):
            solve_hamburger(m)

    def test_solution_unpacks_like_tuple(self):
        m = MeasureModel(2, tuple(BallMixture([[0.0, 0.0]], [1.0], 1.0) for _ in range(3)))
        u, masses, residual = solve_hamburger(m, tol=1e-6)
        assert u.shape == (3,) and masses.shape == (3,) and residual >= 0.0


class TestVerifyMeasureCut:
    def test_all_mass_one_side_fails_bound(self):
        m = standard_simplex_model()
        # Hyperplane far away: everything in H-.
        u = unit_sphere_param([10.0, 1.0, 0.0])
        report = verify_measure_cut(m, u, 1e-6, mc_samples=0)
        assert report.antipodal_ok
        assert not report.bound_plus_ok
        assert not report.ok

    def test_antipodal_identity_random_u(self):
        m = standard_simplex_model()
        rng = np.random.Generator(np.random.PCG64(4))
        for _ in range(5):
            u = unit_sphere_param(rng.standard_normal(3))
            report = verify_measure_cut(m, u, 1e-6, mc_samples=0)
            assert report.antipodal_ok

    def test_monte_carlo_cross_check_runs(self):
        m = unit_disc_model()
        u = unit_sphere_param([0.0, 1.0, 0.0])
        report = verify_measure_cut(m, u, 1e-6, mc_samples=20_000)
        assert report.mc_ok
        assert report.mc_detail.algorithm == "pcg64"

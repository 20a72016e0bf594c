import unittest
import sys
import os

import numpy as np
from scipy import constants

# Add the src directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from common import DomainError, UsageError
from relaxation_model import BathParams, SystemParams, build_liouvillian, thermal_state
from spectral_analysis import eigendecompose, population_generator
from spin_algebra import conjugate, rotation_pulse
from dynamics import (
    Trajectory,
    analytic_trajectory,
    far_state,
    far_state_populations,
    near_state,
    near_state_genuine,
    populations,
    propagate,
    theta_crossing_time,
    theta_state_populations,
    time_grid,
)
from metrics_mpemba import (
    classify,
    detect_crossing,
    free_energy_gap,
    metric_curve,
    metric_function,
    relative_entropy,
    trace_distance,
)

EPSILON = 1e-5
TAU_C = 1e-3


def random_state(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    sigma = z @ z.conj().T
    return 0.2 * np.eye(4) / 4 + 0.8 * sigma / np.trace(sigma)


def log_hermitian(rho: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh(rho)
    return vectors @ np.diag(np.log(values)) @ vectors.conj().T


class TestDistances(unittest.TestCase):

    def test_trace_distance_values(self):
        """Test orthogonal pure states are at distance 1 and diagonal states at half the L1 gap"""
        a = np.diag([1.0, 0, 0, 0])
        b = np.diag([0, 1.0, 0, 0])
        self.assertAlmostEqual(trace_distance(a, b), 1.0)
        self.assertAlmostEqual(trace_distance(a, a), 0.0)
        p = np.diag([0.4, 0.3, 0.2, 0.1])
        q = np.diag([0.25, 0.25, 0.25, 0.25])
        self.assertAlmostEqual(trace_distance(p, q), 0.5 * (0.15 + 0.05 + 0.05 + 0.15))

    def test_trace_distance_properties(self):
        """Test symmetry, the triangle inequality and unitary invariance"""
        rng = np.random.default_rng(21)
        for _ in range(20):
            a, b, c = (random_state(rng) for _ in range(3))
            self.assertAlmostEqual(trace_distance(a, b), trace_distance(b, a), places=14)
            self.assertLessEqual(
                trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-12
            )
            u = rotation_pulse(rng.uniform(0, np.pi), "y", 1) @ rotation_pulse(
                rng.uniform(0, np.pi), "x", "both"
            )
            self.assertAlmostEqual(
                trace_distance(conjugate(u, a), conjugate(u, b)),
                trace_distance(a, b),
                places=12,
            )

    def test_relative_entropy_matches_logarithms(self):
        """Test d(A||B) = tr A (log A - log B) on non-commuting states"""
        rng = np.random.default_rng(9)
        for _ in range(10):
            a, b = random_state(rng), random_state(rng)
            expected = np.trace(a @ (log_hermitian(a) - log_hermitian(b))).real
            self.assertAlmostEqual(relative_entropy(a, b), expected, places=10)
            self.assertGreaterEqual(relative_entropy(a, b), 0.0)

    def test_relative_entropy_edge_cases(self):
        """Test a rank-deficient first state and a singular reference"""
        half = np.diag([0.5, 0.5, 0.0, 0.0])
        self.assertAlmostEqual(relative_entropy(half, np.eye(4) / 4), np.log(2), places=12)
        self.assertAlmostEqual(relative_entropy(half, half), 0.0, places=12)
        with self.assertRaises(DomainError):
            relative_entropy(np.eye(4) / 4, half)

    def test_free_energy_gap(self):
        """Test the gap is k_B T times the relative entropy"""
        a, b = np.diag([0.4, 0.3, 0.2, 0.1]), np.eye(4) / 4
        self.assertAlmostEqual(
            free_energy_gap(a, b, 300.0) / (constants.k * 300.0), relative_entropy(a, b)
        )
        with self.assertRaises(DomainError):
            free_energy_gap(a, b, -1.0)

    def test_metric_function(self):
        """Test metric lookup by name"""
        self.assertIs(metric_function("trace_distance"), trace_distance)
        self.assertIs(metric_function("relative_entropy"), relative_entropy)
        with self.assertRaises(UsageError):
            metric_function("fidelity")
        with self.assertRaises(UsageError):
            trace_distance(np.eye(4), np.eye(2))


class TestCrossing(unittest.TestCase):

    def setUp(self):
        self.system = SystemParams(omega0=5.0, delta_offset=100.0, j_coupling=0.0, epsilon=EPSILON)
        bath = BathParams(b_dipolar=np.sqrt(5 / (12 * TAU_C)), tau_c=TAU_C)
        self.L = build_liouvillian(self.system, bath)
        self.md = eigendecompose(population_generator(self.L), rate_scale=1.0)
        self.rho_th = thermal_state(self.system)
        self.times = time_grid(1e-3, 20.0, 200, "log")

    def analytic_pair(self, theta: float):
        far = analytic_trajectory(lambda t: far_state_populations(EPSILON, 1.0, t), self.times)
        near = analytic_trajectory(
            lambda t: theta_state_populations(theta, EPSILON, 1.0, t), self.times
        )
        return far, near

    def test_trace_distance_crossing(self):
        """Test the bisected crossing matches the closed form at 45 and 70 degrees"""
        for degrees in (45.0, 70.0):
            theta = np.radians(degrees)
            report = detect_crossing(*self.analytic_pair(theta), "trace_distance", self.rho_th)
            expected = theta_crossing_time(theta, 1.0)
            self.assertEqual(len(report.crossing_times), 1)
            self.assertAlmostEqual(report.crossing_time / expected, 1.0, delta=1e-6)
            self.assertGreater(report.initial_gap, 0.0)
            self.assertEqual(report.classification, "weak")

    def test_interpolated_crossing(self):
        """Test the monotone interpolant path without evaluators"""
        theta = np.radians(45.0)
        far, near = self.analytic_pair(theta)
        report = detect_crossing(
            Trajectory(times=far.times, states=far.states),
            Trajectory(times=near.times, states=near.states),
            "trace_distance",
            self.rho_th,
        )
        self.assertAlmostEqual(report.crossing_time / theta_crossing_time(theta, 1.0), 1.0, delta=1e-3)

    def test_strong_classification(self):
        """Test the far state misses the slow mode while the near state excites it"""
        theta = np.radians(70.0)
        far = propagate(self.L, far_state(self.system), self.times)
        near = propagate(self.L, near_state(theta, self.system), self.times)
        report = detect_crossing(far, near, "trace_distance", self.rho_th)
        report = classify(
            self.md,
            populations(far_state(self.system)),
            populations(near_state(theta, self.system)),
            report,
        )
        self.assertEqual(report.classification, "strong")
        self.assertAlmostEqual(report.slow_overlaps["far"], 0.0, places=14)
        self.assertNotAlmostEqual(report.slow_overlaps["near"], 0.0, places=8)
        self.assertAlmostEqual(report.crossing_time / theta_crossing_time(theta, 1.0), 1.0, delta=1e-3)

    def test_genuine_crossing(self):
        """Test the relative entropy orders and then reorders the far and genuine near states"""
        far = propagate(self.L, far_state(self.system), self.times)
        near = propagate(self.L, near_state_genuine(self.system), self.times)
        # Both states start at the same trace distance
        self.assertAlmostEqual(
            metric_curve(far, "trace_distance", self.rho_th)[0],
            metric_curve(near, "trace_distance", self.rho_th)[0],
            places=15,
        )
        report = detect_crossing(far, near, "relative_entropy", self.rho_th)
        report = classify(
            self.md,
            populations(far_state(self.system)),
            populations(near_state_genuine(self.system)),
            report,
        )
        self.assertEqual(len(report.crossing_times), 1)
        self.assertEqual(report.classification, "genuine")

    def test_no_crossing(self):
        """Test swapped states start ordered the wrong way and report no crossing"""
        far, near = self.analytic_pair(np.radians(45.0))
        report = detect_crossing(near, far, "trace_distance", self.rho_th)
        self.assertIsNone(report.crossing_time)
        report = classify(self.md, np.full(4, 0.25), np.full(4, 0.25), report)
        self.assertEqual(report.classification, "none")

    def test_recrossing(self):
        """Test only a lasting overtake sets the crossing time"""

        def trajectory(amplitudes, times):
            states = [
                np.diag([0.25 + a, 0.25 - a, 0.25, 0.25]).astype(complex)
                for a in amplitudes
            ]
            return Trajectory(times=times, states=states)

        reference = np.eye(4) / 4
        for t_max, count in ((6.0, 2), (9.0, 3)):
            times = np.linspace(0.0, t_max, int(100 * t_max) + 1)
            far = trajectory(0.1 + 0.05 * np.cos(times), times)
            near = trajectory(np.full(len(times), 0.1), times)
            report = detect_crossing(far, near, "trace_distance", reference)
            self.assertEqual(len(report.crossing_times), count)
            self.assertAlmostEqual(report.crossing_times[0], np.pi / 2, delta=1e-3)
            if count == 2:
                self.assertIsNone(report.crossing_time)
                self.assertEqual(report.classification, "none")
            else:
                self.assertAlmostEqual(report.crossing_time, 5 * np.pi / 2, delta=1e-3)
                curves = metric_curve(far, "trace_distance", reference) - metric_curve(
                    near, "trace_distance", reference
                )
                self.assertTrue(np.all(curves[times > report.crossing_time] < 0))

    def test_grid_mismatch(self):
        """Test trajectories on different grids raise UsageError"""
        far, _ = self.analytic_pair(np.radians(45.0))
        other = analytic_trajectory(
            lambda t: far_state_populations(EPSILON, 1.0, t), self.times[:-1]
        )
        with self.assertRaises(UsageError):
            detect_crossing(far, other, "trace_distance", self.rho_th)


if __name__ == "__main__":
    unittest.main()

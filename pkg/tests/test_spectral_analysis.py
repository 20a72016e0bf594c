import unittest
import sys
import os

import numpy as np
from scipy.linalg import expm

# Add the src directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from common import NumericalError, UsageError
from relaxation_model import BathParams, SystemParams, build_liouvillian, thermal_state
from spectral_analysis import (
    coherence_block_indices,
    coherence_closure,
    detailed_balance_residual,
    effective_pair_generator,
    eigendecompose,
    mode_contributions,
    overlaps,
    population_generator,
    reference_closure,
    reference_eigenvalues,
    reference_slow_mode,
    reference_zero_quantum_block,
    stationary_density,
    transition_rates,
    two_qubit_generators,
    zero_quantum_block,
)

EPSILON = 1e-5
DELTA = 100.0
TAU_C = 1e-3


def unit_bath() -> BathParams:
    return BathParams(b_dipolar=np.sqrt(5 / (12 * TAU_C)), tau_c=TAU_C)


def liouvillian(epsilon: float = EPSILON) -> np.ndarray:
    system = SystemParams(omega0=5.0, delta_offset=DELTA, j_coupling=0.0, epsilon=epsilon)
    return build_liouvillian(system, unit_bath())


class TestSectors(unittest.TestCase):

    def setUp(self):
        self.L = liouvillian()
        self.L_p = population_generator(self.L)

    def test_population_generator_is_stochastic(self):
        """Test columns of L_p sum to zero with nonnegative off-diagonal rates"""
        self.assertTrue(np.allclose(self.L_p.sum(axis=0), 0, atol=1e-14))
        off = self.L_p - np.diag(np.diag(self.L_p))
        self.assertGreaterEqual(off.min(), 0.0)

    def test_transition_rates(self):
        """Test labelled single, double and zero quantum rates"""
        rates = transition_rates(self.L_p)
        self.assertEqual(len(rates), 12)
        self.assertAlmostEqual(rates["00->01"], (1 - EPSILON) / 16, places=14)
        self.assertAlmostEqual(rates["01->00"], (1 + EPSILON) / 16, places=14)
        self.assertAlmostEqual(rates["00->11"], (1 - 2 * EPSILON) / 4, places=14)
        self.assertAlmostEqual(rates["11->00"], (1 + 2 * EPSILON) / 4, places=14)
        self.assertAlmostEqual(rates["01->10"], 1 / 24, places=14)

    def test_zero_quantum_block(self):
        """Test the 6x6 block on populations and <01|rho|10> against the closed form"""
        error = np.max(
            np.abs(zero_quantum_block(self.L) - reference_zero_quantum_block(1.0, EPSILON, DELTA))
        )
        self.assertLess(error, 1e-9)

    def test_closure_at_zero_polarization(self):
        """Test (X1, X2, X3) evolve autonomously when epsilon = 0"""
        closure, residual = coherence_closure(zero_quantum_block(liouvillian(0.0)))
        self.assertLess(residual, 1e-10)
        self.assertTrue(np.allclose(closure, reference_closure(1.0, DELTA), atol=1e-10))

    def test_detailed_balance(self):
        """Test fluxes balance at the thermal populations up to epsilon^2"""
        p_th = np.real(np.diag(thermal_state(SystemParams(1.0, 1.0, 0.0, EPSILON))))
        self.assertLess(detailed_balance_residual(self.L_p, p_th), 10 * EPSILON**2)

    def test_block_indices_cover_all_elements(self):
        """Test the coherence blocks partition the 16 vector indices"""
        blocks = coherence_block_indices()
        self.assertEqual(sorted(i for indices in blocks.values() for i in indices), list(range(16)))
        self.assertEqual(len(blocks[0]), 6)
        self.assertEqual(len(blocks[2]), 1)

    def test_shape_checks(self):
        """Test wrong generator shapes raise UsageError"""
        with self.assertRaises(UsageError):
            population_generator(np.zeros((4, 4)))
        with self.assertRaises(UsageError):
            coherence_closure(np.zeros((4, 4)))


class TestModes(unittest.TestCase):

    def setUp(self):
        self.L_p = population_generator(liouvillian())
        self.md = eigendecompose(self.L_p, rate_scale=1.0)

    def test_eigenvalues(self):
        """Test the spectrum -(0, 5, 6, 15)/24"""
        self.assertTrue(np.allclose(self.md.eigenvalues, reference_eigenvalues(1.0), atol=1e-6))
        self.assertEqual(self.md.stationary_index, 0)
        self.assertEqual(self.md.slowest_index, 1)
        self.assertEqual(self.md.zero_modes, 1)
        self.assertFalse(self.md.degenerate)

    def test_biorthonormal(self):
        """Test w_m . v_n = delta_mn"""
        product = self.md.left_vectors @ self.md.right_vectors.T
        self.assertTrue(np.allclose(product, np.eye(4), atol=1e-10))

    def test_slow_mode(self):
        """Test the slowest mode is the antisymmetric inner-level vector"""
        v1 = self.md.right_vectors[self.md.slowest_index]
        self.assertAlmostEqual(abs(np.dot(v1, reference_slow_mode())), 1.0, places=10)

    def test_stationary_state(self):
        """Test the stationary mode is the thermal population vector"""
        p_ss = np.real(self.md.stationary_state())
        expected = [0.25 + EPSILON / 2, 0.25, 0.25, 0.25 - EPSILON / 2]
        self.assertTrue(np.allclose(p_ss, expected, atol=10 * EPSILON**2))

    def test_mode_contributions_sum_to_propagation(self):
        """Test sum_n a_n exp(lambda_n t) v_n reproduces p(t)"""
        p0 = np.array([0.1, 0.3, 0.2, 0.4])
        contributions = mode_contributions(self.md, p0, [0.0, 1.5])
        self.assertEqual(contributions.shape, (2, 4, 4))
        self.assertTrue(np.allclose(contributions[0].sum(axis=0), p0))
        stationary = overlaps(self.md, p0)[0] * self.md.right_vectors[0].sum()
        self.assertAlmostEqual(stationary.real, 1.0, places=12)

    def test_defective_matrix_flagged(self):
        """Test a Jordan block is marked degenerate"""
        md = eigendecompose(np.array([[-1.0, 1.0], [0.0, -1.0]]))
        self.assertTrue(md.degenerate)

    def test_overlap_shape_mismatch(self):
        """Test overlaps with a wrong-size vector raise UsageError"""
        with self.assertRaises(UsageError):
            overlaps(self.md, np.ones(3))

    def test_non_finite_generator(self):
        """Test NaN entries raise NumericalError"""
        with self.assertRaises(NumericalError):
            eigendecompose(np.array([[np.nan, 0.0], [0.0, -1.0]]))

    def test_stationary_density(self):
        """Test the null vector of L is the thermal state up to epsilon^2"""
        system = SystemParams(omega0=5.0, delta_offset=DELTA, j_coupling=0.0, epsilon=EPSILON)
        rho_ss = stationary_density(liouvillian())
        self.assertAlmostEqual(np.trace(rho_ss).real, 1.0, places=12)
        self.assertTrue(np.allclose(rho_ss, thermal_state(system), atol=10 * EPSILON**2))


class TestTwoQubit(unittest.TestCase):

    def setUp(self):
        self.L_p = population_generator(liouvillian())

    def test_outer_rates(self):
        """Test the outer qubit rates (5/16)(1 -+ 2 epsilon) including the inner relay"""
        outer = two_qubit_generators(self.L_p)["outer"]
        self.assertAlmostEqual(outer[1, 0], 5 / 16 * (1 - 2 * EPSILON), delta=EPSILON**2)
        self.assertAlmostEqual(outer[0, 1], 5 / 16 * (1 + 2 * EPSILON), delta=EPSILON**2)
        self.assertTrue(np.allclose(outer.sum(axis=0), 0))

    def test_inner_rate(self):
        """Test the inner qubit rate 5/48"""
        inner = two_qubit_generators(self.L_p)["inner"]
        self.assertAlmostEqual(inner[1, 0], 5 / 48, delta=EPSILON**2)
        self.assertAlmostEqual(inner[0, 1], 5 / 48, delta=EPSILON**2)

    def test_outer_relaxation_rate(self):
        """Test the outer qubit relaxes at 5 K0 / 8"""
        outer = two_qubit_generators(self.L_p)["outer"]
        self.assertAlmostEqual(-np.trace(outer), 5 / 8, delta=EPSILON**2)

    def pair_errors(self, L_p, p0):
        """Largest outer-pair and inner-level deviations over K0 t in [0, 20]"""
        outer = two_qubit_generators(L_p)["outer"]
        pair_error, inner_error = 0.0, 0.0
        for t in np.linspace(0.0, 20.0, 21):
            full = np.real(expm(L_p * t) @ p0)
            pair = np.real(expm(outer * t) @ p0[[0, 3]])
            pair_error = max(pair_error, np.max(np.abs(full[[0, 3]] - pair)))
            inner_error = max(inner_error, np.max(np.abs(full[1:3] - 0.25)))
        return pair_error, inner_error

    def test_outer_pair_closes_without_polarization(self):
        """Test outer-pair states with inner levels at 1/4 stay two-level at epsilon = 0"""
        L_p = population_generator(liouvillian(epsilon=0.0))
        rng = np.random.default_rng(11)
        for p00 in rng.uniform(0, 0.5, size=5):
            pair_error, inner_error = self.pair_errors(
                L_p, np.array([p00, 0.25, 0.25, 0.5 - p00])
            )
            self.assertLess(pair_error, 1e-10)
            self.assertLess(inner_error, 1e-10)

    def test_inner_drift_at_finite_polarization(self):
        """Test inner levels leave 1/4 at most at rate (K0 epsilon / 16)|p00 - p11|"""
        for p0 in ([0.5, 0.25, 0.25, 0.0], [0.4, 0.25, 0.25, 0.1]):
            p0 = np.array(p0)
            bound = EPSILON * abs(p0[0] - p0[3]) * 20 / 16
            pair_error, inner_error = self.pair_errors(self.L_p, p0)
            self.assertLess(pair_error, bound)
            self.assertLess(inner_error, bound)
        pair_error, inner_error = self.pair_errors(
            self.L_p, np.array([0.5, 0.25, 0.25, 0.0])
        )
        self.assertGreater(inner_error, 0.0)

    def test_invalid_pair(self):
        """Test repeated or out-of-range levels raise UsageError"""
        with self.assertRaises(UsageError):
            effective_pair_generator(self.L_p, (1, 1))
        with self.assertRaises(UsageError):
            effective_pair_generator(self.L_p, (0, 4))


if __name__ == "__main__":
    unittest.main()

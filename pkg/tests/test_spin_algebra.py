import unittest
import sys
import os

import numpy as np

# Add the src directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from common import DomainError, UsageError
from spin_algebra import (
    ORDERS,
    coherence_component,
    coherence_decompose,
    coherence_order_matrix,
    commutator,
    conjugate,
    csa_spherical_tensor,
    magnetic_numbers,
    rotation_pulse,
    spherical_tensor,
    spin_operator,
    total_z,
)


class TestSpinOperators(unittest.TestCase):

    def test_su2_commutation(self):
        """Test [Ix, Iy] = i Iz on both spins"""
        for spin in (1, 2):
            ix, iy, iz = (spin_operator(spin, axis) for axis in ("x", "y", "z"))
            self.assertTrue(np.allclose(commutator(ix, iy), 1j * iz, atol=1e-12))

    def test_spins_commute(self):
        """Test operators of different spins commute"""
        for a in ("x", "y", "z"):
            for b in ("x", "y", "z"):
                c = commutator(spin_operator(1, a), spin_operator(2, b))
                self.assertTrue(np.allclose(c, 0, atol=1e-12))

    def test_raising_operator(self):
        """Test I+ = Ix + i Iy and the alias"""
        plus = spin_operator(1, "x") + 1j * spin_operator(1, "y")
        self.assertTrue(np.allclose(spin_operator(1, "plus"), plus))
        self.assertTrue(np.allclose(spin_operator(1, "+"), plus))

    def test_basis_order(self):
        """Test spin 1 is the left tensor factor and |0> is spin up"""
        self.assertEqual(list(np.real(np.diag(spin_operator(1, "z")))), [0.5, 0.5, -0.5, -0.5])
        self.assertEqual(list(np.real(np.diag(spin_operator(2, "z")))), [0.5, -0.5, 0.5, -0.5])
        self.assertEqual(list(magnetic_numbers()), [1, 0, 0, -1])

    def test_invalid_arguments(self):
        """Test unknown axes and spin indices are rejected"""
        with self.assertRaises(UsageError):
            spin_operator(3, "z")
        with self.assertRaises(UsageError):
            spin_operator(1, "w")
        with self.assertRaises(UsageError):
            rotation_pulse(np.pi, "z")
        with self.assertRaises(UsageError):
            rotation_pulse(np.pi, "x", target=3)


class TestSphericalTensors(unittest.TestCase):

    def test_coherence_orders(self):
        """Test [Iz1 + Iz2, T_m] = m T_m"""
        for m in range(-2, 3):
            t = spherical_tensor(m)
            self.assertTrue(np.allclose(commutator(total_z(), t), m * t, atol=1e-12))

    def test_double_quantum_element(self):
        """Test T_2 = I1+ I2+ / 2 = |00><11| / 2"""
        t = spherical_tensor(2)
        expected = np.zeros((4, 4))
        expected[0, 3] = 0.5
        self.assertTrue(np.allclose(t, expected))

    def test_adjoint_relations(self):
        """Test T_-m = (-1)^m T_m^+"""
        for m in range(-2, 3):
            self.assertTrue(
                np.allclose(spherical_tensor(-m), (-1) ** m * spherical_tensor(m).conj().T)
            )

    def test_trace_orthogonality(self):
        """Test tr(T_m^+ T_n) vanishes for m != n"""
        for m in range(-2, 3):
            for n in range(-2, 3):
                overlap = np.trace(spherical_tensor(m).conj().T @ spherical_tensor(n))
                if m != n:
                    self.assertAlmostEqual(abs(overlap), 0.0, places=12)
                else:
                    self.assertGreater(abs(overlap), 0.0)

    def test_out_of_range_order(self):
        """Test |m| > 2 raises DomainError"""
        with self.assertRaises(DomainError):
            spherical_tensor(3)
        with self.assertRaises(DomainError):
            spherical_tensor(-3)

    def test_csa_tensor_order(self):
        """Test the CSA tensor of each spin carries order m and vanishes for |m| = 2"""
        for spin in (1, 2):
            for m in (-1, 0, 1):
                s = csa_spherical_tensor(m, spin)
                self.assertTrue(np.allclose(commutator(total_z(), s), m * s, atol=1e-12))
            self.assertTrue(np.allclose(csa_spherical_tensor(2, spin), 0))


class TestPulses(unittest.TestCase):

    def test_unitarity(self):
        """Test pulses are unitary for every phase and target"""
        rng = np.random.default_rng(3)
        for axis in ("x", "y", "-x", "-y"):
            for target in (1, 2, "both"):
                u = rotation_pulse(rng.uniform(0, 2 * np.pi), axis, target)
                self.assertTrue(np.allclose(u.conj().T @ u, np.eye(4), atol=1e-12))

    def test_pi_pulse_inverts_one_spin(self):
        """Test a pi pulse on spin 1 inverts I1z and leaves I2z alone"""
        u = rotation_pulse(np.pi, "x", 1)
        self.assertTrue(np.allclose(conjugate(u, spin_operator(1, "z")), -spin_operator(1, "z")))
        self.assertTrue(np.allclose(conjugate(u, spin_operator(2, "z")), spin_operator(2, "z")))

    def test_y_pulse_tips_both_spins(self):
        """Test (theta)_y on both spins tips Iz towards Ix"""
        iz = spin_operator(1, "z") + spin_operator(2, "z")
        ix = spin_operator(1, "x") + spin_operator(2, "x")
        for theta in (0.2, np.pi / 4, 1.2):
            tipped = conjugate(rotation_pulse(theta, "y", "both"), iz)
            expected = np.cos(theta) * iz + np.sin(theta) * ix
            self.assertTrue(np.allclose(tipped, expected, atol=1e-14))

    def test_opposite_phases_cancel(self):
        """Test (theta)_x followed by (theta)_-x is the identity"""
        u = rotation_pulse(0.7, "-x") @ rotation_pulse(0.7, "x")
        self.assertTrue(np.allclose(u, np.eye(4), atol=1e-12))


class TestCoherence(unittest.TestCase):

    def test_order_matrix(self):
        """Test element orders M_row - M_col"""
        orders = coherence_order_matrix()
        self.assertEqual(orders[0, 3], 2)
        self.assertEqual(orders[3, 0], -2)
        self.assertEqual(orders[1, 2], 0)
        self.assertEqual(orders[0, 1], 1)

    def test_decomposition_is_complete(self):
        """Test the five components sum back to the matrix"""
        rng = np.random.default_rng(5)
        matrix = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        parts = coherence_decompose(matrix)
        self.assertEqual([part.order for part in parts], list(ORDERS))
        self.assertTrue(np.allclose(sum(part.component for part in parts), matrix))

    def test_tensor_lies_in_its_order(self):
        """Test T_m has no component outside order m"""
        for m in range(-2, 3):
            t = spherical_tensor(m)
            self.assertTrue(np.allclose(coherence_component(t, m), t))


if __name__ == "__main__":
    unittest.main()

"""
Acceptance tests for steady-state construction on the cubic f(u) = u (u - 1/4)(1 - u).
Tests the ground-state residual, its tail constant, the b = 3 ground shift and
the decay of the manifold remainder.
"""

import time
import unittest

import numpy as np

from nonlinearity import RegimeLabel, compute_constants, ground_shift_roots, regime_partition
from steady_states import build_ground_state, shift_residual, shoot_ground_state
from steady_states.shifts import ground_shift_positions
from transition import remainder_decay_fit
from tests.fixtures import CUBIC_LAMBDA, CUBIC_S0_B3, cubic, exact_shift_b3


class TestGroundStateWorkflow(unittest.TestCase):
    """
    User Story: As a modeller, I want a trustworthy ground state V
    so that shift sets and manifold profiles built on it are accurate.
    """

    @classmethod
    def setUpClass(cls):
        cls.f = cubic()

    def test_discrete_residual_at_fine_spacing(self):
        """
        GIVEN the cubic with alpha = 1/4
        WHEN V is built at dx = 0.005 / lambda
        THEN max |V'' + f(V)| <= 1e-6, halving dx divides it by about 4, and it takes under a second
        """
        started = time.perf_counter()
        fine = build_ground_state(self.f, 24.0, 2400)
        elapsed = time.perf_counter() - started
        coarse = build_ground_state(self.f, 24.0, 1200)
        self.assertAlmostEqual(fine.dx, 0.005 / CUBIC_LAMBDA, places=12)
        self.assertLessEqual(fine.residual(), 1e-6)
        ratio = coarse.residual() / fine.residual()
        self.assertGreater(ratio, 3.0)
        self.assertLess(ratio, 5.0)
        self.assertLess(elapsed, 1.0)

    def test_tail_constant(self):
        """
        GIVEN V built on |z| <= 15 / lambda
        WHEN e^{lambda z} V(z) is taken at z = 12 / lambda
        THEN it matches A within 1e-3 relative, and an ODE-shooting oracle agrees to 1e-6
        """
        V = build_ground_state(self.f, 30.0)
        A = compute_constants(self.f).A
        z = 12.0 / CUBIC_LAMBDA
        self.assertLessEqual(abs(np.exp(CUBIC_LAMBDA * z) * float(V(z)) - A) / A, 1e-3)

        grid, values, _ = shoot_ground_state(self.f, z, 2400)
        np.testing.assert_allclose(V(grid), values, rtol=0.0, atol=1e-6)

    def test_ground_shift_for_b3(self):
        """
        GIVEN b = 3
        WHEN the ground shift set is computed
        THEN it has one element whose s0 is the closed-form quadratic root
        AND the shifted profile satisfies the Robin condition to 1e-8
        """
        roots = ground_shift_roots(self.f, 3.0)
        self.assertEqual(len(roots), 1)
        self.assertAlmostEqual(roots[0], CUBIC_S0_B3, delta=1e-10)
        self.assertIs(regime_partition(self.f, 3.0).label, RegimeLabel.FINITE_SHIFT)

        V = build_ground_state(self.f, 24.0, 2400)
        z = ground_shift_positions(self.f, roots, 0.0)[0]
        self.assertAlmostEqual(z, exact_shift_b3(), delta=1e-8)
        self.assertLessEqual(shift_residual(V, z, 3.0), 1e-8)


class TestManifoldWorkflow(unittest.TestCase):
    """
    User Story: As a modeller, I want the approximate center manifold to be
    nearly stationary so that the reduced drift law is meaningful.
    """

    def test_remainder_decay(self):
        """
        GIVEN Phi(., xi) for xi in [8 / lambda, 12 / lambda]
        WHEN log sup |Phi_xx + f(Phi)| is fitted against xi
        THEN the slope is -2 lambda for b = 0 and -3 lambda for b lambda = 1, within 15%
        """
        f = cubic()
        V = build_ground_state(f, 24.0)
        xis = np.linspace(8.0, 12.0, 5) / CUBIC_LAMBDA
        for b, predicted in ((0.0, -2.0 * CUBIC_LAMBDA), (1.0 / CUBIC_LAMBDA, -3.0 * CUBIC_LAMBDA)):
            with self.subTest(b=b):
                fit = remainder_decay_fit(V, b, xis)
                self.assertEqual(fit.predicted_slope, predicted)
                self.assertLessEqual(abs(fit.slope - predicted) / abs(predicted), 0.15)


if __name__ == "__main__":
    unittest.main()

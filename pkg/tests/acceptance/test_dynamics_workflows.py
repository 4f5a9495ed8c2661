"""
Acceptance tests for the PDE experiments on the cubic f(u) = u (u - 1/4)(1 - u).
These runs take minutes; set RDT_RUN_SLOW=1 to enable them.
"""

import unittest

import numpy as np

from pde_solver import BumpShape, RunLogHook, SolverConfig, field_from_datum, run, scaled_bump, twin_bump
from threshold import BisectionStatus, bisect_sigma, sigma_star_curve, verify_spreading, verify_vanishing
from transition import run_transition_experiment
from tests.fixtures import RUN_SLOW, CUBIC_LAMBDA, cubic, exact_shift_b3

SLOW_REASON = "set RDT_RUN_SLOW=1 to run the PDE acceptance experiments"


def _max_energy_increase(rows, t_min):
    energies = [row[3] for row in rows if row[0] >= t_min]
    return max(0.0, float(np.max(np.diff(energies))))


@unittest.skipUnless(RUN_SLOW, SLOW_REASON)
class TestThresholdWorkflow(unittest.TestCase):
    """
    User Story: As a modeller, I want the sharp threshold sigma* located to
    machine-level precision with certified endpoints.
    """

    @classmethod
    def setUpClass(cls):
        cls.f = cubic()
        cls.cfg = SolverConfig(dx=0.02, dt=0.01).resolved(cls.f)
        cls.phi = scaled_bump(BumpShape.TRIANGLE, 1.0)

    def test_sharp_threshold(self):
        """
        GIVEN b = 0 and a triangle of width 1
        WHEN sigma* is bisected to relative width 1e-10
        THEN the bracket converges and both endpoint certificates verify
        """
        result = bisect_sigma(self.phi, 0.0, self.cfg, self.f, tol_rel=1e-10, max_iter=60)
        self.assertIs(result.status, BisectionStatus.CONVERGED)
        self.assertLessEqual(result.relative_width, 1e-10)
        lo, hi = result.endpoint_outcomes
        self.assertTrue(verify_vanishing(lo, self.cfg, self.f).passed)
        self.assertTrue(verify_spreading(hi, self.f).passed)

    def test_threshold_monotone_and_continuous(self):
        """
        GIVEN b in {0, 0.5, 1, 2, 4}
        WHEN sigma*(b) is computed
        THEN it is nonincreasing, continuous at b = 1, and lower for the larger datum 1.1 phi
        """
        curve = sigma_star_curve(self.phi, [0.0, 0.5, 1.0, 2.0, 4.0], self.cfg, self.f, tol_rel=1e-6)
        self.assertTrue(curve.monotone)

        at_one = bisect_sigma(self.phi, 1.0, self.cfg, self.f, tol_rel=1e-3)
        nearby = bisect_sigma(self.phi, 1.0 + 1e-3, self.cfg, self.f, tol_rel=1e-3)
        width = max(at_one.width, nearby.width)
        self.assertLessEqual(abs(at_one.midpoint - nearby.midpoint), 5.0 * width)

        larger = bisect_sigma(self.phi.scaled(1.1), 0.0, self.cfg, self.f, tol_rel=1e-6)
        at_zero = curve.results[0]
        self.assertLessEqual(larger.sigma_lo, at_zero.sigma_hi)


@unittest.skipUnless(RUN_SLOW, SLOW_REASON)
class TestDiagnosticsWorkflow(unittest.TestCase):
    """
    User Story: As a modeller, I want the gradient-flow structure visible in
    every run so that I can trust the solver.
    """

    @classmethod
    def setUpClass(cls):
        cls.f = cubic()

    def _log(self, datum, b, dx, dt, max_t):
        cfg = SolverConfig(dx=dx, dt=dt, max_t=max_t).resolved(self.f)
        hook = RunLogHook(0.5, self.f)
        run(field_from_datum(datum, b, cfg), cfg, self.f, [hook])
        return hook.rows

    def test_energy_nonincreasing(self):
        """
        GIVEN a subthreshold and a superthreshold triangle
        WHEN E[u] is logged along each run
        THEN any increase is tiny and shrinks at least 3.5x when dx and dt are halved
        """
        for sigma in (0.5, 2.0):
            with self.subTest(sigma=sigma):
                datum = scaled_bump(BumpShape.TRIANGLE, 1.0, sigma)
                coarse = _max_energy_increase(self._log(datum, 1.0, 0.04, 0.02, 20.0), 0.2)
                fine = _max_energy_increase(self._log(datum, 1.0, 0.02, 0.01, 20.0), 0.1)
                self.assertLessEqual(coarse, 1e-4)
                if coarse > 1e-12:
                    self.assertLessEqual(fine, coarse / 3.5)

    def test_sign_changes_of_twin_bump(self):
        """
        GIVEN two bumps separated by a gap
        WHEN the run starts near its threshold
        THEN the number of sign changes of u_x never increases after 10 dt and ends at 1
        """
        cfg = SolverConfig(dx=0.02, dt=0.01, max_t=60.0).resolved(self.f)
        phi = twin_bump(BumpShape.SMOOTH, 1.0, 1.0)
        result = bisect_sigma(phi, 0.0, cfg, self.f, tol_rel=1e-6)
        rows = self._log(phi.scaled(result.midpoint), 0.0, 0.02, 0.01, 60.0)
        counts = [row[4] for row in rows if row[0] >= 10 * 0.01]
        self.assertTrue(all(b <= a for a, b in zip(counts, counts[1:])))
        self.assertEqual(counts[-1], 1)


@unittest.skipUnless(RUN_SLOW, SLOW_REASON)
class TestTransitionWorkflow(unittest.TestCase):
    """
    User Story: As a modeller, I want to watch the transition solution drift
    so that I can compare it with the logarithmic law and the shift regime.
    """

    @classmethod
    def setUpClass(cls):
        cls.f = cubic()
        cls.cfg = SolverConfig(dx=0.02, dt=0.01).resolved(cls.f)
        cls.phi = scaled_bump(BumpShape.TRIANGLE, 1.0)

    def test_log_drift_for_dirichlet(self):
        """
        GIVEN b = 0 and the 40-step bisection midpoint
        WHEN xi(t) is fitted against ln t over the valid window
        THEN the slope is within 15% of 1 / (2 lambda) and the reduced ODE tracks xi within 0.5 / lambda
        """
        result = run_transition_experiment(self.f, 0.0, self.phi, self.cfg)
        self.assertIsNotNone(result.fit, result.fit_error)
        self.assertAlmostEqual(result.fit.predicted_slope, 1.0 / (2.0 * CUBIC_LAMBDA))
        self.assertLessEqual(result.fit.slope_deviation, 0.15)
        self.assertTrue(result.comparison.passed)
        self.assertTrue(result.regime.consistent)

    def test_finite_shift_convergence(self):
        """
        GIVEN b = 3, where the ground shift set has one element z
        WHEN the near-threshold run settles
        THEN its terminal xi lies within 10% of z
        """
        result = run_transition_experiment(self.f, 3.0, self.phi, self.cfg)
        z = exact_shift_b3()
        self.assertIsNotNone(result.regime.terminal_xi)
        self.assertLessEqual(abs(result.regime.terminal_xi - z), 0.1 * z)
        self.assertTrue(result.regime.consistent)


if __name__ == "__main__":
    unittest.main()

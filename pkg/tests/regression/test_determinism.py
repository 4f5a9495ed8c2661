"""
Regression tests for reproducibility.
Two identical threshold searches must agree bit for bit.
"""

import unittest

from pde_solver import BumpShape, SolverConfig, scaled_bump
from threshold import bisect_sigma
from tests.fixtures import cubic


class TestDeterminism(unittest.TestCase):
    """Regression tests for repeated bisections."""

    def test_repeated_bisection_is_identical(self):
        """Test that the bracket, the history and the certificates repeat exactly."""
        f = cubic()
        cfg = SolverConfig(dx=0.1, dt=0.01, max_t=20.0)
        phi = scaled_bump(BumpShape.TRIANGLE, 1.0)
        first = bisect_sigma(phi, 1.0, cfg, f, tol_rel=1e-2)
        second = bisect_sigma(phi, 1.0, cfg, f, tol_rel=1e-2)
        self.assertEqual(first.sigma_lo.hex(), second.sigma_lo.hex())
        self.assertEqual(first.sigma_hi.hex(), second.sigma_hi.hex())
        self.assertEqual(first.history, second.history)
        self.assertEqual(first.to_dict(), second.to_dict())


if __name__ == "__main__":
    unittest.main()

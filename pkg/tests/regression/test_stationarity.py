"""
Regression tests for near-stationary initial data.
A Robin-compatible shifted ground state must stay put, and a manifold profile
must move no further than the reduced drift law allows, over t = 10.
"""

import unittest

import numpy as np

from pde_solver import SolverConfig, capped_ground, energy, field_from_datum, run
from steady_states import build_ground_state
from transition import closed_form, drift_law, locate_pulse, manifold_datum
from tests.fixtures import cubic, exact_shift_b3

DX = 0.02
DT = 0.01
HORIZON = 10.0


class TestStationarity(unittest.TestCase):
    """Regression tests for drift of steady and near-steady data."""

    @classmethod
    def setUpClass(cls):
        cls.f = cubic()
        cls.V = build_ground_state(cls.f, 24.0)
        cls.cfg = SolverConfig(dx=DX, dt=DT, max_t=HORIZON).resolved(cls.f)

    def _peak_motion(self, datum, b):
        field = field_from_datum(datum, b, self.cfg)
        xi0, _ = locate_pulse(field, self.f.alpha)
        record = run(field, self.cfg, self.f)
        self.assertEqual(record.stop_reason, 'max_t')
        xi1, _ = locate_pulse(record.field, self.f.alpha)
        return xi0, xi1

    def test_ground_shift_is_stationary(self):
        """Test that V(. - z) with z the b = 3 ground shift drifts by at most 2 dx."""
        z = exact_shift_b3()
        xi0, xi1 = self._peak_motion(capped_ground(self.V, z, 30.0), 3.0)
        self.assertAlmostEqual(xi0, z, delta=DX)
        self.assertLessEqual(abs(xi1 - xi0), 2.0 * DX)

    def test_manifold_profile_follows_drift_law(self):
        """Test that Phi(., xi) moves by at most the reduced drift plus 2 dx."""
        xi = 16.0
        xi0, xi1 = self._peak_motion(manifold_datum(self.V, 0.0, xi), 0.0)
        rate, c, _ = drift_law(self.f, 0.0)
        predicted = float(closed_form(HORIZON, xi0, rate, c)) - xi0
        self.assertGreaterEqual(predicted, 0.0)
        self.assertLessEqual(abs(xi1 - xi0), predicted + 2.0 * DX)

    def test_energy_is_flat(self):
        """Test that the stationary datum barely dissipates energy."""
        field = field_from_datum(capped_ground(self.V, exact_shift_b3(), 30.0), 3.0, self.cfg)
        record = run(field, self.cfg, self.f)
        before, after = energy(field, self.f), energy(record.field, self.f)
        self.assertLessEqual(after, before + 1e-6)
        self.assertLess(abs(after - before), 1e-3 * max(1.0, abs(before)))


if __name__ == "__main__":
    unittest.main()

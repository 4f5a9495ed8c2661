"""
Unit tests for the shift regime partition.
Tests the InfiniteShift / FiniteShift / Mixed labels and ground-shift roots.
"""

import math
import unittest

import numpy as np

from nonlinearity import RegimeLabel, ground_shift_roots, regime_partition
from nonlinearity.regime import _near_zero_trend
from tests.fixtures import CUBIC_S0_B3, cubic, mixed


class TestRegimePartitionCubic(unittest.TestCase):
    """Test suite for the cubic, where s / sqrt(F(s)) increases on (0, theta)."""

    def test_dirichlet_is_infinite_shift(self):
        """Test that b = 0 has no ground shifts."""
        report = regime_partition(cubic(), 0.0)
        self.assertIs(report.label, RegimeLabel.INFINITE_SHIFT)
        self.assertEqual(report.roots, ())
        self.assertFalse(report.oscillation_flag)

    def test_small_b_is_infinite_shift(self):
        """Test b = 1.5 and b = 2 (= 1/lambda) stay below g on (0, theta)."""
        for b in (1.5, 2.0):
            with self.subTest(b=b):
                report = regime_partition(cubic(), b)
                self.assertIs(report.label, RegimeLabel.INFINITE_SHIFT)
                self.assertEqual(report.roots, ())

    def test_large_b_is_finite_shift(self):
        """Test that b = 3 is FiniteShift with the single quadratic root."""
        report = regime_partition(cubic(), 3.0)
        self.assertIs(report.label, RegimeLabel.FINITE_SHIFT)
        self.assertEqual(len(report.roots), 1)
        self.assertAlmostEqual(report.roots[0], CUBIC_S0_B3, delta=1e-10)

    def test_just_above_limit_is_finite_shift(self):
        """Test that b slightly above 1/lambda = 2 is FiniteShift with one root and no flag."""
        for b in (2.001, 2.005, 2.01):
            with self.subTest(b=b):
                report = regime_partition(cubic(), b)
                self.assertIs(report.label, RegimeLabel.FINITE_SHIFT)
                self.assertFalse(report.oscillation_flag)
                self.assertEqual(len(report.roots), 1)
                # b^2 F(s) = s^2 reduces to s^2/2 - 5s/6 + 1/4 - 1/b^2 = 0
                s0 = 5.0 / 6.0 - math.sqrt(25.0 / 36.0 - 0.5 + 2.0 / b**2)
                self.assertAlmostEqual(report.roots[0], s0, delta=1e-10)
                self.assertLess(report.roots[0], cubic().theta / 64.0)

    def test_limit_and_minimum(self):
        """Test that g tends to 1/lambda = 2 and its minimum sits near s = 0."""
        report = regime_partition(cubic(), 1.0)
        self.assertEqual(report.g_limit, 2.0)
        self.assertGreater(report.g_min, 2.0)
        self.assertLess(report.g_min, 2.01)

    def test_negative_b_rejected(self):
        """Test that a negative Robin parameter is refused."""
        with self.assertRaises(ValueError):
            regime_partition(cubic(), -0.5)

    def test_report_serializes_label(self):
        """Test that to_dict carries the label value and the roots as a list."""
        data = regime_partition(cubic(), 3.0).to_dict()
        self.assertEqual(data["label"], "FiniteShift")
        self.assertEqual(len(data["roots"]), 1)
        self.assertFalse(data["oscillation_flag"])


class TestRegimePartitionMixed(unittest.TestCase):
    """Test suite for the quartic table whose g dips below 1/lambda."""

    def test_mixed_without_oscillation(self):
        """Test that b = 1.95 lies between min g ~ 1.944 and the limit 2."""
        report = regime_partition(mixed(), 1.95)
        self.assertIs(report.label, RegimeLabel.MIXED)
        self.assertFalse(report.oscillation_flag)
        self.assertAlmostEqual(report.g_min, 1.9444, delta=1e-3)
        self.assertEqual(len(report.roots), 2)
        for s0 in report.roots:
            self.assertGreater(s0, 0.0)
            self.assertLess(s0, 0.2)

    def test_below_minimum_is_infinite_shift(self):
        """Test that b = 1.9 stays below the whole curve."""
        self.assertIs(regime_partition(mixed(), 1.9).label, RegimeLabel.INFINITE_SHIFT)

    def test_above_limit_is_finite_shift(self):
        """Test that b = 2.5 is above g near s = 0."""
        self.assertIs(regime_partition(mixed(), 2.5).label, RegimeLabel.FINITE_SHIFT)


class TestNearZeroTrend(unittest.TestCase):
    """Test suite for the sign of b - g along s -> 0."""

    def test_single_crossing_is_not_oscillation(self):
        """Test that one sign change gives the tail sign without a flag."""
        g = np.array([2.3, 2.2, 2.1, 1.9, 1.8, 1.8, 1.8, 1.8])
        self.assertEqual(_near_zero_trend(2.0, g), (1.0, 1))

    def test_repeated_crossings_counted(self):
        """Test that b - g alternating in sign is reported with every change."""
        g = np.array([2.1, 1.9, 2.1, 1.9, 2.1, 1.9, 2.1, 1.9])
        trend, changes = _near_zero_trend(2.0, g)
        self.assertEqual(trend, 0.0)
        self.assertEqual(changes, 7)

    def test_tail_below_b_is_negative(self):
        """Test that g above b on the smallest samples gives a negative trend."""
        self.assertEqual(_near_zero_trend(2.0, np.full(8, 2.5)), (-1.0, 0))


class TestGroundShiftRoots(unittest.TestCase):
    """Test suite for the roots of b sqrt(F(s)) = s."""

    def test_roots_solve_equation(self):
        """Test that every root of the mixed table satisfies b sqrt(F) = s."""
        f = mixed()
        b = 1.95
        for s0 in ground_shift_roots(f, b):
            self.assertAlmostEqual(b * float(f.F(s0)) ** 0.5, s0, delta=1e-12)

    def test_no_roots_for_zero_b(self):
        """Test that b = 0 returns an empty tuple."""
        self.assertEqual(ground_shift_roots(cubic(), 0.0), ())


if __name__ == "__main__":
    unittest.main()

"""
Unit tests for the nonlinearity package.
Tests condition (F) validation, F evaluation and the derived constants.
"""

import unittest

import numpy as np

from nonlinearity import (
    CubicReaction,
    DerivativeUnavailable,
    NoThetaFound,
    NotBistable,
    Nonlinearity,
    TabulatedReaction,
    ValidationReport,
    compute_constants,
    eval_F,
    shape_ratio,
    validate_F,
)
from nonlinearity.derived import H
from nonlinearity.numerics import scan_roots, sqrt_endpoint_quad
from errors import ValidationError
from tests.fixtures import (
    CUBIC_A,
    CUBIC_F_ONE,
    CUBIC_LAMBDA,
    CUBIC_THETA,
    cubic,
    mixed,
    mixed_columns,
)


class TestValidateF(unittest.TestCase):
    """Test suite for condition (F) checks."""

    def test_cubic_constants(self):
        """Test alpha, lambda, theta, F(1) and K for the cubic with alpha = 1/4."""
        f = cubic()
        self.assertAlmostEqual(f.alpha, 0.25, places=13)
        self.assertAlmostEqual(f.lam, CUBIC_LAMBDA, places=14)
        self.assertAlmostEqual(f.theta, CUBIC_THETA, places=12)
        self.assertAlmostEqual(f.F_one, CUBIC_F_ONE, places=14)
        # -f'(s) = 3s^2 - 2.5s + 0.25 grows on (1, 10]; the sample grid ends at 10
        self.assertAlmostEqual(f.K_lower, 275.25, places=8)
        self.assertEqual(f.k_order, 2)

    def test_report_passes_and_lists_checks(self):
        """Test that a valid cubic yields a passing report with named checks."""
        report = validate_F(CubicReaction(0.25))
        self.assertIsInstance(report, ValidationReport)
        self.assertTrue(report.passed)
        self.assertEqual(report.failures(), ())
        names = [check.name for check in report.checks]
        self.assertIn("f < 0 on (0, alpha)", names)
        self.assertIn("F(1) < 0", names)
        report.raise_for_status()

    def test_balanced_cubic_has_no_theta(self):
        """Test that alpha = 1/2 (F(1) = 0) is rejected with NoThetaFound."""
        report = validate_F(CubicReaction(0.5))
        self.assertFalse(report.passed)
        with self.assertRaises(NoThetaFound):
            report.raise_for_status()

    def test_monostable_table_is_not_bistable(self):
        """Test that f(u) = u(1 - u) fails the sign pattern with NotBistable."""
        s = np.linspace(0.0, 2.0, 401)
        reaction = TabulatedReaction(s, s * (1.0 - s), 1.0 - 2.0 * s)
        with self.assertRaises(NotBistable):
            validate_F(reaction).raise_for_status()

    def test_cubic_alpha_out_of_range(self):
        """Test that the builtin cubic refuses alpha outside (0, 1)."""
        with self.assertRaises(ValidationError):
            CubicReaction(1.5)

    def test_table_must_start_at_zero(self):
        """Test that a table not starting at s = 0 is refused."""
        s = np.linspace(0.1, 2.0, 50)
        with self.assertRaises(ValidationError):
            TabulatedReaction(s, s, np.ones_like(s))

    def test_mixed_table_constants(self):
        """Test alpha, lambda and k for the tabulated quartic."""
        f = mixed()
        self.assertAlmostEqual(f.alpha, 0.25, places=9)
        self.assertAlmostEqual(f.lam, 0.5, places=12)
        self.assertLess(f.F_one, 0.0)
        self.assertEqual(f.k_order, 2)
        self.assertAlmostEqual(float(f.F(f.theta)), 0.0, places=12)


class TestEvalF(unittest.TestCase):
    """Test suite for F(u) = -2 int_0^u f."""

    def test_cubic_examples(self):
        """Test F(0) = 0, F(theta) = 0 and F(1) = -1/12."""
        f = cubic()
        self.assertEqual(eval_F(f, 0.0), 0.0)
        self.assertAlmostEqual(eval_F(f, f.theta), 0.0, places=12)
        self.assertAlmostEqual(eval_F(f, 1.0), -1.0 / 12.0, places=14)

    def test_quadrature_matches_closed_form(self):
        """Test that quadrature agrees with the closed form on 1000 points."""
        f = cubic()
        for u in np.linspace(0.0, 1.5, 1000):
            self.assertAlmostEqual(eval_F(f, float(u), method="quad"), float(f.F(u)), delta=1e-10)

    def test_negative_argument_rejected(self):
        """Test that F is only evaluated for u >= 0."""
        with self.assertRaises(ValidationError):
            eval_F(cubic(), -0.1)

    def test_table_primitive_matches_exact(self):
        """Test the Hermite-spline primitive of the quartic table against the exact F."""
        f = mixed()
        u = np.linspace(0.0, 1.2, 97)
        exact = 3.2 * u ** 5 - 4.5 * u ** 4 + 0.5 * u ** 3 + 0.25 * u ** 2
        np.testing.assert_allclose(f.F(u), exact, atol=1e-12)


class TestDerivedConstants(unittest.TestCase):
    """Test suite for A, int sqrt(F), c(b), c_hat and H_k."""

    @classmethod
    def setUpClass(cls):
        cls.f = cubic()
        cls.constants = compute_constants(cls.f)

    def test_tail_amplitude_closed_form(self):
        """Test A against 6 theta / (3 - 5 theta), exact for alpha = 1/4."""
        self.assertAlmostEqual(self.constants.A, CUBIC_A, delta=1e-10 * CUBIC_A)
        self.assertEqual(self.constants.limit_source, "series")

    def test_tail_amplitude_stable_under_tolerance(self):
        """Test that tightening the quadrature tolerance 10x moves A by < 1e-8."""
        tight = compute_constants(self.f, epsabs=1e-14, epsrel=1e-13)
        self.assertLess(abs(tight.A - self.constants.A), 1e-8)

    def test_c_of_b(self):
        """Test c(0) = lambda^2 A^2 / I_F, c(1/lambda) = 0 and strict decrease."""
        c = self.constants
        lam = self.f.lam
        self.assertAlmostEqual(c.c_b(0.0), lam ** 2 * c.A ** 2 / c.I_F, places=12)
        self.assertEqual(c.c_b(1.0 / lam), 0.0)
        values = [c.c_b(b) for b in np.linspace(0.0, 1.0 / lam, 21)]
        self.assertTrue(all(a > b for a, b in zip(values, values[1:])))
        self.assertGreater(c.I_F, 0.0)

    def test_c_of_b_rejects_negative(self):
        """Test that c(b) needs b >= 0."""
        with self.assertRaises(ValueError):
            self.constants.c_b(-1.0)

    def test_c_hat_and_H(self):
        """Test c_hat = f''(0) A^3 / (12 I_F) with f''(0) = 5/2, and H_2 = 5 A^2 / 3."""
        c = self.constants
        self.assertAlmostEqual(self.f.derivative_at_zero(2), 2.5)
        self.assertAlmostEqual(c.c_hat, 2.5 * c.A ** 3 / (12.0 * c.I_F), places=12)
        self.assertGreater(c.c_hat, 0.0)
        self.assertAlmostEqual(c.H_k, 5.0 * c.A ** 2 / 3.0, places=12)
        self.assertAlmostEqual(H(self.f, c.A, 3), -6.0 * c.A ** 3 / (0.25 * 24.0 * 2.0), places=12)
        with self.assertRaises(ValueError):
            H(self.f, c.A, 1)

    def test_table_without_second_derivative(self):
        """Test that c_hat and H_k are marked unavailable when fpp is not supplied."""
        s, f, fp, _ = mixed_columns(with_fpp=False)
        g = Nonlinearity.from_reaction(TabulatedReaction(s, f, fp))
        constants = compute_constants(g)
        self.assertIsNone(constants.c_hat)
        self.assertIsNone(constants.H_k)
        self.assertEqual(set(constants.unavailable), {"c_hat", "H_k"})
        self.assertEqual(constants.limit_source, "richardson")
        self.assertEqual(constants.to_dict()["c_hat"], "unavailable")
        with self.assertRaises(DerivativeUnavailable):
            g.derivative_at_zero(2)
        # A agrees with the table that carries f''(0)
        self.assertAlmostEqual(constants.A, compute_constants(mixed()).A, delta=1e-7)


class TestShapeRatio(unittest.TestCase):
    """Test suite for g(s) = s / sqrt(F(s))."""

    def test_limit_at_zero(self):
        """Test |g(2^-j) - 1/lambda| decreasing monotonically to 0, j = 4..20."""
        f = cubic()
        eps = 2.0 ** -np.arange(4, 21, dtype=float)
        gaps = np.abs(shape_ratio(f, eps) - 1.0 / f.lam)
        self.assertTrue(np.all(np.diff(gaps) < 0.0))
        self.assertLess(gaps[-1], 1e-5)


class TestNumerics(unittest.TestCase):
    """Test suite for the quadrature and root-scanning helpers."""

    def test_sqrt_endpoint_quad(self):
        """Test int_0^1 ds / sqrt(1 - s) = 2 with the singular endpoint on top."""
        self.assertAlmostEqual(sqrt_endpoint_quad(lambda s: 1.0 / np.sqrt(1.0 - s), 0.0, 1.0), 2.0, places=9)

    def test_scan_roots_finds_all(self):
        """Test that every sign change of sin on a grid is found and polished."""
        roots = scan_roots(np.sin, np.linspace(0.5, 10.0, 200))
        np.testing.assert_allclose(roots, [np.pi, 2 * np.pi, 3 * np.pi], atol=1e-13)


if __name__ == "__main__":
    unittest.main()

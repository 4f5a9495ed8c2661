"""Reaction terms f(u): the builtin cubic and tabulated samples."""

from typing import Any, Dict, Optional

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from errors import ValidationError


class DerivativeUnavailable(ValidationError):
    """A derivative of f at 0 was requested beyond what the reaction term supplies."""
    pass


class CubicReaction:
    """f(u) = u (u - alpha) (1 - u) with closed-form primitive."""

    kind = "cubic"

    def __init__(self, alpha: float) -> None:
        if not 0.0 < alpha < 1.0:
            raise ValidationError(f"cubic alpha must lie in (0, 1), got {alpha}")
        self.alpha = float(alpha)
        self.s_max = np.inf

    def f(self, u):
        u = np.asarray(u, dtype=float)
        return u * (u - self.alpha) * (1.0 - u)

    def fp(self, u):
        u = np.asarray(u, dtype=float)
        return -3.0 * u * u + 2.0 * (1.0 + self.alpha) * u - self.alpha

    def F(self, u):
        """F(u) = -2 int_0^u f = u^4/2 - 2(1+alpha)u^3/3 + alpha u^2."""
        u = np.asarray(u, dtype=float)
        a = self.alpha
        return u * u * (0.5 * u * u - (2.0 / 3.0) * (1.0 + a) * u + a)

    def derivative_at_zero(self, k: int) -> float:
        coefficients = {0: 0.0, 1: -self.alpha, 2: 2.0 * (1.0 + self.alpha), 3: -6.0}
        return coefficients.get(k, 0.0)

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "alpha": self.alpha}


class TabulatedReaction:
    """
    f given by samples (s, f(s), f'(s)) on [0, s_max].

    The samples are joined by the cubic Hermite spline through the supplied values
    and slopes; f' is the spline's derivative and F its exact antiderivative.
    f''(0) is available only when an fpp column was supplied; higher derivatives
    are refused.
    """

    kind = "table"

    def __init__(
        self,
        s: np.ndarray,
        f: np.ndarray,
        fp: np.ndarray,
        fpp: Optional[np.ndarray] = None,
        source: Optional[str] = None,
    ) -> None:
        s = np.asarray(s, dtype=float)
        f = np.asarray(f, dtype=float)
        fp = np.asarray(fp, dtype=float)
        if s.ndim != 1 or len(s) < 4 or f.shape != s.shape or fp.shape != s.shape:
            raise ValidationError("table needs at least 4 rows of matching s, f, fp")
        if s[0] != 0.0:
            raise ValidationError(f"table must start at s = 0, starts at {s[0]}")
        if np.any(np.diff(s) <= 0.0):
            raise ValidationError("table s column must be strictly increasing")

        self.s = s
        self.source = source
        self.s_max = float(s[-1])
        self._fpp0 = None if fpp is None else float(np.asarray(fpp, dtype=float)[0])
        self._fp0 = float(fp[0])
        self._spline = CubicHermiteSpline(s, f, fp, extrapolate=True)
        self._slope = self._spline.derivative()
        self._primitive = self._spline.antiderivative()

    def f(self, u):
        return self._spline(np.asarray(u, dtype=float))

    def fp(self, u):
        return self._slope(np.asarray(u, dtype=float))

    def F(self, u):
        return -2.0 * self._primitive(np.asarray(u, dtype=float))

    def derivative_at_zero(self, k: int) -> float:
        if k == 0:
            return float(self._spline(0.0))
        if k == 1:
            return self._fp0
        if k == 2 and self._fpp0 is not None:
            return self._fpp0
        raise DerivativeUnavailable(f"f^({k})(0) is not supplied by the table")

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "path": self.source, "rows": int(len(self.s)), "has_fpp": self._fpp0 is not None}



def quartic_columns(alpha: float = 0.25, kappa: float = 8.0, rows: int = 4001, s_max: float = 2.0):
    """Samples (s, f, f', f'') of f(u) = u (u - alpha) (1 - u) (1 + kappa u) on [0, s_max]."""
    if not 0.0 < alpha < 1.0 or kappa < 0.0:
        raise ValidationError(f"quartic needs alpha in (0, 1) and kappa >= 0, got {alpha}, {kappa}")
    poly = np.polynomial.Polynomial.fromroots([0.0, alpha, 1.0]) * np.polynomial.Polynomial([-1.0, -kappa])
    s = np.linspace(0.0, s_max, rows)
    return s, poly(s), poly.deriv()(s), poly.deriv(2)(s)

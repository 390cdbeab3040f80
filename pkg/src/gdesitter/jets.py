"""Order-3 scalar jets: a value bundled with its first three t-derivatives.

Arithmetic follows the Leibniz rule and composition follows Faa di Bruno,
both truncated at order 3, so every channel is exact up to rounding.  Jets
are the currency of profile evaluation: curvature needs second derivatives
of the metric, the metric needs beta'' and hence alpha'''.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["Jet3", "jet_var", "jet_const"]


@dataclass(frozen=True)
class Jet3:
    """Taylor data (f, f', f'', f''') of a scalar function at one point."""

    v: float
    d1: float = 0.0
    d2: float = 0.0
    d3: float = 0.0

    def __add__(self, other):
        if isinstance(other, Jet3):
            return Jet3(self.v + other.v, self.d1 + other.d1,
                        self.d2 + other.d2, self.d3 + other.d3)
        return Jet3(self.v + other, self.d1, self.d2, self.d3)

    __radd__ = __add__

    def __neg__(self):
        return Jet3(-self.v, -self.d1, -self.d2, -self.d3)

    def __sub__(self, other):
        if isinstance(other, Jet3):
            return Jet3(self.v - other.v, self.d1 - other.d1,
                        self.d2 - other.d2, self.d3 - other.d3)
        return Jet3(self.v - other, self.d1, self.d2, self.d3)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet3):
            return Jet3(
                self.v * other.v,
                self.d1 * other.v + self.v * other.d1,
                self.d2 * other.v + 2.0 * self.d1 * other.d1 + self.v * other.d2,
                self.d3 * other.v + 3.0 * self.d2 * other.d1
                + 3.0 * self.d1 * other.d2 + self.v * other.d3,
            )
        return Jet3(self.v * other, self.d1 * other, self.d2 * other, self.d3 * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet3):
            inv = 1.0 / other
            return Jet3(self.v * inv, self.d1 * inv, self.d2 * inv, self.d3 * inv)
        if other.v == 0.0:
            raise ZeroDivisionError("jet division by zero value channel")
        # peel the quotient channels from f = q * g
        q0 = self.v / other.v
        q1 = (self.d1 - q0 * other.d1) / other.v
        q2 = (self.d2 - 2.0 * q1 * other.d1 - q0 * other.d2) / other.v
        q3 = (self.d3 - 3.0 * q2 * other.d1 - 3.0 * q1 * other.d2 - q0 * other.d3) / other.v
        return Jet3(q0, q1, q2, q3)

    def __rtruediv__(self, other):
        return jet_const(other) / self

    def compose(self, f0: float, f1: float, f2: float, f3: float) -> "Jet3":
        """Chain rule through order 3 for an outer function with derivatives f1..f3 at self.v."""
        u1, u2, u3 = self.d1, self.d2, self.d3
        return Jet3(
            f0,
            f1 * u1,
            f2 * u1 * u1 + f1 * u2,
            f3 * u1 * u1 * u1 + 3.0 * f2 * u1 * u2 + f1 * u3,
        )

    def exp(self) -> "Jet3":
        e = math.exp(self.v)
        return self.compose(e, e, e, e)

    def sinh(self) -> "Jet3":
        s, c = math.sinh(self.v), math.cosh(self.v)
        return self.compose(s, c, s, c)

    def cosh(self) -> "Jet3":
        s, c = math.sinh(self.v), math.cosh(self.v)
        return self.compose(c, s, c, s)

    def tanh(self) -> "Jet3":
        w = math.tanh(self.v)
        s = 1.0 - w * w
        return self.compose(w, s, -2.0 * w * s, s * (4.0 * w * w - 2.0 * s))


def jet_var(t: float) -> Jet3:
    """Jet of the identity map at t (the integration variable itself)."""
    return Jet3(float(t), 1.0, 0.0, 0.0)


def jet_const(c: float) -> Jet3:
    """Jet of a constant."""
    return Jet3(float(c), 0.0, 0.0, 0.0)

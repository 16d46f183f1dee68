"""Evaluation seminorms on coordinate space and the rescaling flow.

A point x in K^n together with a base scale r in (0, 1) and a flow exponent
alpha > 0 determines the multiplicative seminorm

    P  |->  r^(alpha * v_t(P(x)))        (0 when P(x) = 0),

kept here in exact exponent form.  The flow rescales alpha; two seminorms on
one trajectory differ only in alpha, and the canonical alpha = 1
representative stands in for the trajectory class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log10

from .mpoly import mp_eval
from .series import INF, PuiseuxSeries


@dataclass(frozen=True)
class SeminormValue:
    """Exact representation base**exponent, with exponent INF meaning 0."""

    base: Fraction
    exponent: object  # Fraction, or INF

    def __mul__(self, other):
        if not isinstance(other, SeminormValue):
            return NotImplemented
        if self.base != other.base:
            raise ValueError("cannot multiply seminorm values with different bases")
        return SeminormValue(self.base, self.exponent + other.exponent)

    def __float__(self):
        if self.exponent == INF:
            return 0.0
        return float(self.base) ** float(self.exponent)

    def log10(self):
        if self.exponent == INF:
            return -INF
        return float(self.exponent) * log10(float(self.base))

    def __repr__(self):
        if self.exponent == INF:
            return "0"
        return f"({self.base})^({self.exponent})"


class EvaluationSeminorm:
    """Coordinates in K^n with a base scale and flow exponent."""

    __slots__ = ("coords", "scale", "alpha")

    def __init__(self, coords, scale=Fraction(1, 2), alpha=Fraction(1)):
        coords = tuple(coords)
        scale = Fraction(scale)
        alpha = Fraction(alpha)
        if not 0 < scale < 1:
            raise ValueError("base scale must lie strictly between 0 and 1")
        if alpha <= 0:
            raise ValueError("flow exponent must be positive")
        for c in coords:
            if not isinstance(c, PuiseuxSeries):
                raise TypeError("coordinates must be Puiseux series")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "alpha", alpha)

    def __setattr__(self, name, value):
        raise AttributeError("EvaluationSeminorm is immutable")

    def evaluate(self, poly):
        """Value on a multivariate polynomial over Q, in exponent form."""
        image = mp_eval(poly, self.coords, PuiseuxSeries.constant(1))
        v = image.val_certified()
        exponent = INF if v == INF else self.alpha * v
        return SeminormValue(self.scale, exponent)

    def flow(self, beta):
        """Rescale the flow exponent: alpha <- alpha * beta."""
        beta = Fraction(beta)
        if beta <= 0:
            raise ValueError("flow parameter must be positive")
        return EvaluationSeminorm(self.coords, self.scale, self.alpha * beta)

    def canonical(self):
        """The alpha = 1 representative of this trajectory."""
        return EvaluationSeminorm(self.coords, self.scale, Fraction(1))

    def same_trajectory(self, other):
        """Trajectory equivalence: equal up to the flow exponent."""
        if self.scale != other.scale or len(self.coords) != len(other.coords):
            return False
        return all(a.agrees(b) for a, b in zip(self.coords, other.coords))

    def __eq__(self, other):
        if not isinstance(other, EvaluationSeminorm):
            return NotImplemented
        return self.same_trajectory(other) and self.alpha == other.alpha

    __hash__ = None

    def __repr__(self):
        coords = ", ".join(c.to_expr() for c in self.coords)
        return f"EvaluationSeminorm([{coords}], r={self.scale}, alpha={self.alpha})"


def seminorm_eval(poly, seminorm):
    return seminorm.evaluate(poly)


def flow(seminorm, beta):
    return seminorm.flow(beta)

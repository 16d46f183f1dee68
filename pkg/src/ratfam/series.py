"""Exact Puiseux series over the rationals.

The valued field is K = Q((t^(1/e))): finite lists of terms c * t^(n/e) with
Fraction coefficients, a ramification index e, and a tracked truncation order
tau.  Exponents at or above tau are unknown; a series with no terms is exactly
zero when tau is infinite and "zero up to truncation" otherwise.  All values
are immutable and all operations are pure, so series are safe to share across
threads or tasks.

Truncation is tracked, never assumed: the only equality offered on truncated
series is agreement below the common truncation order (``agrees``).
``__eq__`` is structural equality of the canonical representation and is used
for golden tests.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

from .errors import (
    DivisionByZero,
    NegativeValuation,
    PrecisionExhausted,
    ZeroDenominator,
)

#: Additive valuation of a (truncated-)zero series; compares above every Fraction.
INF = float("inf")

#: Exponent units of precision kept past the leading term when an exact
#: division does not terminate.  Module-level so callers can retune it.
DEFAULT_PRECISION = 64


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"expected a rational number, got {value!r}")


class PuiseuxSeries:
    """A truncated formal series in t with exact rational data.

    Terms are stored as (numerator, coefficient) pairs with exponent
    numerator/e, strictly increasing and all below ``tau``.
    """

    __slots__ = ("e", "terms", "tau")

    def __init__(self, e, terms, tau=INF):
        if e < 1:
            raise ValueError("ramification index must be a positive integer")
        merged = {}
        for n, c in terms:
            c = _as_fraction(c)
            if c:
                merged[n] = merged.get(n, Fraction(0)) + c
        kept = []
        for n in sorted(merged):
            c = merged[n]
            if c and Fraction(n, e) < tau:
                kept.append((n, c))
        object.__setattr__(self, "e", int(e))
        object.__setattr__(self, "terms", tuple(kept))
        object.__setattr__(self, "tau", tau if tau == INF else _as_fraction(tau))

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxSeries is immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls):
        return cls(1, ())

    @classmethod
    def truncated_zero(cls, tau, e=1):
        """A series about which nothing is known below ``tau``."""
        return cls(e, (), tau)

    @classmethod
    def constant(cls, value):
        return cls(1, ((0, _as_fraction(value)),))

    @classmethod
    def t_power(cls, exponent, coefficient=1):
        """The monomial coefficient * t^exponent, with minimal e."""
        q = _as_fraction(exponent)
        return cls(q.denominator, ((q.numerator, _as_fraction(coefficient)),))

    @classmethod
    def from_terms(cls, mapping, tau=INF):
        """Build from {exponent: coefficient} with rational exponents."""
        exps = [_as_fraction(q) for q in mapping]
        e = 1
        for q in exps:
            e = lcm(e, q.denominator)
        terms = [(int(q * e), c) for q, c in zip(exps, mapping.values())]
        return cls(e, terms, tau)

    # ------------------------------------------------------------------
    # inspection

    def is_zero(self):
        """Exactly zero (no terms, nothing truncated away)."""
        return not self.terms and self.tau == INF

    def is_truncated_zero(self):
        return not self.terms and self.tau != INF

    def val(self):
        """Leading exponent; INF when no term is known below tau."""
        if not self.terms:
            return INF
        return Fraction(self.terms[0][0], self.e)

    def val_certified(self):
        """Like val, but refuses to call a truncated-zero series zero."""
        if self.is_truncated_zero():
            raise PrecisionExhausted(
                f"series is zero up to truncation order {self.tau}", tau=self.tau
            )
        return self.val()

    def leading_coefficient(self):
        if not self.terms:
            raise PrecisionExhausted("no known terms", tau=self.tau)
        return self.terms[0][1]

    def coefficient(self, exponent):
        """Coefficient at a given exponent; raises if it lies beyond tau."""
        q = _as_fraction(exponent)
        if q >= self.tau:
            raise PrecisionExhausted(
                f"coefficient at t^{q} is beyond truncation {self.tau}", tau=self.tau
            )
        n = q * self.e
        if n.denominator != 1:
            return Fraction(0)
        n = n.numerator
        for m, c in self.terms:
            if m == n:
                return c
            if m > n:
                break
        return Fraction(0)

    def residue(self):
        """Constant coefficient; requires nonnegative valuation."""
        if self.terms:
            if self.terms[0][0] < 0:
                raise NegativeValuation(
                    f"residue of a series with valuation {self.val()}"
                )
            return self.coefficient(0)
        if self.tau > 0:
            return Fraction(0)
        raise PrecisionExhausted(
            f"constant term unknown at truncation {self.tau}", tau=self.tau
        )

    def known_terms(self):
        """Pairs (exponent, coefficient) as Fractions."""
        return tuple((Fraction(n, self.e), c) for n, c in self.terms)

    # ------------------------------------------------------------------
    # representation changes

    def ramify(self, m):
        """View the same series with ramification index e*m."""
        m = int(m)
        if m < 1:
            raise ValueError("ramification multiplier must be positive")
        return PuiseuxSeries(self.e * m, ((n * m, c) for n, c in self.terms), self.tau)

    def coarsen(self):
        """Smallest ramification index representing the same terms."""
        g = self.e
        for n, _ in self.terms:
            g = gcd(g, n)
        if g <= 1:
            return self
        return PuiseuxSeries(self.e // g, ((n // g, c) for n, c in self.terms), self.tau)

    def truncate(self, tau):
        tau = tau if tau == INF else _as_fraction(tau)
        if tau >= self.tau:
            return self
        return PuiseuxSeries(self.e, self.terms, tau)

    # ------------------------------------------------------------------
    # arithmetic

    def _promote(self, other):
        if isinstance(other, PuiseuxSeries):
            return other
        if isinstance(other, Rational):
            return PuiseuxSeries.constant(other)
        return None

    def _lower_bound(self):
        # Certified lower bound on the valuation: leading exponent, or tau
        # for a truncated zero, or INF for exact zero.
        if self.terms:
            return Fraction(self.terms[0][0], self.e)
        return self.tau

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        e = lcm(self.e, other.e)
        tau = min(self.tau, other.tau)
        terms = [(n * (e // self.e), c) for n, c in self.terms]
        terms += [(n * (e // other.e), c) for n, c in other.terms]
        return PuiseuxSeries(e, terms, tau)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.e, ((n, -c) for n, c in self.terms), self.tau)

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return PuiseuxSeries.zero()
        e = lcm(self.e, other.e)
        # Tightest sound bound: min(tau_x + v(y), tau_y + v(x)) with the
        # certified lower bounds standing in for v on truncated zeros.
        tau = min(self.tau + other._lower_bound(), other.tau + self._lower_bound())
        sx = e // self.e
        sy = e // other.e
        acc = {}
        for n, c in self.terms:
            for m, d in other.terms:
                k = n * sx + m * sy
                acc[k] = acc.get(k, Fraction(0)) + c * d
        return PuiseuxSeries(e, acc.items(), tau)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return divide(self, other)

    def __rtruediv__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return divide(other, self)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return divide(PuiseuxSeries.constant(1), self ** (-n))
        result = PuiseuxSeries.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base2 = base * base if n > 1 else base
            base = base2
            n >>= 1
        return result

    # ------------------------------------------------------------------
    # comparison

    def agrees(self, other):
        """True when the two series coincide below the common truncation."""
        other = self._promote(other)
        if other is None:
            raise TypeError("cannot compare with a non-series value")
        tau = min(self.tau, other.tau)
        return self.truncate(tau).__eq__(other.truncate(tau))

    def __eq__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        a = self.coarsen()
        b = other.coarsen()
        return a.e == b.e and a.terms == b.terms and a.tau == b.tau

    __hash__ = None

    # ------------------------------------------------------------------
    # display

    def _term_str(self, n, c):
        exp = Fraction(n, self.e)
        if exp == 0:
            return str(c)
        if exp == 1:
            base = "t"
        elif exp.denominator == 1 and exp > 0:
            base = f"t^{exp.numerator}"
        else:
            base = f"t^({exp})"
        if c == 1:
            return base
        if c == -1:
            return f"-{base}"
        return f"{c}*{base}"

    def to_expr(self):
        """Known part as an expression the family-file grammar accepts."""
        if not self.terms:
            return "0"
        parts = []
        for i, (n, c) in enumerate(self.terms):
            s = self._term_str(n, c)
            if i == 0:
                parts.append(s)
            elif s.startswith("-"):
                parts.append(f" - {s[1:]}")
            else:
                parts.append(f" + {s}")
        return "".join(parts)

    def __repr__(self):
        body = self.to_expr()
        if self.tau == INF:
            return body
        if self.tau.denominator == 1:
            order = f"O(t^{self.tau.numerator})"
        else:
            order = f"O(t^({self.tau}))"
        if body == "0":
            return order
        return f"{body} + {order}"


# ----------------------------------------------------------------------
# module-level operation surface


def val(x):
    """Additive valuation of a series: v(xy) = v(x) + v(y), ultrametric."""
    return x.val()


def residue(x):
    """Image of a nonnegative-valuation series in the residue field Q."""
    return x.residue()


def ramify(x, m):
    return x.ramify(m)


def divide(x, y, tau=None):
    """Quotient x/y with the tightest sound truncation.

    Raises DivisionByZero when y is exactly zero and PrecisionExhausted when
    y, or the quotient, has no known terms at the working precision.  When
    both inputs are exact the division is attempted exactly; if it does not
    terminate the quotient is cut DEFAULT_PRECISION exponent units past its
    leading term (or at ``tau`` when given).
    """
    if y.is_zero():
        raise DivisionByZero("division by the zero series")
    if not y.terms:
        raise PrecisionExhausted(
            f"divisor is zero up to truncation order {y.tau}", tau=y.tau
        )
    vy = y.val()
    if not x.terms:
        if x.tau == INF:
            return PuiseuxSeries.zero()
        raise PrecisionExhausted(
            f"quotient has no known terms below {x.tau - vy}", tau=x.tau - vy
        )
    vx = x.val()
    bound = min(x.tau - vy, y.tau + vx - 2 * vy)
    if tau is not None:
        bound = min(bound, tau if tau == INF else _as_fraction(tau))
    cap = vx - vy + DEFAULT_PRECISION
    exact_inputs = bound == INF

    e = lcm(x.e, y.e)
    sx = e // x.e
    sy = e // y.e
    rem = {n * sx: c for n, c in x.terms}
    yterms = [(n * sy, c) for n, c in y.terms]
    ny, cy = yterms[0]
    limit = bound if bound != INF else cap
    limit_num = limit * e
    quotient = {}
    terminated = False
    while True:
        if not rem:
            terminated = True
            break
        nr = min(rem)
        nq = nr - ny
        if nq >= limit_num:
            break
        cq = rem[nr] / cy
        quotient[nq] = cq
        for nk, ck in yterms:
            k = nq + nk
            v = rem.get(k, Fraction(0)) - cq * ck
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    if terminated and exact_inputs:
        result_tau = INF
    else:
        result_tau = limit
    return PuiseuxSeries(e, quotient.items(), result_tau)


def from_rational_function(p, q, tau=None, e=1):
    """Laurent expansion at t = 0 of the rational function p/q.

    ``p`` and ``q`` are dense coefficient sequences, ascending in u = t^(1/e)
    (e = 1 means plain polynomials in t).  The expansion is exact when the
    division terminates, otherwise truncated at ``tau`` (default: 64 units
    past the leading exponent).
    """
    pterms = [(i, _as_fraction(c)) for i, c in enumerate(p) if c]
    qterms = [(i, _as_fraction(c)) for i, c in enumerate(q) if c]
    if not qterms:
        raise ZeroDenominator("denominator polynomial is zero")
    ps = PuiseuxSeries(e, pterms)
    qs = PuiseuxSeries(e, qterms)
    if not pterms:
        return PuiseuxSeries.zero()
    return divide(ps, qs, tau=tau)

"""Dense polynomials and rational functions over Q, exact throughout.

Polynomials are tuples of Fractions, ascending in the variable.  These back
two different uses: coefficient entries of a parametric family (variable
t^(1/m)) and residue-field computations (variable z).  RatFunc is the field
of fractions with a canonical form (cancelled gcd, monic denominator), which
makes symbolic conjugation of families exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational

from .errors import DivisionByZero, ZeroDenominator
from .series import PuiseuxSeries, from_rational_function


def ptrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def pdeg(p):
    """Degree, -1 for the zero polynomial."""
    return len(ptrim(p)) - 1


def padd(p, q):
    n = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (n - len(p))
    q = list(q) + [Fraction(0)] * (n - len(q))
    return ptrim(a + b for a, b in zip(p, q))


def pneg(p):
    return tuple(-a for a in p)


def psub(p, q):
    return padd(p, pneg(q))


def pmul(p, q):
    p = ptrim(p)
    q = ptrim(q)
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return ptrim(out)


def pscale(p, c):
    c = Fraction(c)
    return ptrim(a * c for a in p)


def pdivmod(p, q):
    q = ptrim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(ptrim(p))
    quo = [Fraction(0)] * max(len(rem) - len(q) + 1, 0)
    lead = q[-1]
    while len(rem) >= len(q):
        c = rem[-1] / lead
        k = len(rem) - len(q)
        quo[k] = c
        for i, b in enumerate(q):
            rem[k + i] -= c * b
        while rem and not rem[-1]:
            rem.pop()
    return ptrim(quo), ptrim(rem)


def pgcd(p, q):
    """Monic gcd over Q; gcd(0, q) is monic q."""
    a, b = ptrim(p), ptrim(q)
    while b:
        a, b = b, pdivmod(a, b)[1]
    if not a:
        return ()
    return pscale(a, 1 / a[-1])


def peval(p, x):
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(ptrim(p)):
        acc = acc * x + c
    return acc


def pconst(c):
    c = Fraction(c)
    return (c,) if c else ()


def rational_roots(p):
    """All rational roots of a Q-coefficient polynomial, sorted.

    The residue field here is Q, not its algebraic closure, so roots in
    proper extensions are invisible; callers treating these as reduction
    centers inherit that limitation.
    """
    p = ptrim(p)
    if not p:
        return []
    roots = set()
    k = 0
    while k < len(p) and not p[k]:
        k += 1
    if k > 0:
        roots.add(Fraction(0))
        p = p[k:]
    if len(p) <= 1:
        return sorted(roots)
    # Clear denominators, then run the rational root test.
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return out

    for num in divisors(a0):
        for dv in divisors(an):
            for cand in (Fraction(num, dv), Fraction(-num, dv)):
                if peval(p, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


class RatFunc:
    """Rational function p/q over Q in one variable, in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        num = ptrim(Fraction(c) for c in num)
        den = ptrim(Fraction(c) for c in den)
        if not den:
            raise ZeroDenominator("rational function with zero denominator")
        if not num:
            den = (Fraction(1),)
        else:
            g = pgcd(num, den)
            if pdeg(g) > 0:
                num = pdivmod(num, g)[0]
                den = pdivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = pscale(num, 1 / lead)
                den = pscale(den, 1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def constant(cls, c):
        return cls(pconst(c))

    @classmethod
    def variable(cls):
        return cls((Fraction(0), Fraction(1)))

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return pdeg(self.num) <= 0 and pdeg(self.den) == 0

    def as_fraction(self):
        if not self.is_constant():
            raise ValueError(f"{self!r} is not a constant")
        return self.num[0] / self.den[0] if self.num else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Rational):
            return RatFunc.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(pmul(self.num, other.den), pmul(self.den, other.num))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RatFunc.constant(1) / self ** (-n)
        out = RatFunc.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    __hash__ = None

    def rescale_variable(self, k):
        """Substitute u -> u^k (k >= 1), for promoting ramification scales."""
        if k == 1:
            return self

        def stretch(p):
            out = [Fraction(0)] * (k * max(len(p) - 1, 0) + 1) if p else []
            for i, c in enumerate(p):
                out[i * k] = c
            return tuple(out)

        return RatFunc(stretch(self.num), stretch(self.den))

    def evaluate(self, x):
        """Exact value at a rational point; SampleUndefined is the caller's wrap."""
        d = peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return peval(self.num, x) / d

    def expand(self, tau=None, e=1):
        """Laurent expansion at t = 0 as a PuiseuxSeries, variable u = t^(1/e)."""
        if self.is_zero():
            return PuiseuxSeries.zero()
        return from_rational_function(self.num, self.den, tau=tau, e=e)

    def to_expr(self, var="t"):
        """Expression string the family-file grammar accepts."""

        def poly_str(p):
            if not p:
                return "0"
            parts = []
            for i, c in enumerate(p):
                if not c:
                    continue
                if i == 0:
                    s = str(c)
                elif i == 1:
                    s = var if c == 1 else f"-{var}" if c == -1 else f"{c}*{var}"
                else:
                    s = (
                        f"{var}^{i}"
                        if c == 1
                        else f"-{var}^{i}" if c == -1 else f"{c}*{var}^{i}"
                    )
                parts.append(s)
            out = parts[0]
            for s in parts[1:]:
                out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
            return out

        num = poly_str(self.num)
        if self.den == (Fraction(1),):
            return num
        den = poly_str(self.den)
        num_wrapped = f"({num})" if (pdeg(self.num) > 0 or len(ptrim(self.num)) > 1) else num
        den_wrapped = f"({den})" if (pdeg(self.den) > 0) else den
        return f"{num_wrapped}/{den_wrapped}"

    def __repr__(self):
        return self.to_expr()

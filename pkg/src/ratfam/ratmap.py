"""Degree-d rational maps over the Puiseux field K.

A map is stored as the coefficient pair of two degree-d binary forms,

    f = (a_0 z^d + ... + a_d) / (b_0 z^d + ... + b_d),

eagerly normalized so the minimum coefficient valuation is 0 and with its
resultant certified nonzero at construction.  The normalized resultant
valuation ord_res(f) = v(Res) - 2d * min_i v(coeff_i) is then simply v(Res)
of the stored pair; it is 0 exactly when the map has good reduction, i.e.
when the coefficientwise residue map still has degree d.

Everything is immutable and pure; maps can be shared freely between tasks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from numbers import Rational

from .errors import (
    AllZeroMap,
    DegenerateMap,
    PrecisionExhausted,
    SingularMatrix,
)
from .series import INF, PuiseuxSeries, divide


class _Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinity"


INFINITY = _Infinity()


def _coerce_series(value):
    if isinstance(value, PuiseuxSeries):
        return value
    if isinstance(value, Rational):
        return PuiseuxSeries.constant(value)
    raise TypeError(f"cannot use {value!r} as a series coefficient")


# ----------------------------------------------------------------------
# resultants


def sylvester_matrix(a, b):
    """Sylvester matrix of two degree-d binary forms given by descending
    coefficient tuples of equal length d+1."""
    d = len(a) - 1
    size = 2 * d
    zero = PuiseuxSeries.zero()
    rows = []
    for i in range(d):
        row = [zero] * size
        for j, c in enumerate(a):
            row[i + j] = c
        rows.append(row)
    for i in range(d):
        row = [zero] * size
        for j, c in enumerate(b):
            row[i + j] = c
        rows.append(row)
    return rows


def _entry_quotient(num, prev):
    # Bareiss steps divide exactly in the underlying ring; a numerator that
    # is zero up to truncation still has the sound bound tau - v(prev).
    if num.is_zero():
        return num
    if not num.terms:
        return PuiseuxSeries.truncated_zero(num.tau - prev.val(), num.e)
    return divide(num, prev)


def det_bareiss(matrix):
    """Fraction-free determinant over the series ring, with row pivoting.

    Returns the exact zero series for a certifiably singular matrix and
    raises PrecisionExhausted when singularity cannot be decided at the
    working truncation.
    """
    n = len(matrix)
    if n == 0:
        return PuiseuxSeries.constant(1)
    m = [list(row) for row in matrix]
    sign = 1
    prev = PuiseuxSeries.constant(1)
    for k in range(n - 1):
        piv = None
        fog = None
        for r in range(k, n):
            entry = m[r][k]
            if entry.terms:
                piv = r
                break
            if entry.is_truncated_zero():
                fog = entry.tau if fog is None else min(fog, entry.tau)
        if piv is None:
            if fog is not None:
                raise PrecisionExhausted(
                    "pivot column is zero up to truncation", tau=fog
                )
            return PuiseuxSeries.zero()
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = _entry_quotient(num, prev)
            m[i][k] = PuiseuxSeries.zero()
        prev = pivot
    result = m[n - 1][n - 1]
    return result if sign == 1 else -result


def sylvester_resultant(a, b):
    """Resultant of a raw coefficient pair (descending, equal lengths)."""
    a = tuple(_coerce_series(c) for c in a)
    b = tuple(_coerce_series(c) for c in b)
    if len(a) != len(b) or len(a) < 2:
        raise ValueError("need two coefficient tuples of equal length >= 2")
    return det_bareiss(sylvester_matrix(a, b))


def det_naive(matrix):
    """Cofactor-expansion determinant; independent cross-check for Bareiss."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = PuiseuxSeries.zero()
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = entry * det_naive(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


# ----------------------------------------------------------------------
# conjugation matrices


class ConjugationMatrix:
    """Invertible 2x2 matrix over K acting on maps by conjugation."""

    __slots__ = ("alpha", "beta", "gamma", "delta", "det")

    def __init__(self, alpha, beta, gamma, delta):
        alpha = _coerce_series(alpha)
        beta = _coerce_series(beta)
        gamma = _coerce_series(gamma)
        delta = _coerce_series(delta)
        det = alpha * delta - beta * gamma
        if det.is_zero():
            raise SingularMatrix("conjugation matrix has zero determinant")
        if not det.terms:
            raise PrecisionExhausted(
                "matrix determinant is zero up to truncation", tau=det.tau
            )
        for name, value in (
            ("alpha", alpha),
            ("beta", beta),
            ("gamma", gamma),
            ("delta", delta),
            ("det", det),
        ):
            object.__setattr__(self, name, value)

    def __setattr__(self, name, value):
        raise AttributeError("ConjugationMatrix is immutable")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def diagonal(cls, top, bottom):
        return cls(top, 0, 0, bottom)

    def scaled(self, factor):
        factor = _coerce_series(factor)
        return ConjugationMatrix(
            self.alpha * factor,
            self.beta * factor,
            self.gamma * factor,
            self.delta * factor,
        )

    def entries(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def __repr__(self):
        a, b, c, d = (x.to_expr() for x in self.entries())
        return f"[[{a},{b}],[{c},{d}]]"


# ----------------------------------------------------------------------
# binary-form helpers (descending coefficient tuples)


def _form_mul(p, q):
    out = [PuiseuxSeries.zero()] * (len(p) + len(q) - 1)
    for i, c in enumerate(p):
        if c.is_zero():
            continue
        for j, e in enumerate(q):
            if e.is_zero():
                continue
            out[i + j] = out[i + j] + c * e
    return tuple(out)


def _form_scale(p, c):
    return tuple(x * c for x in p)


def _form_add(p, q):
    return tuple(x + y for x, y in zip(p, q))


def _form_sub(p, q):
    return tuple(x - y for x, y in zip(p, q))


def _compose_form(coeffs, top, bottom):
    """Substitute a pair of degree-m forms into a degree-d form:
    sum_k c_k top^(d-k) bottom^k, a form of degree d*m."""
    d = len(coeffs) - 1
    m = len(top) - 1
    size = d * m + 1
    top_pow = [(PuiseuxSeries.constant(1),)]
    bottom_pow = [(PuiseuxSeries.constant(1),)]
    for _ in range(d):
        top_pow.append(_form_mul(top_pow[-1], top))
        bottom_pow.append(_form_mul(bottom_pow[-1], bottom))
    total = (PuiseuxSeries.zero(),) * size
    for k, c in enumerate(coeffs):
        if c.is_zero():
            continue
        piece = _form_mul(top_pow[d - k], bottom_pow[k])
        total = _form_add(total, _form_scale(piece, c))
    return total


# ----------------------------------------------------------------------
# polynomial gcd over K (descending coefficient tuples in z)


def _poly_degree_certified(p):
    """Index of the leading coefficient; raises when truncation hides it."""
    for i, c in enumerate(p):
        if c.terms:
            return i
        if c.is_truncated_zero():
            raise PrecisionExhausted(
                "polynomial degree uncertain at this truncation", tau=c.tau
            )
    return None


def _poly_divmod_series(p, q):
    iq = _poly_degree_certified(q)
    if iq is None:
        raise ZeroDivisionError("division by zero polynomial")
    q = q[iq:]
    rem = list(p)
    lead = q[0]
    while True:
        ir = _poly_degree_certified(rem)
        if ir is None or len(rem) - ir < len(q):
            break
        c = divide(rem[ir], lead)
        for j, y in enumerate(q):
            rem[ir + j] = rem[ir + j] - c * y
        rem[ir] = PuiseuxSeries.zero()
    return tuple(rem)


def poly_gcd_series(p, q):
    """Monic-ish gcd of two polynomials over K by Euclid's algorithm."""
    a, b = tuple(p), tuple(q)
    while True:
        ib = _poly_degree_certified(b)
        if ib is None:
            ia = _poly_degree_certified(a)
            if ia is None:
                return (PuiseuxSeries.zero(),)
            return a[ia:]
        a, b = b, _poly_divmod_series(a, b)


# ----------------------------------------------------------------------
# residue maps


class ResidueMap:
    """Image of a good-or-bad reduction in Rat(Q): cancelled coefficient
    pair over the residue field with its actual degree."""

    __slots__ = ("degree", "num", "den")

    def __init__(self, degree, num, den):
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", tuple(den))

    def __setattr__(self, name, value):
        raise AttributeError("ResidueMap is immutable")

    def __eq__(self, other):
        if not isinstance(other, ResidueMap):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.num == other.num
            and self.den == other.den
        )

    __hash__ = None

    def __repr__(self):
        return f"ResidueMap(degree={self.degree}, num={self.num}, den={self.den})"


# ----------------------------------------------------------------------
# the map itself


class ValuedRationalMap:
    """A degree-d rational map over K in normalized form."""

    __slots__ = ("d", "a", "b", "res")

    def __init__(self, a, b, _uncertain="degenerate"):
        a = tuple(_coerce_series(c) for c in a)
        b = tuple(_coerce_series(c) for c in b)
        if len(a) != len(b):
            raise ValueError("numerator and denominator need equal coefficient counts")
        d = len(a) - 1
        if d < 1:
            raise ValueError("degree must be at least 1")
        a, b = _normalize_pair(a, b)
        res = det_bareiss(sylvester_matrix(a, b))
        if res.is_zero():
            raise DegenerateMap(f"resultant of the degree-{d} pair is zero")
        if not res.terms:
            if _uncertain == "precision":
                raise PrecisionExhausted(
                    "resultant is zero up to truncation", tau=res.tau
                )
            raise DegenerateMap(
                f"resultant is zero up to truncation order {res.tau}"
            )
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "res", res)

    def __setattr__(self, name, value):
        raise AttributeError("ValuedRationalMap is immutable")

    # -- basic invariants ------------------------------------------------

    def ord_res(self):
        """Normalized resultant valuation; >= 0, zero iff good reduction."""
        return self.res.val()

    def good_reduction(self):
        return self.ord_res() == 0

    def reduce(self):
        """Coefficientwise residue map with common factors cancelled."""
        from .ratfunc import pdeg, pdivmod, pgcd, ptrim

        num = ptrim(reversed([c.residue() for c in self.a]))
        den = ptrim(reversed([c.residue() for c in self.b]))
        g = pgcd(num, den)
        if pdeg(g) > 0:
            num = pdivmod(num, g)[0] if num else num
            den = pdivmod(den, g)[0] if den else den
        degree = max(pdeg(num), pdeg(den))
        return ResidueMap(max(degree, 0), num, den)

    def in_beth(self):
        """Every degree-2d coefficient monomial divided by the resultant has
        nonnegative valuation.  Equivalent to good reduction; kept as an
        independently computed cross-check."""
        rho = self.res.val()
        vals = [c.val() for c in self.a + self.b]
        n = len(vals)
        for combo in combinations_with_replacement(range(n), 2 * self.d):
            total = Fraction(0)
            vanishes = False
            for i in combo:
                if vals[i] == INF:
                    vanishes = True
                    break
                total += vals[i]
            if vanishes:
                continue
            if total < rho:
                return False
        return True

    # -- group action ----------------------------------------------------

    def conjugate_raw(self, matrix):
        """Coefficient pair of f^M before renormalization.

        The raw pair satisfies v(Res) = v(Res f) + (d^2+d) v(det M) exactly.
        """
        alpha, beta, gamma, delta = matrix.entries()
        top = (alpha, beta)
        bottom = (gamma, delta)
        composed_num = _compose_form(self.a, top, bottom)
        composed_den = _compose_form(self.b, top, bottom)
        new_a = _form_sub(_form_scale(composed_num, delta), _form_scale(composed_den, beta))
        new_b = _form_sub(_form_scale(composed_den, alpha), _form_scale(composed_num, gamma))
        return new_a, new_b

    def conjugate(self, matrix):
        new_a, new_b = self.conjugate_raw(matrix)
        return ValuedRationalMap(new_a, new_b, _uncertain="precision")

    # -- dynamics ----------------------------------------------------------

    def iterate(self, power):
        """The map composed with itself ``power`` times; degree d**power.

        Composition of coprime pairs stays coprime; the certified-nonzero
        resultant of the constructed map is the coprimality check.  Euclid
        over K only runs when the resultant genuinely vanishes, because
        series division inside Euclid loses precision even on coprime exact
        inputs.
        """
        if power < 1:
            raise ValueError("iteration power must be at least 1")
        num, den = self.a, self.b
        for _ in range(power - 1):
            num, den = (
                _compose_form(self.a, num, den),
                _compose_form(self.b, num, den),
            )
        try:
            return ValuedRationalMap(num, den, _uncertain="precision")
        except DegenerateMap:
            g = poly_gcd_series(num, den)
            if len(g) > 1:
                num = _poly_divmod_quotient(num, g)
                den = _poly_divmod_quotient(den, g)
            return ValuedRationalMap(num, den, _uncertain="precision")

    def evaluate(self, z):
        """Projective evaluation at a point of K or at infinity."""
        if z is INFINITY:
            top, bottom = self.a[0], self.b[0]
        else:
            z = _coerce_series(z)
            top = PuiseuxSeries.zero()
            bottom = PuiseuxSeries.zero()
            for c in self.a:
                top = top * z + c
            for c in self.b:
                bottom = bottom * z + c
        if bottom.is_zero():
            return INFINITY
        if not bottom.terms:
            raise PrecisionExhausted(
                "denominator vanishes up to truncation at this point",
                tau=bottom.tau,
            )
        if top.is_zero():
            return PuiseuxSeries.zero()
        return divide(top, bottom)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ValuedRationalMap):
            return NotImplemented
        if self.d != other.d:
            return False
        mine = self.a + self.b
        theirs = other.a + other.b
        for i, j in combinations(range(len(mine)), 2):
            if not (mine[i] * theirs[j]).agrees(mine[j] * theirs[i]):
                return False
        return True

    __hash__ = None

    def coefficients(self):
        return self.a, self.b

    def __repr__(self):
        num = ", ".join(c.to_expr() for c in self.a)
        den = ", ".join(c.to_expr() for c in self.b)
        return f"ValuedRationalMap(d={self.d}, num=[{num}], den=[{den}])"


def _poly_divmod_quotient(p, q):
    """Exact quotient p/q over K for polynomials known to divide."""
    iq = _poly_degree_certified(q)
    q = q[iq:]
    rem = list(p)
    quo = [PuiseuxSeries.zero()] * (len(p) - len(q) + 1)
    lead = q[0]
    while True:
        ir = _poly_degree_certified(rem)
        if ir is None or len(rem) - ir < len(q):
            break
        c = divide(rem[ir], lead)
        quo[ir] = c
        for j, y in enumerate(q):
            rem[ir + j] = rem[ir + j] - c * y
        rem[ir] = PuiseuxSeries.zero()
    return tuple(quo)


def _normalize_pair(a, b):
    """Rescale (a, b) by a power of t so the minimum coefficient valuation
    is exactly 0."""
    minimum = None
    fog = None
    for c in a + b:
        if c.terms:
            v = c.val()
            minimum = v if minimum is None else min(minimum, v)
        elif c.is_truncated_zero():
            fog = c.tau if fog is None else min(fog, c.tau)
    if minimum is None:
        if fog is not None:
            raise PrecisionExhausted(
                "all coefficients are zero up to truncation", tau=fog
            )
        raise AllZeroMap("all coefficients are exactly zero")
    if fog is not None and fog <= minimum:
        raise PrecisionExhausted(
            "minimum coefficient valuation uncertain at this truncation", tau=fog
        )
    if minimum == 0:
        return a, b
    scale = PuiseuxSeries.t_power(-minimum)
    return tuple(c * scale for c in a), tuple(c * scale for c in b)


# ----------------------------------------------------------------------
# operation surface


def new_map(a, b, d=None):
    """Build and normalize a degree-d map, certifying a nonzero resultant."""
    f = ValuedRationalMap(a, b)
    if d is not None and f.d != d:
        raise ValueError(f"coefficient count {f.d + 1} does not match degree {d}")
    return f


def resultant(f):
    """Sylvester resultant of the stored normalized coefficient pair."""
    return f.res


def ord_res(f):
    return f.ord_res()


def good_reduction(f):
    return f.good_reduction()


def reduce_map(f):
    return f.reduce()


def in_beth(f):
    return f.in_beth()


def conjugate(f, matrix):
    return f.conjugate(matrix)


def iterate(f, power):
    return f.iterate(power)


def evaluate(f, z):
    return f.evaluate(z)

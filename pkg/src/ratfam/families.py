"""Parametric families of rational maps and their non-archimedean limits.

A family is a degree-d map whose coefficients are exact rational functions
of the parameter t (more generally of t^(1/m)).  Its limit as t -> 0 is the
map over K obtained by expanding every coefficient as a Laurent series; the
classifier then reads the boundary behavior off the limit:

    interior          the limit has good reduction: the sampled maps stay in
                      a compact part of the space of degree-d maps;
    boundary_pgr      bad reduction but a conjugation repairs it: the
                      conjugacy classes converge in moduli space;
    boundary_no_pgr   no conjugation repairs it: the classes leave every
                      compact set and the family survives on the boundary.

``verify_convergence`` checks the hybrid convergence numerically: sampling
the family at t = t0^n, the n-th root of |P(coefficients)| must approach
t0^(v_t(P(limit))) for every coordinate polynomial P.  Samples are exact
rationals; only the final decimal logarithm is floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, log10

from .errors import InconclusiveSearch, SampleUndefined, SingularMatrix
from .mpoly import mp_eval
from .ratfunc import RatFunc
from .ratmap import ValuedRationalMap
from .reduction import (
    INCONCLUSIVE,
    NO_PGR,
    PGR,
    minimize_ord_res,
)
from .series import DEFAULT_PRECISION, INF, PuiseuxSeries

INTERIOR = "interior"
BOUNDARY_PGR = "boundary_pgr"
BOUNDARY_NO_PGR = "boundary_no_pgr"


@dataclass(frozen=True)
class FamilySpec:
    """Degree-d family with rational-function coefficients, descending order.

    ``scale`` = m means the coefficient entries are rational functions of
    u = t^(1/m); entries evaluate and expand through that substitution.
    """

    d: int
    num: tuple
    den: tuple
    scale: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("degree must be at least 1")
        if len(self.num) != self.d + 1 or len(self.den) != self.d + 1:
            raise ValueError(f"need {self.d + 1} coefficients on each side")
        if all(c.is_zero() for c in self.den) and all(c.is_zero() for c in self.num):
            raise ValueError("family is identically zero")

    def rescaled(self, m):
        """The same family viewed with scale m (a multiple of the current)."""
        if m % self.scale:
            raise ValueError("can only rescale to a multiple of the current scale")
        k = m // self.scale
        return FamilySpec(
            self.d,
            tuple(c.rescale_variable(k) for c in self.num),
            tuple(c.rescale_variable(k) for c in self.den),
            m,
        )

    def coefficient_values(self, t_value):
        """Raw coefficient vector of the member map at an exact parameter value."""
        if self.scale != 1:
            raise SampleUndefined(
                "coefficients involve fractional powers of t; "
                "exact sampling is only defined for integer-exponent families"
            )
        t_value = Fraction(t_value)
        values = []
        for entry in self.num + self.den:
            try:
                values.append(entry.evaluate(t_value))
            except ZeroDivisionError as exc:
                raise SampleUndefined(
                    f"coefficient has a pole at t = {t_value}"
                ) from exc
        return values


@dataclass(frozen=True)
class MatrixFamily:
    """2x2 matrix with rational-function entries, same conventions."""

    alpha: RatFunc
    beta: RatFunc
    gamma: RatFunc
    delta: RatFunc
    scale: int = 1

    @classmethod
    def identity(cls):
        return cls(RatFunc.constant(1), RatFunc.constant(0), RatFunc.constant(0), RatFunc.constant(1))

    def rescaled(self, m):
        if m % self.scale:
            raise ValueError("can only rescale to a multiple of the current scale")
        k = m // self.scale
        return MatrixFamily(
            self.alpha.rescale_variable(k),
            self.beta.rescale_variable(k),
            self.gamma.rescale_variable(k),
            self.delta.rescale_variable(k),
            m,
        )

    def determinant(self):
        return self.alpha * self.delta - self.beta * self.gamma

    def entries(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def limit_matrix(self, tau=None):
        """Entrywise series expansion, as a conjugation matrix over K."""
        from .ratmap import ConjugationMatrix

        a, b, c, d = (e.expand(tau=tau, e=self.scale) for e in self.entries())
        return ConjugationMatrix(a, b, c, d)


def family_limit(spec, tau=None):
    """The non-archimedean limit: expand every coefficient at t = 0."""
    num = tuple(c.expand(tau=tau, e=spec.scale) for c in spec.num)
    den = tuple(c.expand(tau=tau, e=spec.scale) for c in spec.den)
    return ValuedRationalMap(num, den)


@dataclass(frozen=True)
class FamilyClassification:
    label: str
    limit: ValuedRationalMap
    ord_res: Fraction
    pgr: object = None  # PgrReport when the limit is a boundary point


def classify_family(spec, tau=None, config=None):
    """End-to-end classifier: limit, then boundary sub-label via pgr search."""
    limit = family_limit(spec, tau=tau)
    value = limit.ord_res()
    if value == 0:
        return FamilyClassification(INTERIOR, limit, value)
    base_tau = tau if tau is not None else Fraction(DEFAULT_PRECISION)

    def refine(factor):
        return family_limit(spec, tau=base_tau * factor)

    report = minimize_ord_res(limit, config=config, refine=refine)
    if report.verdict == PGR:
        return FamilyClassification(BOUNDARY_PGR, limit, value, report)
    if report.verdict == NO_PGR:
        return FamilyClassification(BOUNDARY_NO_PGR, limit, value, report)
    raise InconclusiveSearch(
        f"pgr search inconclusive: {report.note}", report=report
    )


# ----------------------------------------------------------------------
# numeric verification of the hybrid convergence


@dataclass(frozen=True)
class SampleRow:
    n: int
    epsilon: Fraction
    value: Fraction
    measured_log10: float
    predicted_log10: float
    deviation: object  # Fraction(0) for exact matches, float otherwise


@dataclass(frozen=True)
class ConvergenceReport:
    t0: Fraction
    target_valuation: object  # Fraction, or INF when P vanishes on the limit
    rows: tuple
    tail_max_deviation: object

    def tail_rows(self):
        n_max = self.rows[-1].n
        return tuple(r for r in self.rows if r.n > n_max // 2)


def _flog10(q):
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log of a nonpositive rational")
    return log10(q.numerator) - log10(q.denominator)


def verify_convergence(spec, poly, t0, n_samples, tau=None):
    """Sample |P(coefficients of f(t0^n))|^(1/n) against the limit valuation.

    Deviations are measured in decimal log space: the difference between
    log10 of the sampled n-th root and log10 of the predicted t0 power.
    Samples whose value is exactly +-t0^(n*v) report a deviation of exact
    rational zero.  The tail statistic is the maximum over the second half
    of the samples.
    """
    t0 = Fraction(t0)
    if not 0 < t0 < 1:
        raise ValueError("t0 must lie strictly between 0 and 1")
    n_samples = int(n_samples)
    if n_samples < 5:
        raise ValueError("need at least 5 samples")

    limit_coords = [c.expand(tau=tau, e=spec.scale) for c in spec.num + spec.den]
    image = mp_eval(poly, limit_coords, PuiseuxSeries.constant(1))
    target = image.val_certified()

    log_t0 = _flog10(t0)
    rows = []
    for n in range(1, n_samples + 1):
        values = spec.coefficient_values(t0**n)
        y = mp_eval(poly, values, Fraction(1))
        if target == INF:
            if y == 0:
                rows.append(SampleRow(n, Fraction(1, n), y, -INF, -INF, Fraction(0)))
            else:
                rows.append(
                    SampleRow(n, Fraction(1, n), y, _flog10(abs(y)) / n, -INF, INF)
                )
            continue
        predicted_log = float(target) * log_t0
        if y == 0:
            rows.append(SampleRow(n, Fraction(1, n), y, -INF, predicted_log, INF))
            continue
        exponent = target * n
        if exponent.denominator == 1 and abs(y) == t0 ** int(exponent):
            # The sample is an exact power of t0: zero deviation, exactly.
            rows.append(
                SampleRow(n, Fraction(1, n), y, predicted_log, predicted_log, Fraction(0))
            )
            continue
        measured_log = _flog10(abs(y)) / n
        rows.append(
            SampleRow(
                n,
                Fraction(1, n),
                y,
                measured_log,
                predicted_log,
                abs(measured_log - predicted_log),
            )
        )
    tail = [r.deviation for r in rows if r.n > n_samples // 2]
    tail_max = max(tail, key=lambda d: (d == INF, float(d)))
    return ConvergenceReport(t0, target, tuple(rows), tail_max)


# ----------------------------------------------------------------------
# limits of conjugated families


def _rf_form_mul(p, q):
    zero = RatFunc.constant(0)
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            if b.is_zero():
                continue
            out[i + j] = out[i + j] + a * b
    return tuple(out)


def _rf_compose_form(coeffs, top, bottom):
    d = len(coeffs) - 1
    zero = RatFunc.constant(0)
    total = [zero] * (d * (len(top) - 1) + 1)
    piece_top = [(RatFunc.constant(1),)]
    for _ in range(d):
        piece_top.append(_rf_form_mul(piece_top[-1], top))
    piece_bottom = [(RatFunc.constant(1),)]
    for _ in range(d):
        piece_bottom.append(_rf_form_mul(piece_bottom[-1], bottom))
    for k, c in enumerate(coeffs):
        if c.is_zero():
            continue
        piece = _rf_form_mul(piece_top[d - k], piece_bottom[k])
        for i, x in enumerate(piece):
            total[i] = total[i] + x * c
    return tuple(total)


def conjugate_family(spec, matrix):
    """The conjugated family, computed exactly at the rational-function level."""
    m = lcm(spec.scale, matrix.scale)
    spec = spec.rescaled(m)
    matrix = matrix.rescaled(m)
    if matrix.determinant().is_zero():
        raise SingularMatrix("matrix family has identically zero determinant")
    alpha, beta, gamma, delta = matrix.entries()
    top = (alpha, beta)
    bottom = (gamma, delta)
    composed_num = _rf_compose_form(spec.num, top, bottom)
    composed_den = _rf_compose_form(spec.den, top, bottom)
    new_num = tuple(delta * a - beta * b for a, b in zip(composed_num, composed_den))
    new_den = tuple(alpha * b - gamma * a for a, b in zip(composed_num, composed_den))
    return FamilySpec(spec.d, new_num, new_den, m)


@dataclass(frozen=True)
class ConjugatedLimit:
    map: ValuedRationalMap
    beth_landing: bool  # the limit has good reduction: it leaves the boundary
    family: FamilySpec


def conjugated_family_limit(spec, matrix, tau=None):
    """Limit of the conjugated family; equals the conjugate of the limit.

    When the result has good reduction the conjugated family no longer
    degenerates at all, which the ``beth_landing`` flag records.
    """
    conjugated = conjugate_family(spec, matrix)
    limit = family_limit(conjugated, tau=tau)
    return ConjugatedLimit(limit, limit.good_reduction(), conjugated)

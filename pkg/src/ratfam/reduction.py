"""Potential good reduction via exact minimization over conjugations.

The search space is the tree of upper-triangular conjugations

    M(s, b) = [[t^s, b], [0, t^-s]],    s in Q, b in K,

a unimodular representative of the scaling-by-t^(2s), centered-at-b chart.
The objective ord_res(f^M(s,b)) is evaluated exactly; a deterministic
coordinate descent refines s by halved steps and refines the center b by
rational roots of the residue forms at the current point.  A verdict of
``no_pgr`` is only emitted after an independent brute-force grid confirms
that the descent minimum is not beaten; descent alone yields
``inconclusive``.

Verdicts are relative to the implemented search field: the residue field
here is Q, so a witness whose reduction center needs an algebraic residue
extension is out of reach and the search reports what it certified, never
more.  Probes are pure and independent; the descent loop itself is
sequential and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import BudgetExhausted, InconclusiveSearch, PrecisionExhausted
from .ratfunc import rational_roots
from .ratmap import ConjugationMatrix, ValuedRationalMap
from .series import PuiseuxSeries

PGR = "pgr"
NO_PGR = "no_pgr"
INCONCLUSIVE = "inconclusive"

CONVERGES_IN_MD = "converges_in_Md"
DEGENERATES_IN_MD = "degenerates_in_Md"


@dataclass(frozen=True)
class SearchConfig:
    """Bounds for the descent; defaults cover desk examples of degree <= 3."""

    s_bound: Fraction = Fraction(4)
    e_max: int = 12
    delta_min: Fraction = Fraction(1, 12)
    max_probes: int = 5000
    grid_step: Fraction = Fraction(1, 4)


class TreePoint:
    """A conjugation class: radius exponent s and center shift b."""

    __slots__ = ("s", "shift")

    def __init__(self, s, shift=None):
        object.__setattr__(self, "s", Fraction(s))
        if shift is None:
            shift = PuiseuxSeries.zero()
        object.__setattr__(self, "shift", shift)

    def __setattr__(self, name, value):
        raise AttributeError("TreePoint is immutable")

    @classmethod
    def base(cls):
        """The Gauss point: the identity conjugation."""
        return cls(Fraction(0))

    def matrix(self):
        top = PuiseuxSeries.t_power(self.s)
        bottom = PuiseuxSeries.t_power(-self.s)
        return ConjugationMatrix(top, self.shift, PuiseuxSeries.zero(), bottom)

    def shifted(self, c):
        """Move the center by c * t^s (c rational)."""
        return TreePoint(self.s, self.shift + PuiseuxSeries.t_power(self.s, c))

    def ramification(self):
        return lcm(self.s.denominator, self.shift.coarsen().e)

    def key(self):
        canon = self.shift.coarsen()
        return (self.s, canon.e, canon.terms, canon.tau)

    def __eq__(self, other):
        if not isinstance(other, TreePoint):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash((self.s, self.shift.coarsen().terms))

    def __repr__(self):
        return f"TreePoint(s={self.s}, shift={self.shift.to_expr()})"


@dataclass(frozen=True)
class PgrReport:
    """Outcome of a potential-good-reduction search.

    ``verdict == "pgr"`` implies min_value == 0 and the witness conjugation
    was re-checked to give good reduction; ``"no_pgr"`` implies the descent
    minimum survived the oracle grid.  Inconclusive verdicts report the
    ramification cap they searched under.
    """

    verdict: str
    min_value: Fraction | None
    witness: TreePoint | None
    ramification: int
    probes: int
    witness_verified: bool | None = None
    note: str = ""


class _Prober:
    """Cached, budgeted evaluation of the objective at tree points."""

    def __init__(self, f, config, refine=None):
        self.f = f
        self.config = config
        self.refine = refine
        self.cache = {}
        self.probes = 0
        self.retried = False
        self.best_value = None
        self.best_point = None

    def value_and_map(self, point):
        key = point.key()
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        while True:
            if self.probes >= self.config.max_probes:
                raise BudgetExhausted(
                    f"probe budget {self.config.max_probes} exhausted"
                )
            self.probes += 1
            try:
                conj = self.f.conjugate(point.matrix())
                out = (conj.ord_res(), conj)
                break
            except PrecisionExhausted:
                # Resultants consume precision unpredictably: retry once
                # with doubled truncation when the caller can re-expand.
                if self.retried or self.refine is None:
                    raise
                self.retried = True
                self.f = self.refine(2)
                self.cache.clear()
        self.cache[key] = out
        if self.best_value is None or out[0] < self.best_value:
            self.best_value = out[0]
            self.best_point = point
        return out

    def value(self, point):
        return self.value_and_map(point)[0]


def ord_res_at(f, point):
    """The objective: ord_res of f conjugated by the point's matrix."""
    return f.conjugate(point.matrix()).ord_res()


def _shift_candidates(conjugated):
    """Rational roots of the reduced numerator/denominator forms, plus 0, +-1."""
    reduced = conjugated.reduce()
    candidates = {Fraction(0), Fraction(1), Fraction(-1)}
    candidates.update(rational_roots(reduced.num))
    candidates.update(rational_roots(reduced.den))
    return sorted(candidates)


def _ordered_s(values):
    return sorted(values, key=lambda s: (abs(s), s))


def _grid_s_values(config):
    step = config.grid_step
    k_max = int(config.s_bound / step)
    return _ordered_s([k * step for k in range(-k_max, k_max + 1)])


def brute_force_min(f, s_values, shifts="roots", _prober=None):
    """Exact minimum of the objective over a finite grid.

    ``shifts`` is either the string "roots" (centers from rational roots of
    the residue forms at each (s, 0), plus 0 and +-1) or an explicit sequence
    of rational constants c, probed as centers c * t^s.  Returns
    (value, argmin); ties keep the earliest point in the deterministic
    (|s|, s, c) order.
    """
    prober = _prober or _Prober(f, SearchConfig(max_probes=10**9))
    best = None
    best_point = None
    for s in _ordered_s(Fraction(v) for v in s_values):
        origin = TreePoint(s)
        value, conj = prober.value_and_map(origin)
        if best is None or value < best:
            best, best_point = value, origin
        if shifts == "roots":
            candidates = [c for c in _shift_candidates(conj) if c != 0]
        else:
            candidates = [Fraction(c) for c in shifts if Fraction(c) != 0]
        for c in candidates:
            point = origin.shifted(c)
            value = prober.value(point)
            if value < best:
                best, best_point = value, point
    return best, best_point


def _descent_deltas(config):
    deltas = []
    delta = Fraction(1)
    while delta >= config.delta_min:
        deltas.append(delta)
        delta /= 2
    return deltas


def _candidate_moves(prober, current, config):
    """All legal single moves from the current point, with tie-break keys."""
    moves = []
    for delta in _descent_deltas(config):
        for signed in (-delta, delta):
            new_s = current.s + signed
            if abs(new_s) > config.s_bound or new_s.denominator > config.e_max:
                continue
            moves.append((TreePoint(new_s, current.shift), (abs(signed), signed, Fraction(0))))
    _, conj = prober.value_and_map(current)
    for c in _shift_candidates(conj):
        if c == 0:
            continue
        moves.append((current.shifted(c), (Fraction(0), Fraction(0), c)))
    return moves


def _report_ramification(f, point, config, verdict):
    if verdict == PGR and point is not None:
        e = 1
        for coeff in f.a + f.b:
            e = lcm(e, coeff.coarsen().e)
        return lcm(e, point.ramification())
    return config.e_max


def minimize_ord_res(f, config=None, refine=None):
    """Deterministic descent for min ord_res over the conjugation tree.

    Moves only to strictly smaller objective values, preferring the smallest
    |s| change and then the lexicographically smallest shift candidate among
    ties.  Stops at 0 (verdict pgr, witness re-checked), at a local minimum
    the brute-force grid cannot beat (verdict no_pgr), or on budget or
    precision exhaustion (verdict inconclusive, never a wrong verdict).
    """
    config = config or SearchConfig()
    prober = _Prober(f, config, refine)
    current = TreePoint.base()
    try:
        value, _ = prober.value_and_map(current)
        while value > 0:
            moves = _candidate_moves(prober, current, config)
            scored = []
            for point, key in moves:
                scored.append((prober.value(point), key, point))
            scored.sort(key=lambda item: (item[0], item[1]))
            if scored and scored[0][0] < value:
                value = scored[0][0]
                current = scored[0][2]
                continue
            # Local minimum: confirm against the independent grid.
            grid_value, grid_point = brute_force_min(
                prober.f, _grid_s_values(config), shifts="roots", _prober=prober
            )
            if grid_value < value:
                current = grid_point
                value = grid_value
                continue
            return PgrReport(
                verdict=NO_PGR,
                min_value=value,
                witness=current,
                ramification=_report_ramification(prober.f, current, config, NO_PGR),
                probes=prober.probes,
            )
        conj = prober.f.conjugate(current.matrix())
        verified = conj.good_reduction()
        return PgrReport(
            verdict=PGR,
            min_value=Fraction(0),
            witness=current,
            ramification=_report_ramification(prober.f, current, config, PGR),
            probes=prober.probes,
            witness_verified=verified,
        )
    except BudgetExhausted:
        return PgrReport(
            verdict=INCONCLUSIVE,
            min_value=prober.best_value,
            witness=prober.best_point,
            ramification=config.e_max,
            probes=prober.probes,
            note=f"probe budget {config.max_probes} exhausted",
        )
    except PrecisionExhausted as exc:
        return PgrReport(
            verdict=INCONCLUSIVE,
            min_value=prober.best_value,
            witness=prober.best_point,
            ramification=config.e_max,
            probes=prober.probes,
            note=f"precision exhausted (knowledge stops at t^{exc.tau})",
        )


def classify_quotient(f, config=None, refine=None):
    """Boundary behavior of the conjugacy class of a bad-reduction map.

    Potential good reduction means the class of f(t) converges in the moduli
    space of degree-d maps as t -> 0; no potential good reduction means the
    class leaves every compact set and survives on the compactified boundary.
    """
    if f.ord_res() == 0:
        raise ValueError(
            "map has good reduction; quotient classification applies to boundary points"
        )
    report = minimize_ord_res(f, config=config, refine=refine)
    if report.verdict == PGR:
        return CONVERGES_IN_MD
    if report.verdict == NO_PGR:
        return DEGENERATES_IN_MD
    raise InconclusiveSearch(
        f"pgr search inconclusive: {report.note}", report=report
    )

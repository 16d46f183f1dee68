"""Sparse multivariate polynomials over Q.

Used for symbolic coordinate functions on the space of degree-d maps: the
2d+2 coefficient variables (a_0..a_d, b_0..b_d) and the resultant polynomial
in them.  A polynomial is a dict {exponent tuple: Fraction}; evaluation works
over any commutative ring whose elements support +, * and integer powers
(Fractions and PuiseuxSeries both qualify).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations


def mp_zero():
    return {}


def mp_const(c, nvars):
    c = Fraction(c)
    if not c:
        return {}
    return {(0,) * nvars: c}


def mp_var(i, nvars):
    exps = [0] * nvars
    exps[i] = 1
    return {tuple(exps): Fraction(1)}


def mp_add(p, q):
    out = dict(p)
    for mono, c in q.items():
        v = out.get(mono, Fraction(0)) + c
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def mp_neg(p):
    return {m: -c for m, c in p.items()}


def mp_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(m, Fraction(0)) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def mp_eval(p, values, one):
    """Evaluate at a point of any commutative Q-algebra; ``one`` is its unit."""
    total = None
    for mono, c in sorted(p.items()):
        term = one * c
        for value, k in zip(values, mono):
            if k:
                term = term * value**k
        total = term if total is None else total + term
    if total is None:
        return one * 0
    return total


def mp_degree(p):
    return max((sum(m) for m in p), default=-1)


def coefficient_variables(d):
    """The 2d+2 coordinate monomials a_0..a_d, b_0..b_d, in order."""
    n = 2 * d + 2
    return [mp_var(i, n) for i in range(n)]


def variable_names(d):
    return [f"a{i}" for i in range(d + 1)] + [f"b{i}" for i in range(d + 1)]


def sylvester_of_variables(d):
    """Sylvester matrix of two generic degree-d binary forms, entries mpolys."""
    n = 2 * d + 2
    avars = [mp_var(i, n) for i in range(d + 1)]
    bvars = [mp_var(d + 1 + i, n) for i in range(d + 1)]
    size = 2 * d
    rows = []
    for i in range(d):
        row = [mp_zero()] * size
        for j, v in enumerate(avars):
            row[i + j] = v
        rows.append(row)
    for i in range(d):
        row = [mp_zero()] * size
        for j, v in enumerate(bvars):
            row[i + j] = v
        rows.append(row)
    return rows


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def resultant_poly(d):
    """The degree-d resultant as a polynomial in the coefficient variables.

    Computed by permutation expansion of the symbolic Sylvester matrix; every
    entry is a single variable or zero, so each permutation contributes one
    signed monomial.  Feasible for the desk degrees (2d x 2d with d <= 4).
    """
    rows = sylvester_of_variables(d)
    size = 2 * d
    out = {}
    for perm in permutations(range(size)):
        mono_vars = []
        ok = True
        for i in range(size):
            entry = rows[i][perm[i]]
            if not entry:
                ok = False
                break
            mono_vars.append(next(iter(entry)))
        if not ok:
            continue
        mono = tuple(sum(col) for col in zip(*mono_vars))
        sign = _perm_sign(perm)
        v = out.get(mono, Fraction(0)) + sign
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out

"""Family files: a small self-describing key=value format.

    degree=1; num=[1, -t]; den=[1/t, 1]

Statements are separated by semicolons or newlines, ``#`` starts a comment,
whitespace is insignificant.  Coefficient entries are expressions over
integers and ``t`` with ``+ - * / ^`` and parentheses; ``^`` takes integer
exponents, except directly on ``t`` where a parenthesized rational exponent
such as ``t^(1/2)`` is accepted so that search witnesses can be fed back in.
Optional keys: ``t0``, ``samples``, ``precision``, ``max_probes``,
``search_depth``, ``max_ramification``, and ``conjugate`` (a 2x2 matrix of
entries).  Parse errors carry line and column numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import (
    ArityError,
    DegreeError,
    DivisionByZero,
    FamilySyntaxError,
    ZeroDenominator,
)
from .families import FamilySpec, MatrixFamily
from .ratfunc import RatFunc

_OPTION_KEYS = {
    "t0": "rational",
    "precision": "rational",
    "search_depth": "rational",
    "samples": "integer",
    "max_probes": "integer",
    "max_ramification": "integer",
}


# ----------------------------------------------------------------------
# tokenizer


@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER NAME OP NEWLINE END
    value: str
    line: int
    column: int


def _tokenize(text):
    tokens = []
    line = 1
    column = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            tokens.append(_Token("NEWLINE", "\n", line, column))
            line += 1
            column = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            column += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(_Token("NUMBER", text[start:i], line, column))
            column += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("NAME", text[start:i], line, column))
            column += i - start
            continue
        if ch in "+-*/^()[],=;":
            tokens.append(_Token("OP", ch, line, column))
            i += 1
            column += 1
            continue
        raise FamilySyntaxError(f"unexpected character {ch!r}", line, column)
    tokens.append(_Token("END", "", line, column))
    return tokens


# ----------------------------------------------------------------------
# expression parsing into a small AST
#
# nodes: ("num", Fraction) ("t",) ("tpow", Fraction)
#        ("neg", x) ("add"|"sub"|"mul"|"div", x, y) ("pow", x, int)


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, token=None):
        token = token or self.peek()
        raise FamilySyntaxError(message, token.line, token.column)

    def accept_op(self, *ops):
        tok = self.peek()
        if tok.kind == "OP" and tok.value in ops:
            return self.next()
        return None

    def expect_op(self, op):
        tok = self.accept_op(op)
        if tok is None:
            self.error(f"expected {op!r}")
        return tok

    def skip_newlines(self):
        while self.peek().kind == "NEWLINE":
            self.next()

    # -- expressions ---------------------------------------------------

    def parse_expr(self):
        node = self.parse_term()
        while True:
            tok = self.accept_op("+", "-")
            if tok is None:
                return node
            rhs = self.parse_term()
            node = ("add" if tok.value == "+" else "sub", node, rhs)

    def parse_term(self):
        node = self.parse_factor()
        while True:
            tok = self.accept_op("*", "/")
            if tok is None:
                return node
            rhs = self.parse_factor()
            node = ("mul" if tok.value == "*" else "div", node, rhs)

    def parse_factor(self):
        tok = self.accept_op("-", "+")
        if tok is not None:
            inner = self.parse_factor()
            return ("neg", inner) if tok.value == "-" else inner
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.accept_op("^") is None:
            return base
        caret = self.tokens[self.pos - 1]
        exponent = self.parse_exponent()
        if exponent.denominator == 1:
            return ("pow", base, exponent.numerator)
        if base == ("t",):
            return ("tpow", exponent)
        self.error("fractional exponents are only allowed directly on t", caret)

    def parse_exponent(self):
        sign = 1
        tok = self.accept_op("-")
        if tok is not None:
            sign = -1
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.next()
            return Fraction(sign * int(tok.value))
        if tok.kind == "OP" and tok.value == "(":
            self.next()
            inner_sign = sign
            if self.accept_op("-") is not None:
                inner_sign = -inner_sign
            num_tok = self.peek()
            if num_tok.kind != "NUMBER":
                self.error("expected an integer exponent")
            self.next()
            value = Fraction(int(num_tok.value))
            if self.accept_op("/") is not None:
                den_tok = self.peek()
                if den_tok.kind != "NUMBER":
                    self.error("expected an integer denominator")
                self.next()
                value = Fraction(value, int(den_tok.value))
            self.expect_op(")")
            return inner_sign * value
        self.error("expected an integer or parenthesized rational exponent")

    def parse_atom(self):
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.next()
            return ("num", Fraction(int(tok.value)))
        if tok.kind == "NAME":
            if tok.value == "t":
                self.next()
                return ("t",)
            self.error(f"unknown name {tok.value!r}; only t is available")
        if tok.kind == "OP" and tok.value == "(":
            self.next()
            node = self.parse_expr()
            self.expect_op(")")
            return node
        self.error("expected an integer, t, or a parenthesized expression")


def _scan_scale(node):
    kind = node[0]
    if kind == "tpow":
        return node[1].denominator
    if kind in ("neg",):
        return _scan_scale(node[1])
    if kind in ("add", "sub", "mul", "div"):
        return lcm(_scan_scale(node[1]), _scan_scale(node[2]))
    if kind == "pow":
        return _scan_scale(node[1])
    return 1


def _eval_ast(node, scale):
    kind = node[0]
    if kind == "num":
        return RatFunc.constant(node[1])
    if kind == "t":
        return RatFunc.variable() ** scale
    if kind == "tpow":
        exponent = node[1] * scale
        k = exponent.numerator  # integral by the choice of scale
        u = RatFunc.variable()
        return u**k if k >= 0 else RatFunc.constant(1) / u ** (-k)
    if kind == "neg":
        return -_eval_ast(node[1], scale)
    if kind == "add":
        return _eval_ast(node[1], scale) + _eval_ast(node[2], scale)
    if kind == "sub":
        return _eval_ast(node[1], scale) - _eval_ast(node[2], scale)
    if kind == "mul":
        return _eval_ast(node[1], scale) * _eval_ast(node[2], scale)
    if kind == "div":
        return _eval_ast(node[1], scale) / _eval_ast(node[2], scale)
    if kind == "pow":
        return _eval_ast(node[1], scale) ** node[2]
    raise AssertionError(f"unhandled node {node!r}")


def evaluate_entries(nodes):
    """Evaluate expression ASTs jointly: common scale m, entries in u = t^(1/m)."""
    scale = 1
    for node in nodes:
        scale = lcm(scale, _scan_scale(node))
    return [_eval_ast(node, scale) for node in nodes], scale


# ----------------------------------------------------------------------
# family files


@dataclass(frozen=True)
class FamilyFile:
    """Parsed family file: the family, an optional conjugation, options."""

    spec: FamilySpec
    matrix: MatrixFamily | None = None
    options: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, FamilyFile):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.matrix == other.matrix
            and self.options == other.options
        )


def _parse_statements(tokens):
    parser = _Parser(tokens)
    statements = []
    while True:
        parser.skip_newlines()
        while parser.accept_op(";") is not None:
            parser.skip_newlines()
        tok = parser.peek()
        if tok.kind == "END":
            break
        if tok.kind != "NAME":
            parser.error("expected a key name")
        key = parser.next()
        parser.expect_op("=")
        statements.append((key, _parse_value(parser)))
        tok = parser.peek()
        if tok.kind not in ("NEWLINE", "END") and not (
            tok.kind == "OP" and tok.value == ";"
        ):
            parser.error("expected end of statement")
    return statements


def _parse_value(parser):
    if parser.peek().kind == "OP" and parser.peek().value == "[":
        return _parse_list(parser)
    return parser.parse_expr()


def _parse_list(parser):
    parser.expect_op("[")
    parser.skip_newlines()
    items = []
    if parser.accept_op("]") is not None:
        return items
    while True:
        parser.skip_newlines()
        if parser.peek().kind == "OP" and parser.peek().value == "[":
            items.append(_parse_list(parser))
        else:
            items.append(parser.parse_expr())
        parser.skip_newlines()
        if parser.accept_op("]") is not None:
            return items
        parser.expect_op(",")


def _constant_from(node, key):
    try:
        value = _eval_ast(node, 1)
    except (DivisionByZero, ZeroDenominator):
        raise FamilySyntaxError(f"division by zero in {key.value}", key.line, key.column)
    if not value.is_constant():
        raise FamilySyntaxError(
            f"{key.value} must be a constant, not a function of t",
            key.line,
            key.column,
        )
    return value.as_fraction()


def parse_family(text):
    """Parse a family file; raises FamilySyntaxError/ArityError/DegreeError."""
    tokens = _tokenize(text)
    seen = {}
    for key, value in _parse_statements(tokens):
        if key.value in seen:
            raise FamilySyntaxError(
                f"duplicate key {key.value!r}", key.line, key.column
            )
        seen[key.value] = (key, value)

    if "degree" not in seen:
        raise DegreeError("missing degree declaration")
    key, node = seen.pop("degree")
    if isinstance(node, list):
        raise DegreeError("degree must be an integer", key.line, key.column)
    degree_value = _constant_from(node, key)
    if degree_value.denominator != 1 or degree_value < 1:
        raise DegreeError(
            f"degree must be a positive integer, got {degree_value}",
            key.line,
            key.column,
        )
    d = int(degree_value)

    entries = {}
    for name in ("num", "den"):
        if name not in seen:
            raise FamilySyntaxError(f"missing {name} coefficient list")
        key, node = seen.pop(name)
        if not isinstance(node, list) or any(isinstance(x, list) for x in node):
            raise FamilySyntaxError(
                f"{name} must be a flat list of expressions", key.line, key.column
            )
        if len(node) != d + 1:
            raise ArityError(
                f"{name} needs {d + 1} entries for degree {d}, got {len(node)}",
                key.line,
                key.column,
            )
        entries[name] = (key, node)

    try:
        values, scale = evaluate_entries(entries["num"][1] + entries["den"][1])
    except (DivisionByZero, ZeroDenominator):
        key = entries["num"][0]
        raise FamilySyntaxError(
            "division by zero in a coefficient entry", key.line, key.column
        )
    spec = FamilySpec(d, tuple(values[: d + 1]), tuple(values[d + 1 :]), scale)

    matrix = None
    if "conjugate" in seen:
        key, node = seen.pop("conjugate")
        ok = (
            isinstance(node, list)
            and len(node) == 2
            and all(isinstance(row, list) and len(row) == 2 for row in node)
        )
        if not ok:
            raise FamilySyntaxError(
                "conjugate must be a 2x2 matrix [[a,b],[c,d]]", key.line, key.column
            )
        flat = [node[0][0], node[0][1], node[1][0], node[1][1]]
        try:
            mvalues, mscale = evaluate_entries(flat)
        except (DivisionByZero, ZeroDenominator):
            raise FamilySyntaxError(
                "division by zero in a matrix entry", key.line, key.column
            )
        matrix = MatrixFamily(*mvalues, mscale)

    options = {}
    for name, (key, node) in seen.items():
        if name not in _OPTION_KEYS:
            raise FamilySyntaxError(f"unknown key {name!r}", key.line, key.column)
        if isinstance(node, list):
            raise FamilySyntaxError(
                f"{name} must be a single value", key.line, key.column
            )
        value = _constant_from(node, key)
        if _OPTION_KEYS[name] == "integer":
            if value.denominator != 1:
                raise FamilySyntaxError(
                    f"{name} must be an integer", key.line, key.column
                )
            options[name] = int(value)
        else:
            options[name] = value
    return FamilyFile(spec, matrix, options)


# ----------------------------------------------------------------------
# serialization back to the file format


def _fraction_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _poly_to_t(poly, scale):
    if not poly:
        return "0"
    parts = []
    for k, c in enumerate(poly):
        if not c:
            continue
        exponent = Fraction(k, scale)
        if exponent == 0:
            s = _fraction_str(c)
        else:
            if exponent == 1:
                base = "t"
            elif exponent.denominator == 1:
                base = f"t^{exponent.numerator}"
            else:
                base = f"t^({exponent})"
            if c == 1:
                s = base
            elif c == -1:
                s = f"-{base}"
            else:
                s = f"{_fraction_str(c)}*{base}"
        parts.append(s)
    out = parts[0]
    for s in parts[1:]:
        out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return out


def entry_to_expr(rf, scale):
    """Grammar-compatible expression for a coefficient entry."""
    num = _poly_to_t(rf.num, scale)
    if rf.den == (Fraction(1),):
        return num
    den = _poly_to_t(rf.den, scale)
    if sum(1 for c in rf.num if c) > 1:
        num = f"({num})"
    # An unparenthesized denominator is only safe for a bare power of t.
    den_terms = [(k, c) for k, c in enumerate(rf.den) if c]
    if not (len(den_terms) == 1 and den_terms[0][1] == 1):
        den = f"({den})"
    return f"{num}/{den}"


def serialize_family(family_file):
    """Canonical text for a parsed family; parse(serialize(x)) == x."""
    spec = family_file.spec
    lines = [f"degree={spec.d}"]
    num = ", ".join(entry_to_expr(c, spec.scale) for c in spec.num)
    den = ", ".join(entry_to_expr(c, spec.scale) for c in spec.den)
    lines.append(f"num=[{num}]")
    lines.append(f"den=[{den}]")
    if family_file.matrix is not None:
        m = family_file.matrix
        cells = [entry_to_expr(c, m.scale) for c in m.entries()]
        lines.append(f"conjugate=[[{cells[0]}, {cells[1]}], [{cells[2]}, {cells[3]}]]")
    for name in sorted(family_file.options):
        value = family_file.options[name]
        if isinstance(value, int):
            lines.append(f"{name}={value}")
        else:
            lines.append(f"{name}={_fraction_str(value)}")
    return "\n".join(lines) + "\n"

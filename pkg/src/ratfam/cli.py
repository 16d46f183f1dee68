"""Batch front door: analyze family files and emit stable reports.

Commands
--------
limit      non-archimedean limit of the family (honors a ``conjugate`` key)
pgr        potential-good-reduction search on the limit
classify   interior / boundary_pgr / boundary_no_pgr verdict
verify     numeric hybrid-convergence check for the resultant polynomial
           and every coordinate monomial
iterate    limit composed with itself, with its reduction data

Exit codes: 0 for definite verdicts, 2 for inconclusive ones, 1 for input
errors.  Output is deterministic byte-for-byte: rationals are printed as
p/q strings and the convergence table carries decimal log-space values with
12 significant digits.  Every flag can also be set through an environment
variable with the RATFAM_ prefix (e.g. RATFAM_MAX_PROBES); precedence is
flag, then environment, then family-file option, then default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    FamilyFormatError,
    InconclusiveSearch,
    PrecisionExhausted,
    RatfamError,
)
from .families import (
    classify_family,
    conjugated_family_limit,
    family_limit,
    verify_convergence,
)
from .mpoly import mp_var, resultant_poly, variable_names
from .parsing import parse_family, serialize_family
from .reduction import INCONCLUSIVE, SearchConfig, minimize_ord_res
from .series import DEFAULT_PRECISION, INF

COMMANDS = ("limit", "pgr", "classify", "verify", "iterate")

_FLAG_KINDS = {
    "format": str,
    "precision": Fraction,
    "max_ramification": int,
    "search_depth": Fraction,
    "max_probes": int,
    "t0": Fraction,
    "samples": int,
    "iterate_power": int,
}

_DEFAULTS = {
    "format": "text",
    "precision": None,
    "max_ramification": 12,
    "search_depth": Fraction(4),
    "max_probes": 5000,
    "t0": Fraction(1, 2),
    "samples": 30,
    "iterate_power": 2,
}


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    exit_code: int = 0


def _frac_str(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _log_str(value):
    if value == -INF:
        return "-inf"
    return f"{value:.12g}"


def _dev_str(value):
    if isinstance(value, Fraction):
        return _frac_str(value)
    if value == INF:
        return "inf"
    return f"{value:.12g}"


def resolve_flags(flags, options):
    """Merge CLI flags, RATFAM_* environment variables, file options, defaults."""
    flags = flags or {}
    effective = {}
    for name, kind in _FLAG_KINDS.items():
        value = flags.get(name)
        if value is None:
            value = os.environ.get(f"RATFAM_{name.upper()}")
        if value is None and name in options:
            value = options[name]
        if value is None:
            value = _DEFAULTS[name]
        if value is not None and not isinstance(value, kind):
            value = kind(value)
        effective[name] = value
    return effective


def _search_config(eff):
    e_max = eff["max_ramification"]
    return SearchConfig(
        s_bound=Fraction(eff["search_depth"]),
        e_max=e_max,
        delta_min=Fraction(1, e_max),
        max_probes=eff["max_probes"],
    )


def _map_results(limit):
    return {
        "degree": limit.d,
        "ord_res": _frac_str(limit.ord_res()),
        "good_reduction": limit.good_reduction(),
        "num": [c.to_expr() for c in limit.a],
        "den": [c.to_expr() for c in limit.b],
    }


def _limit_with_optional_conjugation(family_file, tau):
    if family_file.matrix is not None:
        outcome = conjugated_family_limit(family_file.spec, family_file.matrix, tau=tau)
        return outcome.map, outcome.beth_landing
    return family_limit(family_file.spec, tau=tau), None


def _refiner(family_file, tau):
    base = tau if tau is not None else Fraction(DEFAULT_PRECISION)

    def refine(factor):
        limit, _ = _limit_with_optional_conjugation(family_file, base * factor)
        return limit

    return refine


def _pgr_results(report):
    return {
        "pgr": report.verdict,
        "min_ord_res": None if report.min_value is None else _frac_str(report.min_value),
        "witness": None if report.witness is None else repr(report.witness.matrix()),
        "ramification": report.ramification,
        "probes": report.probes,
        "witness_verified": report.witness_verified,
    }


def _cmd_limit(family_file, eff, report):
    limit, beth = _limit_with_optional_conjugation(family_file, eff["precision"])
    report.results.update(_map_results(limit))
    if beth is not None:
        report.results["beth_landing"] = beth


def _cmd_pgr(family_file, eff, report):
    limit, _ = _limit_with_optional_conjugation(family_file, eff["precision"])
    search = minimize_ord_res(
        limit,
        config=_search_config(eff),
        refine=_refiner(family_file, eff["precision"]),
    )
    report.results["ord_res"] = _frac_str(limit.ord_res())
    report.results.update(_pgr_results(search))
    if search.note:
        report.diagnostics["note"] = search.note
    if search.verdict == INCONCLUSIVE:
        report.exit_code = 2


def _cmd_classify(family_file, eff, report):
    try:
        outcome = classify_family(
            family_file.spec, tau=eff["precision"], config=_search_config(eff)
        )
    except InconclusiveSearch as exc:
        report.results["classification"] = "inconclusive"
        report.results["ord_res"] = None
        report.results.update(_pgr_results(exc.report))
        report.diagnostics["note"] = exc.report.note
        report.exit_code = 2
        return
    report.results["classification"] = outcome.label
    report.results["ord_res"] = _frac_str(outcome.ord_res)
    if outcome.pgr is not None:
        report.results.update(_pgr_results(outcome.pgr))
    else:
        # Interior families have the identity as a trivially valid witness.
        report.results.update(
            {
                "pgr": "pgr",
                "min_ord_res": "0",
                "witness": "[[1,0],[0,1]]",
                "ramification": 1,
                "probes": 0,
                "witness_verified": True,
            }
        )


def _cmd_verify(family_file, eff, report):
    spec = family_file.spec
    polys = [("Res", resultant_poly(spec.d))]
    names = variable_names(spec.d)
    nvars = 2 * spec.d + 2
    for i, name in enumerate(names):
        polys.append((name, mp_var(i, nvars)))
    table = []
    for name, poly in polys:
        conv = verify_convergence(
            spec, poly, eff["t0"], eff["samples"], tau=eff["precision"]
        )
        rows = [
            [
                row.n,
                _frac_str(row.epsilon),
                _log_str(row.measured_log10),
                _log_str(row.predicted_log10),
                _dev_str(row.deviation),
            ]
            for row in conv.rows
        ]
        table.append(
            {
                "poly": name,
                "target_valuation": (
                    "inf" if conv.target_valuation == INF else _frac_str(conv.target_valuation)
                ),
                "tail_max_deviation": _dev_str(conv.tail_max_deviation),
                "rows": rows,
            }
        )
    report.results["convergence"] = table
    report.diagnostics["t0"] = _frac_str(eff["t0"])
    report.diagnostics["samples"] = eff["samples"]


def _cmd_iterate(family_file, eff, report):
    limit, _ = _limit_with_optional_conjugation(family_file, eff["precision"])
    power = eff["iterate_power"]
    iterated = limit.iterate(power)
    report.results["power"] = power
    report.results.update(_map_results(iterated))


_HANDLERS = {
    "limit": _cmd_limit,
    "pgr": _cmd_pgr,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "iterate": _cmd_iterate,
}


def run(command, family_file, flags=None):
    """Execute one command on a parsed family file; returns a Report."""
    if command not in _HANDLERS:
        raise ValueError(f"unknown command {command!r}")
    eff = resolve_flags(flags, family_file.options)
    report = Report(command=command)
    report.inputs["family"] = serialize_family(family_file).strip().replace("\n", "; ")
    report.diagnostics["precision"] = (
        "default" if eff["precision"] is None else _frac_str(eff["precision"])
    )
    try:
        _HANDLERS[command](family_file, eff, report)
    except PrecisionExhausted as exc:
        report.results["error"] = f"precision exhausted: {exc}"
        report.exit_code = 2
    return report


# ----------------------------------------------------------------------
# rendering


def _text_value(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(_text_value(v) for v in value) + "]"
    if isinstance(value, dict):
        inner = ", ".join(f"{k}={_text_value(v)}" for k, v in value.items())
        return "{" + inner + "}"
    return str(value)


def render_text(report):
    lines = [f"command={report.command}"]
    for key, value in report.inputs.items():
        lines.append(f"{key}={_text_value(value)}")
    for key, value in report.results.items():
        lines.append(f"{key}={_text_value(value)}")
    for key, value in report.diagnostics.items():
        lines.append(f"diag.{key}={_text_value(value)}")
    lines.append(f"exit={report.exit_code}")
    return "\n".join(lines) + "\n"


def render_json(report):
    payload = {
        "command": report.command,
        "inputs": report.inputs,
        "results": report.results,
        "diagnostics": report.diagnostics,
        "exit": report.exit_code,
    }
    return json.dumps(payload, sort_keys=True, separators=(", ", ": ")) + "\n"


def render(report, output_format):
    if output_format == "json":
        return render_json(report)
    return render_text(report)


# ----------------------------------------------------------------------
# entry point


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ratfam",
        description="Exact analysis of degenerating families of rational maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        sp = sub.add_parser(name, help=f"run the {name} analysis")
        sp.add_argument("family", help="family file path, or - for stdin")
        sp.add_argument("--format", choices=("text", "json"), default=None)
        sp.add_argument("--precision", default=None, metavar="Q")
        sp.add_argument("--max-ramification", dest="max_ramification", default=None, metavar="N")
        sp.add_argument("--search-depth", dest="search_depth", default=None, metavar="Q")
        sp.add_argument("--max-probes", dest="max_probes", default=None, metavar="N")
        sp.add_argument("--t0", default=None, metavar="Q")
        sp.add_argument("--samples", default=None, metavar="N")
        sp.add_argument("--iterate-power", dest="iterate_power", default=None, metavar="N")
    return parser


def _read_family(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    flags = {name: getattr(args, name, None) for name in _FLAG_KINDS}
    output_format = flags.get("format") or os.environ.get("RATFAM_FORMAT") or "text"
    try:
        text = _read_family(args.family)
        family_file = parse_family(text)
        report = run(args.command, family_file, flags)
    except (FamilyFormatError, RatfamError, OSError, ValueError) as exc:
        error_report = Report(command=args.command, exit_code=1)
        error_report.results["error"] = str(exc)
        sys.stdout.write(render(error_report, output_format))
        return 1
    sys.stdout.write(render(report, output_format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

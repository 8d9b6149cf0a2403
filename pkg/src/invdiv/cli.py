"""Command-line front end: problem files in, JSON reports out.

Subcommands
    parse    canonical echo of the polynomials in a problem file
    analyze  full invariance / non-normal-locus / c2-bound pipeline
    bound    threshold table for (n, d) without any polynomial input
    rank     rank of the log-differential sections at a point

Exit codes: 0 conclusive, 1 error, 2 inconclusive, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .divgeo import AssumptionReport, NCCertificate, PointNotOnDivisor, SingularityReport, format_point
from .endo import EndomorphismError, NotSquarefreeError, RamificationData, RamificationError, validate
from .idealeng import BudgetExceeded, GroebnerConfig, GroebnerStats, configured
from .logchern import C2Comparison, ChernParams, NotNormalCrossingError, c2_comparison, c2_log_twist, log_section_matrix
from .polyring import ParseError, Polynomial, parse_poly
from .verdict import (
    AnalysisConfig,
    Conclusion,
    Verdict,
    analyze,
    bound_threshold,
    degree_n_exclusion,
    normality_obstruction,
    plane_curve_delta_bound,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_BUDGET = 3


class ProblemError(ValueError):
    """Malformed problem file; ``where`` is "line:col" when known."""

    def __init__(self, message: str, where: str | None = None):
        super().__init__(message)
        self.where = where

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.where}: {msg}" if self.where else msg


@dataclass
class Problem:
    n: int
    endomorphism: list[Polynomial] | None
    divisor: Polynomial | None
    seed: int = 0
    iterate: int = 1
    budgets: dict[str, int | None] = field(default_factory=dict)
    raw: dict[str, Any] = field(default_factory=dict)


def _line_col(text: str, offset: int) -> str:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return f"{line}:{col}"


def _parse_located(source: str, poly_text: str, nvars: int, label: str) -> Polynomial:
    try:
        return parse_poly(poly_text, nvars)
    except ParseError as exc:
        literal = json.dumps(poly_text, ensure_ascii=False)[1:-1]
        at = source.find('"' + literal + '"')
        where = _line_col(source, at + 1 + exc.position) if at >= 0 else None
        raise ProblemError(f"{label}: {exc}", where) from exc
    except ValueError as exc:
        raise ProblemError(f"{label}: {exc}") from exc


def _natural(obj: dict, key: str, default: int | None, minimum: int = 0) -> int | None:
    value = obj.get(key, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ProblemError(f"'{key}' must be an integer >= {minimum}")
    return value


def load_problem(source: str) -> Problem:
    try:
        raw = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON: {exc.msg}", f"{exc.lineno}:{exc.colno}") from exc
    if not isinstance(raw, dict):
        raise ProblemError("problem file must hold a JSON object")
    n = _natural(raw, "n", None, 1)
    if n is None:
        raise ProblemError("missing 'n'")
    endo = raw.get("endomorphism")
    forms = None
    if endo is not None:
        if not isinstance(endo, list) or not all(isinstance(s, str) for s in endo):
            raise ProblemError("'endomorphism' must be a list of polynomial strings")
        if len(endo) != n + 1:
            raise ProblemError(f"'endomorphism' needs n+1 = {n + 1} forms, got {len(endo)}")
        forms = [_parse_located(source, s, n + 1, f"endomorphism[{i}]") for i, s in enumerate(endo)]
    div = raw.get("divisor")
    divisor = None
    if div is not None:
        if not isinstance(div, str):
            raise ProblemError("'divisor' must be a polynomial string")
        divisor = _parse_located(source, div, n + 1, "divisor")
    budgets = raw.get("budgets") or {}
    if not isinstance(budgets, dict):
        raise ProblemError("'budgets' must be an object")
    unknown = set(budgets) - {"max_basis", "max_coeff_bits", "trials"}
    if unknown:
        raise ProblemError(f"unknown budget keys: {sorted(unknown)}")
    caps = {
        "max_basis": _natural(budgets, "max_basis", None, 1),
        "max_coeff_bits": _natural(budgets, "max_coeff_bits", None, 1),
        "trials": _natural(budgets, "trials", None, 0),
    }
    return Problem(
        n=n,
        endomorphism=forms,
        divisor=divisor,
        seed=_natural(raw, "seed", 0),
        iterate=_natural(raw, "iterate", 1, 1),
        budgets=caps,
        raw=raw,
    )


def read_problem(path: str) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}") from exc
    return load_problem(source)


# -- serialization ------------------------------------------------------------


def q(x: Fraction | int | None) -> str | None:
    """Exact rational as a string; integers print without a denominator."""
    return None if x is None else str(Fraction(x))


def _point(p: Sequence[Fraction]) -> list[str]:
    return [q(x) for x in p]


def _ramification_json(r: RamificationData) -> dict:
    return {
        "jacobian": str(r.jac),
        "jacobian_degree": int(r.jac.total_degree),
        "divisor_multiplicity_of_F": r.divisor_multiplicity_of_F,
        "effective": r.effective,
        "log_residual": None if r.log_residual is None else str(r.log_residual),
        "residual_degree": r.residual_degree,
        "failed_stage": r.failed_stage,
    }


def _singularity_json(s: SingularityReport) -> dict:
    return {
        "sing_ideal": [str(g) for g in s.sing_ideal.generators],
        "sing_dimension": s.sing_profile.dimension,
        "sing_degree": s.sing_profile.degree,
        "z_degree": s.z_degree,
        "z_is_pure_expected_dim": s.z_is_pure_expected_dim,
        "section_seed": s.section_seed,
        "section_attempts": s.section_attempts,
    }


def _nc_json(c: NCCertificate) -> dict:
    return {
        "point": _point(c.point),
        "status": c.status.value,
        "multiplicity": c.multiplicity,
        "tangent_cone_rank": c.tangent_cone_rank,
        "branch_disc": q(c.branch_disc),
        "chart": c.chart,
    }


def _assumption_json(a: AssumptionReport) -> dict:
    return {
        "evidence_only": True,
        "trials": a.trials,
        "seed": a.seed,
        "vacuous": a.vacuous,
        "sampled": len(a.samples),
        "normal_crossing": a.normal_crossing,
        "indeterminate": a.indeterminate,
        "sections": a.sections,
        "passed": a.passed,
        "witnesses": [_nc_json(w) for w in a.witnesses],
    }


def _comparison_json(c: C2Comparison) -> dict:
    return {
        "lhs_m_poly": list(c.lhs_m_poly),
        "rhs_m_poly": list(c.rhs_m_poly),
        "leading_lhs": c.leading_lhs,
        "leading_rhs": c.leading_rhs,
        "leading_inequality": c.leading_inequality,
        "equality": c.equality,
        "subleading_coefficient": c.subleading_coefficient,
        "contradiction": c.contradiction,
    }


def _chern_json(v: Verdict) -> dict | None:
    if v.n < 2:
        return None
    out: dict[str, Any] = {
        "threshold": q(v.threshold),
        "normality_obstruction": normality_obstruction(v.n, v.d),
        "delta_cap": plane_curve_delta_bound(v.d),
    }
    if v.degZ is not None:
        tw = c2_log_twist(ChernParams(v.n, v.d, 1, v.degZ))
        out["c2_log_twist_m1"] = {"value": tw.value, "degZ": tw.degZ, "coefficient": tw.coefficient}
    out["comparison"] = None if v.comparison is None else _comparison_json(v.comparison)
    return out


def _verdict_json(v: Verdict) -> dict:
    return {
        "conclusion": v.conclusion.value,
        "exclusion": v.exclusion,
        "n": v.n,
        "d": v.d,
        "m": v.m,
        "degZ": v.degZ,
        "threshold": q(v.threshold),
        "delta_cap": v.delta_cap,
        "iterate": v.iterate_used,
        "rules": [
            {"tag": r.tag, "provenance": r.provenance, "detail": r.detail, "citation": r.citation}
            for r in v.rules_fired
        ],
        "annotations": dict(sorted(v.annotations.items())),
    }


def _verdict_stages(v: Verdict) -> dict:
    cert = v.certificate
    return {
        "invariance": None if cert is None else {
            "invariant": cert.invariant,
            "scalar": q(cert.scalar),
            "failed_stage": cert.failed_stage,
            "division_stages": cert.stages,
        },
        "ramification": None if v.ramification is None else _ramification_json(v.ramification),
        "singularities": None if v.singularities is None else _singularity_json(v.singularities),
        "assumption": None if v.assumption is None else _assumption_json(v.assumption),
        "chern": _chern_json(v) if v.certificate is not None and v.certificate.invariant else None,
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def emit(text: str, output: str | None) -> None:
    """Write the whole document in one go; files are replaced atomically."""
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".invdiv-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- commands -----------------------------------------------------------------


def cmd_parse(args: argparse.Namespace) -> int:
    try:
        prob = read_problem(args.file)
    except ProblemError as exc:
        print(f"{args.file}:{exc}" if exc.where else f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    doc = {
        "n": prob.n,
        "endomorphism": None if prob.endomorphism is None else [str(p) for p in prob.endomorphism],
        "divisor": None if prob.divisor is None else str(prob.divisor),
    }
    emit(dumps(doc), args.output)
    return EXIT_OK


def _effective_settings(args: argparse.Namespace, prob: Problem) -> dict:
    def pick(flag, key):
        value = getattr(args, flag)
        return value if value is not None else prob.budgets.get(key)

    trials = pick("trials", "trials")
    return {
        "seed": args.seed if args.seed is not None else prob.seed,
        "iterate": args.iterate if args.iterate is not None else prob.iterate,
        "trials": 16 if trials is None else trials,
        "order": args.order,
        "modular_probe": args.modular_probe,
        "max_basis": pick("max_basis", "max_basis"),
        "max_coeff_bits": pick("max_coeff_bits", "max_coeff_bits"),
    }


def _stats_json(stats: GroebnerStats) -> dict:
    return {
        "bases_computed": stats.bases,
        "pairs_reduced": stats.pairs_reduced,
        "probes": stats.probes,
        "probe_mismatches": stats.probe_mismatches,
    }


def run_analyze(prob: Problem, settings: dict, timing: bool = False) -> tuple[dict, int]:
    """Build the analyze report for a loaded problem; returns (report, exit code)."""
    started = time.perf_counter()
    stats = GroebnerStats()
    report: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool": "invdiv",
        "version": __version__,
        "command": "analyze",
        "input": {
            "n": prob.n,
            "endomorphism": None if prob.endomorphism is None else [str(p) for p in prob.endomorphism],
            "divisor": None if prob.divisor is None else str(prob.divisor),
        },
        "settings": settings,
        "status": None,
        "error": None,
        "stages": {"validation": None},
        "verdict": None,
        "seeds": {"base": settings["seed"]},
        "groebner": None,
        "timing": None,
    }

    def finish(status: str, code: int, error: str | None = None) -> tuple[dict, int]:
        report["status"] = status
        report["error"] = error
        report["exit_code"] = code
        report["groebner"] = _stats_json(stats)
        if timing:
            report["timing"] = {"seconds": round(time.perf_counter() - started, 3)}
        return report, code

    if prob.endomorphism is None or prob.divisor is None:
        return finish("error", EXIT_ERROR, "analyze needs both 'endomorphism' and 'divisor'")

    cfg = GroebnerConfig(
        order=settings["order"],
        max_basis=settings["max_basis"],
        max_coeff_bits=settings["max_coeff_bits"],
        modular_probe=settings["modular_probe"],
        probe_seed=settings["seed"],
        stats=stats,
    )
    with configured(cfg):
        try:
            f = validate(prob.endomorphism, settings["seed"])
        except EndomorphismError as exc:
            report["stages"]["validation"] = {"valid": False, "reason": str(exc), "witness": exc.witness}
            return finish("error", EXIT_ERROR, f"invalid endomorphism: {exc}")
        except BudgetExceeded as exc:
            report["stages"]["validation"] = {"valid": None, "budget": exc.diagnostics}
            return finish("budget_exceeded", EXIT_BUDGET, str(exc))
        report["stages"]["validation"] = {"valid": True, "m": f.m}
        config = AnalysisConfig(seed=settings["seed"], iterate=settings["iterate"], trials=settings["trials"])
        try:
            verdict = analyze(f, prob.divisor, config)
        except BudgetExceeded as exc:
            partial = getattr(exc, "partial", None)
            if partial is not None:
                report["stages"].update(_verdict_stages(partial))
            report["budget"] = exc.diagnostics
            return finish("budget_exceeded", EXIT_BUDGET, str(exc))
        except (NotSquarefreeError, RamificationError, ValueError) as exc:
            return finish("error", EXIT_ERROR, str(exc))

    report["stages"].update(_verdict_stages(verdict))
    report["verdict"] = _verdict_json(verdict)
    code = EXIT_INCONCLUSIVE if verdict.conclusion is Conclusion.INCONCLUSIVE else EXIT_OK
    return finish("ok", code)


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        prob = read_problem(args.file)
    except ProblemError as exc:
        message = f"{args.file}:{exc}" if exc.where else f"{args.file}: {exc}"
        print(message, file=sys.stderr)
        report = {
            "schema_version": SCHEMA_VERSION,
            "tool": "invdiv",
            "version": __version__,
            "command": "analyze",
            "input": None,
            "status": "error",
            "error": str(exc),
            "exit_code": EXIT_ERROR,
        }
        emit(dumps(report), args.output)
        return EXIT_ERROR
    report, code = run_analyze(prob, _effective_settings(args, prob), args.timing)
    if report["error"]:
        print(f"{args.file}: {report['error']}", file=sys.stderr)
    emit(dumps(report), args.output)
    return code


def bound_table(n: int, d: int, degZ: int | None = None) -> dict:
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    thr = bound_threshold(n, d)
    out: dict[str, Any] = {
        "n": n,
        "d": d,
        "threshold": q(thr),
        "delta_cap": plane_curve_delta_bound(d),
        "normality_obstruction": normality_obstruction(n, d),
        "degree_n_exclusion": degree_n_exclusion(n) if d == n else None,
        "degZ": degZ,
    }
    if d == 1:
        out["comparison"] = "vacuous: hyperplane"
    elif d == n + 1:
        out["comparison"] = "not applicable: d = n+1 excluded by cited result"
    elif d > n + 1:
        out["comparison"] = "not applicable: d > n+1"
    elif thr < 0:
        out["comparison"] = f"vacuous: threshold {q(thr)} < 0"
    else:
        out["comparison"] = f"contradiction for degZ <= {q(thr)}"
    if degZ is not None and 1 <= d <= n:
        out["c2_comparison"] = _comparison_json(c2_comparison(n, d, degZ))
    return out


def _format_bound(t: dict) -> str:
    def fmt(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        return "-" if v is None else str(v)

    rows = [
        ("n", t["n"]),
        ("d", t["d"]),
        ("threshold", t["threshold"]),
        ("delta_cap", t["delta_cap"]),
        ("normality_obstruction", t["normality_obstruction"]),
        ("degree_n_exclusion", t["degree_n_exclusion"]),
        ("c2 bound", t["comparison"]),
    ]
    cmp = t.get("c2_comparison")
    if cmp is not None:
        rows += [
            ("degZ", t["degZ"]),
            ("m^n coefficients", f"{cmp['leading_lhs']} vs {cmp['leading_rhs']}"),
            ("m^(n-1) coefficient", cmp["subleading_coefficient"]),
            ("contradiction", cmp["contradiction"]),
        ]
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {fmt(v)}\n" for k, v in rows)


def cmd_bound(args: argparse.Namespace) -> int:
    try:
        table = bound_table(args.n, args.d, args.degz)
    except ValueError as exc:
        print(f"bound: {exc}", file=sys.stderr)
        return EXIT_ERROR
    emit(dumps(table) if args.json else _format_bound(table), args.output)
    return EXIT_OK


def parse_point(text: str, size: int) -> tuple[Fraction, ...]:
    parts = [s.strip() for s in text.replace(",", ":").split(":")]
    try:
        pt = tuple(Fraction(s) for s in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad point {text!r}: {exc}") from exc
    if len(pt) != size:
        raise ValueError(f"point needs {size} coordinates, got {len(pt)}")
    if not any(pt):
        raise ValueError("the zero vector is not a projective point")
    return pt


def rank_summary(F: Polynomial, point: Sequence[Fraction], on_divisor: bool = False) -> dict:
    if on_divisor and F.evaluate(tuple(point)):
        raise PointNotOnDivisor(f"{format_point(point)} is not on the divisor")
    mat = log_section_matrix(F, point)
    n = F.nvars - 1
    return {
        "point": _point(mat.point),
        "chart": mat.chart,
        "basis_tag": mat.basis_tag.value,
        "pivot": mat.pivot,
        "rank": mat.rank,
        "rank_is_lower_bound": mat.rank_is_lower_bound,
        "stalk_dimension": n,
        "rows": [[q(x) for x in row] for row in mat.rows],
    }


def cmd_rank(args: argparse.Namespace) -> int:
    try:
        prob = read_problem(args.file)
        if prob.divisor is None:
            raise ProblemError("rank needs a 'divisor'")
        pt = parse_point(args.point, prob.n + 1)
        summary = rank_summary(prob.divisor, pt, args.on_divisor)
    except ProblemError as exc:
        print(f"{args.file}:{exc}" if exc.where else f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (PointNotOnDivisor, NotNormalCrossingError, ValueError) as exc:
        print(f"rank: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        text = dumps(summary)
    else:
        bound = ">=" if summary["rank_is_lower_bound"] else "="
        text = (
            f"point      {format_point(pt)}\n"
            f"basis      {summary['basis_tag']}\n"
            f"rank       {bound} {summary['rank']} (stalk dimension {summary['stalk_dimension']})\n"
        )
    emit(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="invdiv", description="Exact checks for invariant divisors of endomorphisms of P^n.")
    parser.add_argument("--version", action="version", version=f"invdiv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="canonical echo of a problem file")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_parse)

    a = sub.add_parser("analyze", help="run the full pipeline and print a JSON report")
    a.add_argument("file")
    a.add_argument("--seed", type=int, help="overrides the file's seed (default 0)")
    a.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
    a.add_argument("--modular-probe", action="store_true")
    a.add_argument("--trials", type=int, help="sampling trials for the normal-crossing evidence (default 16)")
    a.add_argument("--iterate", type=int, help="replace the map by its L-th iterate")
    a.add_argument("--max-basis", type=int)
    a.add_argument("--max-coeff-bits", type=int)
    a.add_argument("--timing", action="store_true", help="record wall time (makes output run-dependent)")
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bound", help="threshold table for degree d in P^n")
    b.add_argument("n", type=int)
    b.add_argument("d", type=int)
    b.add_argument("--degz", type=int)
    b.add_argument("--json", action="store_true")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bound)

    r = sub.add_parser("rank", help="rank of the log-differential sections at a point")
    r.add_argument("file")
    r.add_argument("point", help="homogeneous coordinates such as 1:0:0 or 1/2:1:0")
    r.add_argument("--on-divisor", action="store_true", help="reject points off the divisor")
    r.add_argument("--json", action="store_true")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_rank)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for flag in ("trials", "iterate", "max_basis", "max_coeff_bits", "seed"):
        value = getattr(args, flag, None)
        if value is not None and value < (1 if flag in ("iterate", "max_basis", "max_coeff_bits") else 0):
            print(f"invdiv: --{flag.replace('_', '-')} is out of range", file=sys.stderr)
            return EXIT_ERROR
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

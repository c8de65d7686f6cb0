"""Command-line front end.

    boundaryk compute <file> [--json] [--explain] [--no-ahss-check]
    boundaryk compare <fileA> <fileB> [--json]
    boundaryk corpus [name] [--json] [--explain] [--no-ahss-check]

Exit codes: 0 success, 1 unreadable or malformed file, 2 validation
failure, 3 hypothesis refusal.  Reports go to stdout, errors to stderr.
A file argument that does not exist but names a bundled corpus entry is
resolved to that entry.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import ahss, gysin
from .abelian import OracleRefused
from .classify import compare
from .ktheory import HypothesisError, KTheoryResult, compute_k_theory
from .spaces import SpaceFileError, SpaceInput, parse_space_file, torsion_warnings, validate

EXIT_OK = 0
EXIT_FILE = 1
EXIT_INVALID = 2
EXIT_REFUSED = 3

CORPUS = (
    "genus2",
    "genus3",
    "cusped-surface",
    "hs3",
    "chi1",
    "genus2-product",
    "noncompact-rank2",
)


class CliError(Exception):
    def __init__(self, message: str, code: int, report: list[str] | None = None):
        super().__init__(message)
        self.code = code
        self.report = report or []


def corpus_text(name: str) -> str:
    if name not in CORPUS:
        raise CliError(f"unknown corpus entry {name!r}; try one of: {', '.join(CORPUS)}", EXIT_FILE)
    return resources.files("boundaryk").joinpath("data", f"{name}.space").read_text("utf-8")


def load_space(arg: str) -> SpaceInput:
    path = Path(arg)
    if path.exists():
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CliError(f"{arg}: {exc}", EXIT_FILE) from None
    elif arg in CORPUS:
        text = corpus_text(arg)
    else:
        raise CliError(f"{arg}: no such file", EXIT_FILE)
    try:
        return parse_space_file(text)
    except SpaceFileError as exc:
        raise CliError(f"{arg}: {exc}", EXIT_FILE) from None


@dataclass
class Run:
    space: SpaceInput
    result: KTheoryResult
    ahss_ok: bool | None


def run_pipeline(space: SpaceInput, ahss_check: bool = True) -> Run:
    """validate -> Gysin -> K-theory -> bound check."""
    violations = validate(space)
    if violations:
        raise CliError(
            f"{space.name}: validation failed",
            EXIT_INVALID,
            ["validation: FAILED"] + [f"  - {v}" for v in violations],
        )
    try:
        result = compute_k_theory(space)
    except HypothesisError as exc:
        raise CliError(f"{space.name}: refused: {exc}", EXIT_REFUSED) from None

    bundle = result.bundle
    solved = gysin.gysin_solver(space)
    if solved.groups != bundle.groups:
        raise AssertionError(f"{space.name}: Gysin solver disagrees with closed form")

    ok = None
    if ahss_check:
        bounds = ahss.torsion_bounds(bundle.groups)
        ok = ahss.check_result(result, bounds, space.dim)
        if ok and result.exact:
            p0, p1 = ahss.k_parities(space.dim)
            try:
                ok = (
                    result.k0 in ahss.consistent_k_groups(bundle.groups, p0)
                    and result.k1 in ahss.consistent_k_groups(bundle.groups, p1)
                )
            except OracleRefused:
                pass
    return Run(space, result, ok)


def _verdict(ok: bool | None) -> str:
    return {None: "skipped", True: "ok", False: "VIOLATED"}[ok]


def render_report(run: Run, explain: bool = False) -> list[str]:
    s, r = run.space, run.result
    chi = f", chi = {s.euler}" if s.compact else ""
    lines = [
        f"space: {s.name} (n = {s.dim}, rank {s.rank}, "
        f"{'compact' if s.compact else 'noncompact'}{chi})",
        "validation: ok",
        f"case: {r.case.name}",
        "H*(Gamma\\G/M):",
    ]
    lines += [f"  H{i} = {g}" for i, g in enumerate(r.bundle.groups)]
    if r.bundle.formal_analogue:
        lines.append("  (rank >= 2: fibre is not a sphere; rank-one formulas applied by analogy)")
    lines.append(f"determinacy: {r.determinacy.kind.value}")
    lines.append(f"AHSS bound check: {_verdict(run.ahss_ok)}")
    if explain:
        lines.append("explain:")
        lines += [f"  {x}" for x in gysin.explain(s)]
        p0, _ = ahss.k_parities(s.dim)
        lines.append(f"  K0 collects degrees of parity {p0} (= n mod 2), K1 the rest")
    lines.append(r.summary())
    return lines


def to_json(run: Run) -> dict:
    s, r = run.space, run.result
    return {
        "name": s.name,
        "n": s.dim,
        "rank": s.rank,
        "compact": s.compact,
        "chi": s.euler if s.compact else None,
        "case": r.case.name,
        "bundle_cohomology": [str(g) for g in r.bundle.groups],
        "k0": r.k0_str(),
        "k1": str(r.k1),
        "unit_class": str(r.unit_class),
        "determinacy": r.determinacy.kind.value,
        "ahss_ok": run.ahss_ok,
    }


def _emit_run(run: Run, args: argparse.Namespace) -> None:
    if args.json:
        print(json.dumps(to_json(run), indent=2))
    else:
        print("\n".join(render_report(run, explain=args.explain)))


def cmd_compute(args: argparse.Namespace) -> int:
    space = load_space(args.file)
    for w in torsion_warnings(space):
        print(f"warning: {w}", file=sys.stderr)
    _emit_run(run_pipeline(space, ahss_check=not args.no_ahss_check), args)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    runs = [run_pipeline(load_space(f)) for f in (args.file_a, args.file_b)]
    comparison = compare(runs[0].result, runs[1].result)
    if args.json:
        print(json.dumps({
            "a": runs[0].space.name,
            "b": runs[1].space.name,
            "verdict": comparison.verdict.value,
            "reasons": list(comparison.reasons),
        }, indent=2))
    else:
        print(f"{runs[0].space.name} vs {runs[1].space.name}: {comparison}")
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    if args.name is None:
        print("\n".join(CORPUS))
        return EXIT_OK
    space = parse_space_file(corpus_text(args.name))
    _emit_run(run_pipeline(space, ahss_check=not args.no_ahss_check), args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boundaryk",
        description="K-theory of boundary crossed products from the cohomology of Gamma\\X.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def report_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit structured JSON")
        p.add_argument("--explain", action="store_true",
                       help="include the case analysis and degree bookkeeping")
        p.add_argument("--no-ahss-check", action="store_true",
                       help="skip the spectral-sequence bound check")

    p = sub.add_parser("compute", help="compute K-theory for a space file")
    p.add_argument("file")
    report_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("compare", help="decide isomorphism of two boundary algebras")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--json", action="store_true", help="emit structured JSON")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("corpus", help="list or run the bundled examples")
    p.add_argument("name", nargs="?")
    report_flags(p)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        if exc.report:
            print("\n".join(exc.report))
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

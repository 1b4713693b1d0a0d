"""``rac1`` command line: JSON reports on stdout, diagnostics on stderr.

Exit codes: 0 success or bound satisfied, 1 validation failure or unsatisfied bound,
2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from rac import reports
from rac.drawing import density_check, validate
from rac.errors import DrawingFormatError, RacError
from rac.export import load_drawing, save_drawing, write_svg
from rac.generator import add_chords, dodecahedral_frame, family_report
from rac.planarize import Scope, planarize
from rac.removal import potential_bound, removal_sim
from shared.config import settings

logger = logging.getLogger(__name__)


def _emit(payload: Any) -> None:
    json.dump(payload, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def cmd_validate(args: argparse.Namespace) -> int:
    d = load_drawing(args.input)
    report = validate(d, eps=args.epsilon, collinear_eps=settings.collinear_epsilon)
    _emit(reports.validation_report(report))
    return 0 if report.is_rac else 1


def cmd_planarize(args: argparse.Namespace) -> int:
    d = load_drawing(args.input)
    p = planarize(d, Scope(args.scope))
    _emit(reports.planarization_report(p))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    d = load_drawing(args.input)
    _emit(reports.face_stats_report(d))
    return 0


def cmd_audit(args: argparse.Namespace) -> int:
    d = load_drawing(args.input)
    result = reports.charge_audit_report(d)
    _emit(result)
    return 0 if result["certified"] else 1


def cmd_bound(args: argparse.Namespace) -> int:
    d = load_drawing(args.input)
    report = validate(d, eps=args.epsilon, collinear_eps=settings.collinear_epsilon)
    if not report.is_rac:
        _emit(reports.validation_report(report))
        return 1
    verdict = density_check(d)
    _emit(reports.bound_report(verdict))
    return 0 if verdict.satisfied else 1


def cmd_generate(args: argparse.Namespace) -> int:
    frame = dodecahedral_frame(args.levels, args.scale)
    d = add_chords(frame)
    checked = validate(d)
    if args.out:
        save_drawing(d, args.out)
    if args.svg:
        write_svg(d, args.svg, checked)
    report = family_report(args.levels, args.scale, frame=frame, drawing=d, report=checked)
    _emit(reports.family_report_dict(report))
    return 0 if report.is_rac and report.matches_5n_minus_10 else 1


def cmd_removal_sim(args: argparse.Namespace) -> int:
    state, trace = removal_sim(args.n, args.k, args.seed)
    result = reports.removal_report(trace, potential_bound(state, trace))
    if args.trace_out:
        Path(args.trace_out).write_text(json.dumps(result, indent=2) + "\n", encoding="utf-8")
        logger.info(f"Wrote removal trace to {args.trace_out}")
    _emit(result)
    return 0 if trace.bound_holds else 1


def cmd_export_svg(args: argparse.Namespace) -> int:
    d = load_drawing(args.input)
    write_svg(d, args.out, validate(d, eps=args.epsilon), mark_crossings=not args.no_crossings)
    _emit({"svg": str(args.out)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rac1", description="RAC1 drawing toolkit")
    ap.add_argument("--epsilon", type=float, default=settings.epsilon, help="right-angle tolerance for floating drawings")
    ap.add_argument("--log-level", default=settings.log_level)
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", type=Path, help="drawing JSON file")
        return p

    with_input("validate", "check the RAC1 conditions").set_defaults(func=cmd_validate)
    p = with_input("planarize", "planarization summary")
    p.add_argument("--scope", choices=[s.value for s in Scope], default=Scope.ALL.value)
    p.set_defaults(func=cmd_planarize)
    with_input("stats", "crossing-free face statistics and goodness").set_defaults(func=cmd_stats)
    with_input("audit", "discharging audit of the crossed part").set_defaults(func=cmd_audit)
    with_input("bound", "edge density check against 5.5n - 11").set_defaults(func=cmd_bound)

    p = sub.add_parser("generate", help="nested dodecahedral family with 5n - 10 edges")
    p.add_argument("--levels", type=int, default=1)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--out", type=Path)
    p.add_argument("--svg", type=Path)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("removal-sim", help="edge removals from a random triangulation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace-out", type=Path)
    p.set_defaults(func=cmd_removal_sim)

    p = with_input("export-svg", "render a drawing")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--no-crossings", action="store_true")
    p.set_defaults(func=cmd_export_svg)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DrawingFormatError as e:
        logger.error(f"{args.command}: {e}")
        return 2
    except OSError as e:
        logger.error(f"{args.command}: {e}")
        return 2
    except RacError as e:
        logger.error(f"{args.command}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())

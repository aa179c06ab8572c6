"""Command-line entry point.

Exit codes: 0 success, 1 input or validation error, 2 verification or
internal-consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..differentials import ConsistencyError
from ..exact_linalg import LinalgError
from ..milnor_field import DEFAULT_TRUNCATION, PRESET_NAMES, FieldError, dump_field, load_field_file, resolve_field
from ..op_algebra import OpError, RULES, verify_adem, verify_d1_squared
from ..ss_engine import graded_witt, kt_filtration_groups, ko_low_degree, page_region
from .render import render_chart

__all__ = ["cli_main", "build_parser"]


class VerificationFailure(Exception):
    pass


def _field(spec: str, need_weight: int = 0):
    """Presets are built deep enough for the requested weight; documents must already be."""
    truncation = max(DEFAULT_TRUNCATION, need_weight)
    F = resolve_field(spec, truncation)
    if need_weight > F.truncation:
        raise FieldError(f"{F.name} is truncated at weight {F.truncation}; weight {need_weight} is needed")
    return F


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_field(args) -> int:
    if args.action == "list":
        for name in PRESET_NAMES:
            print(name)
        return 0
    if args.target is None:
        raise FieldError(f"field {args.action} needs a preset name or a document path")
    if args.action == "show":
        F = resolve_field(args.target, args.truncation)
        _emit(dump_field(F), args.output)
        return 0
    F = load_field_file(args.target)
    print(f"valid: {F.name} (truncation {F.truncation}, dims {list(F.dims)})")
    return 0


def _cmd_page(args) -> int:
    need = args.qmax + (1 if args.r in ("2", "inf") else 0)
    F = _field(args.field, need)
    window = (args.pmin, args.pmax, args.qmin, args.qmax)
    region = page_region(args.spectrum, F, args.r, window, workers=args.workers)
    _emit(render_chart(region, args.format), args.output)
    return 0


def _cmd_grwitt(args) -> int:
    F = _field(args.field, args.qmax + 1)
    print(graded_witt(F, args.qmax).text())
    return 0


def _cmd_ko(args) -> int:
    F = _field(args.field)
    print(ko_low_degree(F).text())
    return 0


def _cmd_ktfilt(args) -> int:
    F = _field(args.field, args.q + 1)
    rep = kt_filtration_groups(F, args.p, args.q)
    print(rep.text())
    if not rep.ok:
        raise VerificationFailure(f"closed form and engine disagree at ({args.p},{args.q})")
    return 0


def _cmd_verify(args) -> int:
    if args.what == "adem":
        records = verify_adem()
        for r in records:
            print(("ok   " if r.ok else "FAIL ") + r.text())
        if not all(r.ok for r in records):
            raise VerificationFailure("an Adem relation did not reduce as stated")
        return 0
    if args.spectrum is None:
        raise FieldError("verify d1sq needs --spectrum")
    report = verify_d1_squared(args.spectrum)
    for e in report.entries:
        print(e.text())
        if args.trace:
            for step in e.normal.trace:
                print("      " + step.text())
    extras = {r.name: r for r in RULES}
    if report.extras_used:
        print("relations used beyond the listed ones: " + ", ".join(
            f"{extras[n].text()} ({extras[n].note})" for n in sorted(report.extras_used)
        ))
    print(f"{len(report.entries)} composite entries, {'all zero' if report.ok else 'NONZERO entries present'}")
    if not report.ok:
        raise VerificationFailure(f"d₁∘d₁ ≠ 0 for {args.spectrum}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motslice", description="Slice spectral sequences for KT, KQ and KGL over fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    f = sub.add_parser("field", help="list, show or validate field presentations")
    f.add_argument("action", choices=["list", "show", "validate"])
    f.add_argument("target", nargs="?")
    f.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)
    f.add_argument("--output", "-o")
    f.set_defaults(run=_cmd_field)

    pg = sub.add_parser("page", help="compute and draw a page of a slice spectral sequence")
    pg.add_argument("--spectrum", required=True, choices=["KT", "KQ", "KGL", "KGL2", "KGLhC2"])
    pg.add_argument("--field", required=True)
    pg.add_argument("--r", default="1", choices=["1", "2", "inf"])
    pg.add_argument("--pmin", type=int, default=-4)
    pg.add_argument("--pmax", type=int, default=4)
    pg.add_argument("--qmin", type=int, default=0)
    pg.add_argument("--qmax", type=int, default=4)
    pg.add_argument("--format", default="ascii", choices=["json", "ascii", "svg"])
    pg.add_argument("--output", "-o")
    pg.add_argument("--workers", type=int, default=1)
    pg.set_defaults(run=_cmd_page)

    g = sub.add_parser("grwitt", help="graded Witt ring I^q/I^{q+1}")
    g.add_argument("--field", required=True)
    g.add_argument("--qmax", type=int, default=4)
    g.set_defaults(run=_cmd_grwitt)

    k = sub.add_parser("ko", help="low-degree hermitian K-groups KO_0 … KO_3")
    k.add_argument("--field", required=True)
    k.set_defaults(run=_cmd_ko)

    kt = sub.add_parser("ktfilt", help="filtration groups π_{p,0}f_q(KT)")
    kt.add_argument("--field", required=True)
    kt.add_argument("--p", type=int, required=True)
    kt.add_argument("--q", type=int, required=True)
    kt.set_defaults(run=_cmd_ktfilt)

    v = sub.add_parser("verify", help="symbolic checks: Adem relations, d₁∘d₁ = 0")
    v.add_argument("what", choices=["adem", "d1sq"])
    v.add_argument("--spectrum", choices=["KT", "KQ", "KGL2"])
    v.add_argument("--trace", action="store_true", help="print reduction traces")
    v.set_defaults(run=_cmd_verify)
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.run(args)
    except (VerificationFailure, ConsistencyError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    except (FieldError, LinalgError, OpError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())

"""Command line entry point: ``trotterlab {sweep,bound,verify,preset}``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .. import bounds
from ..errors import NumericalError, UsageError
from .config import PRESETS, load_config, preset
from .output import emit_plotdata, write_csv
from .sweep import run_sweep
from .verify import verify

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VIOLATION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    out = Path(args.output or config.output_path)
    result = run_sweep(config, method=args.eigensolver)
    write_csv(result, out)
    print(f"wrote {out} ({len(config.dims)} dimensions, {result.seconds:.1f} s)")
    if args.plotdata:
        script = emit_plotdata(result, args.plotdata)
        print(f"wrote {args.plotdata} and {script}")
    for label, verdict in result.verdicts.items():
        if verdict is None:
            print(f"  {label}: series too short for window {config.window}")
        elif verdict.saturates:
            print(f"  {label}: saturates at {verdict.plateau_value:.6g} from d={verdict.onset_dimension}")
        else:
            print(f"  {label}: no plateau")
    if result.overall is not None:
        suffix = f" (failing: {', '.join(result.failing)})" if result.failing else ""
        print(f"overall: {result.overall}{suffix}")
    return EXIT_OK


def _cmd_bound(args) -> int:
    print(f"{bounds.ho_analytic_bound(args.m, args.t, args.n):.17g}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = verify(args.dim, args.trials, args.seed, method=args.eigensolver)
    print(f"seed={report.seed} trials={report.trials} max_dim={report.max_dim} checks={report.checks}")
    print(f"max error/bound ratio: {report.max_ratio:.6g}")
    print(f"bound violations: {len(report.violations)}; "
          f"optimized > plain: {len(report.optimized_violations)}")
    for v in report.violations[:10]:
        print(f"  trial={v[0]} eigvec={v[1]} t={v[2]} n={v[3]} error={v[4]:.6g} bound={v[5]:.6g}")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _cmd_preset(args) -> int:
    text = preset(args.name).to_text()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trotterlab", description="Truncated Trotter error experiments")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sweep", help="run a sweep described by a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--output", help="CSV path (default: output_path from the config)")
    p.add_argument("--plotdata", help="also write gnuplot data here (+ .gp script)")
    p.add_argument("--eigensolver", choices=("jacobi", "lapack"), default="jacobi")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("bound", help="closed-form Q^2/2, P^2/2 bound for |m>")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("verify", help="random-pair campaign for the eigenstate bound")
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eigensolver", choices=("jacobi", "lapack"), default="jacobi")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("preset", help="print a built-in figure config")
    p.add_argument("--name", required=True, choices=sorted(PRESETS))
    p.add_argument("--output")
    p.set_defaults(func=_cmd_preset)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

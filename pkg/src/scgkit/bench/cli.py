"""``scg-bench``: run solvers on Matrix Market files or builtin problems."""

from __future__ import annotations

import argparse
import sys

from ..krylov import SOLVERS
from .runner import (
    BUILTINS,
    ManifestError,
    ProblemSpec,
    RunManifest,
    load_manifest,
    parse_problem,
    parse_solver,
    run,
)
from .tables import emit_performance_profile, emit_table

EXIT_OK = 0
EXIT_BAD_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="scg-bench",
        description="Run Krylov solvers over a set of problems and print a results table.",
        epilog=f"solvers: {', '.join(SOLVERS)}; builtin problems: {', '.join(BUILTINS)}, identity-<n>",
    )
    ap.add_argument("--manifest", help="JSON manifest; inline options override its settings")
    ap.add_argument("--matrix", nargs="+", action="extend", default=[], metavar="MTX",
                    help="Matrix Market file(s); rhs is A @ ones")
    ap.add_argument("--problem", nargs="+", action="extend", default=[], metavar="NAME[:k=v,...]",
                    help="builtin problem, e.g. convection_diffusion:grid_points_per_side=32")
    ap.add_argument("--solver", nargs="+", action="extend", default=[], metavar="NAME[:m]")
    ap.add_argument("--tol", type=float, help="relative residual tolerance (default 1e-6)")
    ap.add_argument("--max-iter", type=int, help="iteration cap (default 10000)")
    ap.add_argument("--format", choices=("csv", "json"))
    ap.add_argument("--history-dir", help="write one iteration,relative_residual CSV per run")
    ap.add_argument("--parallel", action="store_true", help="run pairs concurrently")
    ap.add_argument("--out", help="write the table here instead of stdout")
    ap.add_argument("--profile", metavar="PATH",
                    help="also write a performance-profile CSV (solver,tau,rho)")
    ap.add_argument("--profile-metric", choices=("iter", "cpu"), default="iter")
    return ap


def _manifest_from_args(args) -> RunManifest:
    base = load_manifest(args.manifest) if args.manifest else None
    problems = [ProblemSpec(path=p) for p in args.matrix]
    problems += [parse_problem(p) for p in args.problem]
    solvers = [parse_solver(s) for s in args.solver]

    def pick(value, attr, default):
        if value is not None:
            return value
        return getattr(base, attr) if base is not None else default

    return RunManifest(
        problems=tuple(problems) or (base.problems if base else ()),
        solvers=tuple(solvers) or (base.solvers if base else ()),
        rel_tol=pick(args.tol, "rel_tol", 1e-6),
        max_iter=pick(args.max_iter, "max_iter", 10_000),
        output_format=pick(args.format, "output_format", "csv"),
        history_dir=pick(args.history_dir, "history_dir", None),
        parallel=args.parallel or (base.parallel if base else False),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        manifest = _manifest_from_args(args)
    except (ManifestError, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"scg-bench: invalid manifest: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    records, errors = run(manifest)
    for msg in errors:
        print(f"scg-bench: {msg}", file=sys.stderr)

    table = emit_table(records, manifest.output_format)
    try:
        if args.out:
            with open(args.out, "wb") as f:
                f.write(table)
        else:
            sys.stdout.buffer.write(table)
            sys.stdout.flush()
        if args.profile:
            with open(args.profile, "wb") as f:
                f.write(emit_performance_profile(records, args.profile_metric))
    except (OSError, ValueError) as exc:
        print(f"scg-bench: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    return EXIT_BAD_INPUT if errors else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

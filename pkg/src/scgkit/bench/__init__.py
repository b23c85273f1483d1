"""Benchmark harness: manifests, runs, result tables and performance profiles."""

from .runner import (
    BUILTINS,
    ERROR_STATUS,
    ManifestError,
    ProblemSpec,
    RunManifest,
    RunRecord,
    SolverSpec,
    load_manifest,
    parse_problem,
    parse_solver,
    run,
)
from .tables import emit_performance_profile, emit_table, parse_table, performance_profile

__all__ = [
    "BUILTINS",
    "ERROR_STATUS",
    "ManifestError",
    "ProblemSpec",
    "RunManifest",
    "RunRecord",
    "SolverSpec",
    "emit_performance_profile",
    "emit_table",
    "load_manifest",
    "parse_problem",
    "parse_solver",
    "parse_table",
    "performance_profile",
    "run",
]

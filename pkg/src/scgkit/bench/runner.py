"""Run every (problem, solver) pair of a manifest and collect one record each."""

from __future__ import annotations

import csv
import json
import os
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..errors import MatrixMarketError
from ..krylov import SOLVERS, WINDOWED, SolverConfig
from ..mmio import read_matrix_market
from ..problems import (
    LinearProblem,
    convection_diffusion,
    example_3x3,
    example_5x5,
    identity_problem,
    random_pd_system,
    with_ones_solution,
)

ERROR_STATUS = "Error"


class ManifestError(ValueError):
    pass


def _convdiff(grid_points_per_side=32, epsilon=1 / 200, wind=(0.0, 1.0), scheme="upwind",
              wind_x=None, wind_y=None):
    if wind_x is not None or wind_y is not None:
        wind = (float(wind_x or 0.0), float(wind_y or 0.0))
    return convection_diffusion(int(grid_points_per_side), float(epsilon), tuple(wind), scheme)


BUILTINS = {
    "example_3x3": lambda: example_3x3(),
    "example_5x5": lambda: example_5x5(),
    "identity": lambda n=10: identity_problem(int(n)),
    "convection_diffusion": _convdiff,
    "random_pd": lambda order=40, seed=0, skew_scale=0.5: random_pd_system(
        int(order), int(seed), float(skew_scale)
    ),
}


@dataclass(frozen=True)
class ProblemSpec:
    path: Optional[str] = None
    builtin: Optional[str] = None
    params: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        if self.path is not None:
            return Path(self.path).name.split(".")[0]
        if self.builtin == "identity":
            return f"identity-{self.params.get('n', 10)}"
        if not self.params:
            return self.builtin
        args = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.builtin}[{args}]"

    def load(self) -> LinearProblem:
        if self.path is not None:
            return with_ones_solution(read_matrix_market(self.path), self.label)
        return BUILTINS[self.builtin](**self.params)


@dataclass(frozen=True)
class SolverSpec:
    name: str
    m: Optional[int] = None

    @property
    def label(self) -> str:
        return self.name if self.m is None else f"{self.name}({self.m})"


@dataclass(frozen=True)
class RunManifest:
    problems: tuple
    solvers: tuple
    rel_tol: float = 1e-6
    max_iter: int = 10_000
    output_format: str = "csv"
    history_dir: Optional[str] = None
    parallel: bool = False

    def __post_init__(self):
        if not self.problems:
            raise ManifestError("manifest lists no problems")
        if not self.solvers:
            raise ManifestError("manifest lists no solvers")
        for s in self.solvers:
            if s.name not in SOLVERS:
                raise ManifestError(f"unknown solver '{s.name}'")
            if s.name in WINDOWED and s.m is None:
                raise ManifestError(f"solver '{s.name}' needs a window width m")
            if s.m is not None and s.m < (0 if s.name == "swi" else 1):
                raise ManifestError(f"invalid m={s.m} for '{s.name}'")
        for p in self.problems:
            if (p.path is None) == (p.builtin is None):
                raise ManifestError("each problem needs exactly one of 'path' or 'builtin'")
            if p.builtin is not None and p.builtin not in BUILTINS:
                raise ManifestError(f"unknown builtin problem '{p.builtin}'")
        if self.output_format not in ("csv", "json"):
            raise ManifestError("output_format must be 'csv' or 'json'")
        if not self.rel_tol > 0 or self.max_iter < 1:
            raise ManifestError("rel_tol must be positive and max_iter at least 1")


@dataclass
class RunRecord:
    problem_label: str
    solver_label: str
    m: Optional[int]
    iterations: int
    wall_time_seconds: float
    final_res: float
    true_res: float
    status: str


def parse_problem(text: str) -> ProblemSpec:
    """Parse ``name``, ``identity-10`` or ``name:key=value,key=value``."""
    name, _, rest = text.partition(":")
    m = re.fullmatch(r"identity-(\d+)", name)
    if m:
        return ProblemSpec(builtin="identity", params={"n": int(m.group(1))})
    params = {}
    if rest:
        for item in rest.split(","):
            key, sep, val = item.partition("=")
            if not sep:
                raise ManifestError(f"bad problem parameter '{item}'")
            params[key.strip()] = _number(val.strip())
    return ProblemSpec(builtin=name, params=params)


def _number(s: str):
    for conv in (int, float):
        try:
            return conv(s)
        except ValueError:
            pass
    return s


def parse_solver(text: str) -> SolverSpec:
    name, sep, m = text.partition(":")
    if not sep:
        return SolverSpec(name.strip().lower())
    try:
        return SolverSpec(name.strip().lower(), int(m))
    except ValueError:
        raise ManifestError(f"bad window width in '{text}'") from None


def load_manifest(path) -> RunManifest:
    """Read a JSON manifest.

    Problems are ``{"path": ...}`` or ``{"builtin": name, "params": {...}}``
    (a bare string is parsed like ``--problem``); solvers are
    ``{"name": ..., "m": ...}`` or ``"name[:m]"`` strings.
    """
    with open(path) as f:
        data = json.load(f)
    base = Path(path).parent
    problems = []
    for p in data.get("problems", []):
        if isinstance(p, str):
            problems.append(parse_problem(p))
        elif "path" in p:
            mp = Path(p["path"])
            problems.append(ProblemSpec(path=str(mp if mp.is_absolute() else base / mp)))
        else:
            problems.append(ProblemSpec(builtin=p.get("builtin"), params=dict(p.get("params", {}))))
    solvers = [
        parse_solver(s) if isinstance(s, str) else SolverSpec(s["name"].lower(), s.get("m"))
        for s in data.get("solvers", [])
    ]
    return RunManifest(
        problems=tuple(problems),
        solvers=tuple(solvers),
        rel_tol=float(data.get("rel_tol", 1e-6)),
        max_iter=int(data.get("max_iter", 10_000)),
        output_format=data.get("output_format", "csv"),
        history_dir=data.get("history_dir"),
        parallel=bool(data.get("parallel", False)),
    )


def _safe(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.()=,-]+", "_", label)


def _solve_one(problem: LinearProblem, plabel: str, solver: SolverSpec, manifest: RunManifest):
    cfg = SolverConfig(
        rel_tol=manifest.rel_tol,
        max_iter=manifest.max_iter,
        memory_m=solver.m if solver.m is not None else 2,
    )
    t0 = time.perf_counter()
    report = SOLVERS[solver.name](problem.matrix, problem.rhs, cfg)
    elapsed = time.perf_counter() - t0
    if manifest.history_dir:
        out = Path(manifest.history_dir) / f"{_safe(plabel)}__{_safe(solver.label)}.csv"
        with open(out, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["iteration", "relative_residual"])
            for k, res in enumerate(report.residual_history):
                w.writerow([k, f"{res:.17g}"])
    return RunRecord(
        problem_label=plabel,
        solver_label=solver.label,
        m=solver.m,
        iterations=report.iterations,
        wall_time_seconds=elapsed,
        final_res=report.final_residual,
        true_res=report.true_final_residual,
        status=str(report.status),
    )


def run(manifest: RunManifest) -> tuple[list[RunRecord], list[str]]:
    """Execute ``problems x solvers`` in manifest order.

    Returns the records and a list of per-problem error messages. A problem
    that cannot be loaded yields one ``Error`` record per solver; the sweep
    carries on.
    """
    if manifest.history_dir:
        os.makedirs(manifest.history_dir, exist_ok=True)
    errors = []
    tasks = []
    for spec in manifest.problems:
        try:
            problem = spec.load()
        except (OSError, MatrixMarketError, ValueError) as exc:
            errors.append(f"{spec.label}: {exc}")
            problem = None
        for solver in manifest.solvers:
            tasks.append((spec.label, problem, solver))

    def work(task):
        plabel, problem, solver = task
        if problem is None:
            nan = float("nan")
            return RunRecord(plabel, solver.label, solver.m, 0, 0.0, nan, nan, ERROR_STATUS)
        return _solve_one(problem, plabel, solver, manifest)

    if manifest.parallel:
        with ThreadPoolExecutor() as pool:
            records = list(pool.map(work, tasks))
    else:
        records = [work(t) for t in tasks]
    return records, errors

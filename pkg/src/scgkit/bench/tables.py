"""Result tables and performance profiles as CSV or JSON bytes."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Sequence

from .runner import RunRecord

COLUMNS = ("problem", "solver", "m", "iter", "cpu_s", "res", "true_res", "status")
CONVERGED = "Converged"


def _row(rec: RunRecord) -> dict:
    return {
        "problem": rec.problem_label,
        "solver": rec.solver_label,
        "m": "" if rec.m is None else rec.m,
        "iter": rec.iterations,
        "cpu_s": f"{rec.wall_time_seconds:.6f}",
        "res": f"{rec.final_res:.3e}",
        "true_res": f"{rec.true_res:.3e}",
        "status": rec.status,
    }


def emit_table(records: Sequence[RunRecord], fmt: str = "csv") -> bytes:
    """Serialize records in the given order.

    ``res`` and ``true_res`` carry four significant digits in scientific
    notation; ``cpu_s`` is wall-clock seconds.
    """
    if not records:
        raise ValueError("no records to emit")
    rows = [_row(r) for r in records]
    if fmt == "json":
        for row in rows:
            row["m"] = row["m"] if row["m"] != "" else None
        return (json.dumps(rows, indent=2) + "\n").encode()
    if fmt != "csv":
        raise ValueError("fmt must be 'csv' or 'json'")
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue().encode()


def parse_table(data: bytes, fmt: str = "csv") -> list[RunRecord]:
    """Inverse of :func:`emit_table` (numbers come back as formatted)."""
    text = data.decode()
    if fmt == "json":
        rows = json.loads(text)
    else:
        rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        m = row["m"]
        out.append(
            RunRecord(
                problem_label=row["problem"],
                solver_label=row["solver"],
                m=None if m in ("", None) else int(m),
                iterations=int(row["iter"]),
                wall_time_seconds=float(row["cpu_s"]),
                final_res=float(row["res"]),
                true_res=float(row["true_res"]),
                status=row["status"],
            )
        )
    return out


def _cost(rec: RunRecord, metric: str) -> float:
    if rec.status != CONVERGED:
        return math.inf
    if metric == "iter":
        return float(rec.iterations)
    if metric == "cpu":
        return rec.wall_time_seconds
    raise ValueError("metric must be 'iter' or 'cpu'")


def performance_profile(
    records: Iterable[RunRecord], metric: str = "iter"
) -> dict[str, list[tuple[float, float]]]:
    """Per-solver step function ``tau -> rho_s(tau)``.

    ``r[p, s] = t[p, s] / min_s t[p, s]`` with failed runs at ``+inf``, and
    ``rho_s(tau)`` the fraction of problems with ``r[p, s] <= tau``. Every
    solver is sampled at the same taus, namely every finite ratio that
    occurs. A problem no solver converged on contributes infinite ratios.
    """
    costs: dict[str, dict[str, float]] = {}
    solvers: list[str] = []
    for rec in records:
        if rec.solver_label not in solvers:
            solvers.append(rec.solver_label)
        costs.setdefault(rec.problem_label, {})[rec.solver_label] = _cost(rec, metric)
    if len(solvers) < 2:
        raise ValueError("a performance profile needs at least two solvers")
    ratios: dict[str, list[float]] = {s: [] for s in solvers}
    for per_problem in costs.values():
        best = min(per_problem.get(s, math.inf) for s in solvers)
        for s in solvers:
            t = per_problem.get(s, math.inf)
            if math.isfinite(best) and best > 0:
                ratios[s].append(t / best)
            elif best == 0 and t == 0:
                ratios[s].append(1.0)
            else:
                ratios[s].append(math.inf)
    taus = sorted({r for rs in ratios.values() for r in rs if math.isfinite(r)})
    nprob = len(costs)
    return {
        s: [(tau, sum(r <= tau for r in ratios[s]) / nprob) for tau in taus] for s in solvers
    }


def emit_performance_profile(records: Sequence[RunRecord], metric: str = "iter") -> bytes:
    """CSV with columns ``solver,tau,rho``, one row per (solver, tau)."""
    profile = performance_profile(records, metric)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["solver", "tau", "rho"])
    for s, curve in profile.items():
        for tau, rho in curve:
            w.writerow([s, repr(tau), repr(rho)])
    return buf.getvalue().encode()

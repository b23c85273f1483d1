"""Textbook conjugate gradients, kept as a reference for the SPD case."""

from __future__ import annotations

import numpy as np

from ._base import (
    BreakdownKind,
    SolverConfig,
    SolveReport,
    Status,
    _Trace,
    finish,
    prepare,
    zero_rhs_report,
)


def reference_cg(a, b, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    a, b = prepare(a, b)
    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        return zero_rhs_report(a, b, cfg)

    trace = _Trace(cfg)
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rr = float(r @ r)
    history = [1.0]
    trace.state(x, r)

    k = 0
    extra = {}
    while True:
        if history[-1] < cfg.rel_tol:
            status = Status.CONVERGED
            break
        if k >= cfg.max_iter:
            status = Status.MAX_ITERATIONS
            break
        q = a.matvec(p)
        pq = float(p @ q)
        if pq <= cfg.breakdown_guard * np.linalg.norm(p) * np.linalg.norm(q):
            status = Status.BREAKDOWN
            extra = dict(breakdown_kind=BreakdownKind.NONPOSITIVE_CURVATURE, breakdown_iteration=k)
            break
        trace.direction(p, q)
        alpha = rr / pq
        x = x + alpha * p
        r = r - alpha * q
        rr_new = float(r @ r)
        p = r + (rr_new / rr) * p
        rr = rr_new
        k += 1
        history.append(np.sqrt(rr) / bnorm)
        trace.state(x, r)

    return finish(a, b, x, status, k, history, cfg, trace, **extra)

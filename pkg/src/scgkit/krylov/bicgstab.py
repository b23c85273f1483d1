"""BiCGSTAB with the shadow residual fixed at r0."""

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


def bicgstab_solve(a, b, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Van der Vorst's BiCGSTAB from ``x0 = 0``.

    One iteration is one full step (two products with ``a``); an early exit
    on the intermediate residual ``s`` also counts as one.
    """
    a, b = prepare(a, b)
    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        return zero_rhs_report(a, b, cfg)

    # rho and r0^T v are cosines that routinely dip to ~eps mid-run, so the
    # relative tests use the squared guard
    guard = cfg.breakdown_guard**2
    trace = _Trace(cfg)
    x = np.zeros_like(b)
    r = b.copy()
    shadow = b.copy()
    snorm0 = bnorm
    p = np.zeros_like(b)
    v = np.zeros_like(b)
    rho_old = alpha = omega = 1.0
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
        rho = float(shadow @ r)
        if abs(rho) <= guard * snorm0 * np.linalg.norm(r):
            status = Status.BREAKDOWN
            extra = dict(breakdown_kind=BreakdownKind.RHO, breakdown_iteration=k)
            break
        if k == 0:
            p = r.copy()
        else:
            p = r + (rho / rho_old) * (alpha / omega) * (p - omega * v)
        v = a.matvec(p)
        sv = float(shadow @ v)
        if abs(sv) <= guard * snorm0 * np.linalg.norm(v):
            status = Status.BREAKDOWN
            extra = dict(breakdown_kind=BreakdownKind.RHO, breakdown_iteration=k)
            break
        alpha = rho / sv
        s = r - alpha * v
        snorm = float(np.linalg.norm(s))
        if snorm / bnorm < cfg.rel_tol:
            x = x + alpha * p
            r = s
            k += 1
            history.append(snorm / bnorm)
            trace.state(x, r)
            continue
        t = a.matvec(s)
        tt = float(t @ t)
        omega = float(t @ s) / tt if tt > 0 else 0.0
        if abs(omega) * np.sqrt(tt) <= cfg.breakdown_guard * snorm:
            status = Status.BREAKDOWN
            extra = dict(breakdown_kind=BreakdownKind.OMEGA, breakdown_iteration=k)
            break
        x = x + alpha * p + omega * s
        r = s - omega * t
        rho_old = rho
        k += 1
        history.append(float(np.linalg.norm(r)) / bnorm)
        trace.state(x, r)

    return finish(a, b, x, status, k, history, cfg, trace, **extra)

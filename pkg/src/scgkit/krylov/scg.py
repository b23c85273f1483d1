"""Semi-conjugate gradient (SCG) and its sliding-window variant (SWI)."""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from ..errors import BreakdownError
from ._base import (
    BreakdownKind,
    SolverConfig,
    SolveReport,
    Status,
    WindowBuffer,
    _Trace,
    finish,
    prepare,
    zero_rhs_report,
)


def scg_direction_update(
    r_next: np.ndarray, v_next: np.ndarray, history: Iterable[tuple]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Deflate ``(r_next, A r_next)`` against stored directions, oldest first.

    Each coefficient is taken against the partially deflated ``q``, which
    amounts to forward substitution with the lower-triangular matrix
    ``P^T Q`` without forming it. Because every update of ``p`` is mirrored
    on ``q``, the returned pair keeps ``q = A p``.

    Args:
        r_next: new residual.
        v_next: ``A @ r_next``.
        history: ``(p_i, q_i, p_i^T q_i)`` triples ordered oldest to newest.

    Returns:
        ``(p, q, lam)`` with ``lam`` the triangular-solve coefficients.
    """
    p = r_next.copy()
    q = v_next.copy()
    lam = []
    for i, (pi, qi, pqi) in enumerate(history):
        if not pqi > 0:
            raise BreakdownError(f"non-positive p^T q in slot {i}", index=i)
        c = float(pi @ q) / pqi
        p -= c * pi
        q -= c * qi
        lam.append(c)
    return p, q, np.asarray(lam)


def _semi_conjugate(a, b, cfg: SolverConfig, capacity: Optional[int]) -> SolveReport:
    a, b = prepare(a, b)
    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        return zero_rhs_report(a, b, cfg)

    trace = _Trace(cfg)
    x = np.zeros_like(b)
    r = b.copy()
    rr = float(r @ r)
    history = [1.0]
    p = r.copy()
    q = a.matvec(p)
    window = WindowBuffer(capacity)
    trace.state(x, r)
    trace.direction(p, q)
    cap = cfg.max_directions if capacity is None else None

    k = 0
    extra = {}
    while True:
        if history[-1] < cfg.rel_tol:
            status = Status.CONVERGED
            break
        if k >= cfg.max_iter:
            status = Status.MAX_ITERATIONS
            break
        pq = float(p @ q)
        if pq <= cfg.breakdown_guard * np.linalg.norm(p) * np.linalg.norm(q):
            status = Status.BREAKDOWN
            extra = dict(breakdown_kind=BreakdownKind.NONPOSITIVE_CURVATURE, breakdown_iteration=k)
            break
        if cap is not None and len(window) >= cap:
            status = Status.MEMORY_CAP
            break
        window.push(p, q, pq)

        alpha = rr / pq
        x = x + alpha * p
        r = r - alpha * q
        rr = float(r @ r)
        k += 1
        history.append(np.sqrt(rr) / bnorm)
        trace.state(x, r)
        if history[-1] < cfg.rel_tol or k >= cfg.max_iter:
            continue

        v = a.matvec(r)
        p, q, _ = scg_direction_update(r, v, window)
        trace.direction(p, q)

    return finish(a, b, x, status, k, history, cfg, trace, **extra)


def scg_solve(a, b, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Solve ``a x = b`` from ``x0 = 0`` with full-history semi-conjugate directions.

    Every new direction is made A-conjugate (from the left) to all earlier
    ones, so storage grows by two vectors per iteration. Set
    ``cfg.max_directions`` to bound it.
    """
    return _semi_conjugate(a, b, cfg, capacity=None)


def swi_solve(a, b, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Sliding-window SCG.

    Each new direction is deflated against the ``cfg.memory_m`` most recent
    directions only, so ``p_i^T A p_k = 0`` holds for ``k - m <= i < k``.
    ``memory_m = 0`` keeps no history and takes ``p_k = r_k``.
    """
    return _semi_conjugate(a, b, cfg, capacity=cfg.memory_m)

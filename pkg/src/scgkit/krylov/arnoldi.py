"""FOM and DIOM through a progressive, pivot-free LU of the Hessenberg matrix."""

from __future__ import annotations

from collections import deque
from typing import Optional

import numpy as np

from ._base import (
    ArnoldiState,
    BreakdownKind,
    SolverConfig,
    SolveReport,
    Status,
    _Trace,
    finish,
    orthogonalize,
    prepare,
    zero_rhs_report,
)


def _orthogonalization_solve(a, b, cfg: SolverConfig, window: Optional[int]) -> SolveReport:
    # window=None: full orthogonalization (FOM); window=m: incomplete (DIOM).
    a, b = prepare(a, b)
    beta = float(np.linalg.norm(b))
    if beta == 0.0:
        return zero_rhs_report(a, b, cfg)

    trace = _Trace(cfg)
    arnoldi = ArnoldiState(beta=beta) if cfg.record_directions else None
    basis = deque([b / beta], maxlen=window)
    # (p_hat_i, A p_hat_i) for the directions that U couples to the next one
    dirs = deque(maxlen=None if window is None else max(window - 1, 0))
    x = np.zeros_like(b)
    r = b.copy()
    history = [1.0]
    trace.state(x, r)
    if arnoldi is not None:
        arnoldi.basis.append(basis[0].copy())

    l_sub = 0.0  # l_{k,k-1}
    l_hist = deque(maxlen=window)
    zeta = beta
    k = 0
    extra = {}
    status = None
    while status is None:
        if history[-1] < cfg.rel_tol:
            status = Status.CONVERGED
            break
        if k >= cfg.max_iter:
            status = Status.MAX_ITERATIONS
            break
        k += 1
        vk = basis[-1]
        av = a.matvec(vk)
        # basis holds v_{i0..k}
        proj, w = orthogonalize(basis, av)
        h_next = float(np.linalg.norm(w))
        h = np.append(proj, h_next)

        # column k of U, top of band down: u_ik = h_ik - l_{i,i-1} u_{i-1,k}
        u = h[:-1].copy()
        band_l = list(l_hist)[len(l_hist) - (u.size - 1):] if u.size > 1 else []
        for j in range(1, u.size):
            u[j] -= band_l[j - 1] * u[j - 1]
        ukk = u[-1]
        if abs(ukk) <= cfg.breakdown_guard * np.max(np.abs(h)) or ukk == 0.0:
            k -= 1
            status = Status.BREAKDOWN
            extra = dict(breakdown_kind=BreakdownKind.PIVOT, breakdown_iteration=k)
            break

        if k > 1:
            zeta = -l_sub * zeta
        # coefficients u_ik for the stored directions (most recent last)
        coupled = u[:-1][-len(dirs):] if dirs else ()
        p = vk.copy()
        ap = av.copy()
        for c, (pi, api) in zip(coupled, dirs):
            p -= c * pi
            ap -= c * api
        p /= ukk
        ap /= ukk

        x = x + zeta * p
        r = r - zeta * ap
        history.append(float(np.linalg.norm(r)) / beta)
        trace.state(x, r)
        trace.direction(p, ap)
        if dirs.maxlen != 0:
            dirs.append((p, ap))

        l_sub = h_next / ukk
        l_hist.append(l_sub)

        if arnoldi is not None:
            col = np.zeros(k + 1)
            col[k + 1 - h.size:] = h
            arnoldi.add_column(col)

        lucky = h_next <= np.finfo(float).eps * np.linalg.norm(av)
        if lucky:
            status = Status.CONVERGED
            break
        vnext = w / h_next
        basis.append(vnext)
        if arnoldi is not None:
            arnoldi.basis.append(vnext.copy())

    return finish(a, b, x, status, k, history, cfg, trace, arnoldi=arnoldi, **extra)


def fom_solve(a, b, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Full orthogonalization method from ``x0 = 0``.

    The residual history holds norms of the recursively updated residual.
    With ``cfg.record_directions`` the report carries the Arnoldi basis and
    Hessenberg matrix in ``report.arnoldi`` and the pairs
    ``(p_hat_k, A p_hat_k)`` in ``report.directions``.
    """
    return _orthogonalization_solve(a, b, cfg, window=None)


def diom_solve(a, b, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Direct incomplete orthogonalization method with window ``cfg.memory_m``.

    Each Arnoldi vector is orthogonalized against the previous ``m`` basis
    vectors only; each direction combines the previous ``m - 1`` directions.
    """
    if cfg.memory_m < 1:
        raise ValueError("diom needs memory_m >= 1")
    return _orthogonalization_solve(a, b, cfg, window=cfg.memory_m)

"""GMRES (full, unrestarted) and DQGMRES with Givens-rotation least squares."""

from __future__ import annotations

from collections import deque

import numpy as np
import scipy.linalg

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


def _givens(a: float, b: float) -> tuple[float, float, float]:
    d = float(np.hypot(a, b))
    if d == 0.0:
        return 1.0, 0.0, 0.0
    return a / d, b / d, d


def gmres_solve(a, b, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Unrestarted GMRES from ``x0 = 0``.

    The history is the rotation estimate ``|g_{k+1}| / beta``; the iterate is
    formed only at exit.
    """
    a, b = prepare(a, b)
    beta = float(np.linalg.norm(b))
    if beta == 0.0:
        return zero_rhs_report(a, b, cfg)

    trace = _Trace(cfg)
    arnoldi = ArnoldiState(beta=beta) if cfg.record_directions else None
    basis = [b / beta]
    if arnoldi is not None:
        arnoldi.basis.append(basis[0].copy())
    cs: list[float] = []
    sn: list[float] = []
    g = [beta]
    rcols: list[np.ndarray] = []
    history = [1.0]
    trace.state(np.zeros_like(b), b)

    k = 0
    while True:
        if history[-1] < cfg.rel_tol:
            status = Status.CONVERGED
            break
        if k >= cfg.max_iter:
            status = Status.MAX_ITERATIONS
            break
        av = a.matvec(basis[-1])
        proj, w = orthogonalize(basis, av)
        h = np.append(proj, np.linalg.norm(w))
        if arnoldi is not None:
            arnoldi.add_column(h.copy())
        col = h.copy()
        for j in range(k):
            t = cs[j] * col[j] + sn[j] * col[j + 1]
            col[j + 1] = -sn[j] * col[j] + cs[j] * col[j + 1]
            col[j] = t
        c, s, d = _givens(col[k], col[k + 1])
        col[k] = d
        cs.append(c)
        sn.append(s)
        g.append(-s * g[k])
        g[k] = c * g[k]
        rcols.append(col[: k + 1])
        k += 1
        history.append(abs(g[k]) / beta)
        if trace.residuals is not None:
            x = _assemble(basis, rcols, g)
            trace.state(x, b - a.matvec(x))

        if h[k] <= np.finfo(float).eps * np.linalg.norm(av):
            status = Status.CONVERGED
            break
        basis.append(w / h[k])
        if arnoldi is not None:
            arnoldi.basis.append(basis[-1].copy())

    x = _assemble(basis, rcols, g) if k else np.zeros_like(b)
    return finish(a, b, x, status, k, history, cfg, trace, arnoldi=arnoldi)


def _assemble(basis, rcols, g) -> np.ndarray:
    k = len(rcols)
    rmat = np.zeros((k, k))
    for j, col in enumerate(rcols):
        rmat[: j + 1, j] = col
    y = scipy.linalg.solve_triangular(rmat, np.asarray(g[:k]))
    return np.column_stack(basis[:k]) @ y


def dqgmres_solve(a, b, cfg: SolverConfig = SolverConfig()) -> SolveReport:
    """Direct quasi-GMRES with window ``cfg.memory_m``.

    Incomplete orthogonalization against the last ``m`` basis vectors, a
    progressive QR of the banded Hessenberg matrix and a direction update
    over the last ``m`` directions. The history is the quasi-residual
    ``|gamma_{k+1}| / beta``.
    """
    a, b = prepare(a, b)
    m = cfg.memory_m
    if m < 1:
        raise ValueError("dqgmres needs memory_m >= 1")
    beta = float(np.linalg.norm(b))
    if beta == 0.0:
        return zero_rhs_report(a, b, cfg)

    trace = _Trace(cfg)
    basis = deque([b / beta], maxlen=m)
    rots = deque(maxlen=m)  # (c, s) of the last m rotations, oldest first
    dirs = deque(maxlen=m)
    x = np.zeros_like(b)
    gamma = beta
    history = [1.0]
    trace.state(x, b)

    k = 0
    extra = {}
    while True:
        if history[-1] < cfg.rel_tol:
            status = Status.CONVERGED
            break
        if k >= cfg.max_iter:
            status = Status.MAX_ITERATIONS
            break
        vk = basis[-1]
        av = a.matvec(vk)
        nb = len(basis)
        # rows (k - nb + 1) .. (k + 1), 0-based k for the current column
        col = np.zeros(len(rots) + 2)
        off = col.size - (nb + 1)
        proj, w = orthogonalize(basis, av)
        col[off : off + nb] = proj
        h_next = float(np.linalg.norm(w))
        col[-1] = h_next
        for j, (c, s) in enumerate(rots):
            t = c * col[j] + s * col[j + 1]
            col[j + 1] = -s * col[j] + c * col[j + 1]
            col[j] = t
        c, s, d = _givens(col[-2], col[-1])
        if d <= cfg.breakdown_guard * np.linalg.norm(av) or d == 0.0:
            status = Status.BREAKDOWN
            extra = dict(breakdown_kind=BreakdownKind.PIVOT, breakdown_iteration=k)
            break
        col[-2] = d
        rots.append((c, s))
        gamma_k = c * gamma
        gamma = -s * gamma

        p = vk.copy()
        for cij, pi in zip(col[: len(dirs)], dirs):
            p -= cij * pi
        p /= d
        dirs.append(p)
        x = x + gamma_k * p
        k += 1
        history.append(abs(gamma) / beta)
        if trace.residuals is not None:
            trace.state(x, b - a.matvec(x))

        if h_next <= np.finfo(float).eps * np.linalg.norm(av):
            status = Status.CONVERGED
            break
        basis.append(w / h_next)

    return finish(a, b, x, status, k, history, cfg, trace, **extra)

"""Configuration, reports and bookkeeping shared by every solver."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from ..errors import DimensionError
from ..sparse import DEFAULT_GUARD, SparseMatrix, as_sparse


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    BREAKDOWN = "Breakdown"
    MEMORY_CAP = "MemoryCap"

    def __str__(self):
        return self.value


class BreakdownKind(str, enum.Enum):
    NONPOSITIVE_CURVATURE = "NonpositiveCurvature"
    PIVOT = "PivotBreakdown"
    RHO = "RhoBreakdown"
    OMEGA = "OmegaBreakdown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SolverConfig:
    """Stopping rule and knobs common to all solvers.

    ``memory_m`` is the window width for swi, diom and dqgmres.
    ``max_directions`` caps the number of (p, q) pairs scg may store; once
    exceeded the solve ends with ``Status.MEMORY_CAP``.
    """

    rel_tol: float = 1e-6
    max_iter: int = 10_000
    memory_m: int = 2
    breakdown_guard: float = DEFAULT_GUARD
    record_directions: bool = False
    record_residuals: bool = False
    recompute_final_residual: bool = True
    max_directions: Optional[int] = None

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.memory_m < 0:
            raise ValueError("memory_m must be non-negative")
        if self.breakdown_guard < 0:
            raise ValueError("breakdown_guard must be non-negative")


@dataclass
class ArnoldiState:
    """Basis vectors and the (column-growing) Hessenberg matrix."""

    basis: list = field(default_factory=list)
    hessenberg: np.ndarray = field(default_factory=lambda: np.zeros((1, 0)))
    beta: float = 0.0

    def add_column(self, col: np.ndarray) -> None:
        k = self.hessenberg.shape[1] + 1
        h = np.zeros((k + 1, k))
        h[: k, : k - 1] = self.hessenberg
        h[: col.size, k - 1] = col
        self.hessenberg = h


@dataclass
class SolveReport:
    """Outcome of one solve.

    ``breakdown_iteration`` counts the iterations completed before the
    breakdown was detected. ``directions``, ``residual_vectors`` and
    ``iterates`` are filled only when the config asks for them.
    """

    solution: np.ndarray
    status: Status
    iterations: int
    residual_history: np.ndarray
    true_final_residual: Optional[float] = None
    breakdown_kind: Optional[BreakdownKind] = None
    breakdown_iteration: Optional[int] = None
    directions: Optional[list] = None
    residual_vectors: Optional[list] = None
    iterates: Optional[list] = None
    arnoldi: Optional[ArnoldiState] = None

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    @property
    def final_residual(self) -> float:
        return float(self.residual_history[-1])


class WindowBuffer:
    """FIFO store of (p, q, p^T q) triples.

    With ``capacity=None`` nothing is ever evicted (full-history SCG).
    """

    def __init__(self, capacity: Optional[int]):
        if capacity is not None and capacity < 0:
            raise ValueError("capacity must be non-negative")
        self.capacity = capacity
        self._slots: deque = deque(maxlen=capacity)

    def push(self, p: np.ndarray, q: np.ndarray, pq: float) -> None:
        self._slots.append((p, q, pq))

    def __len__(self) -> int:
        return len(self._slots)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._slots)

    @property
    def newest(self) -> tuple:
        return self._slots[-1]


class _Trace:
    """Optional per-iteration snapshots requested through the config."""

    def __init__(self, cfg: SolverConfig):
        self.directions = [] if cfg.record_directions else None
        self.residuals = [] if cfg.record_residuals else None
        self.iterates = [] if cfg.record_residuals else None

    def direction(self, p, q):
        if self.directions is not None:
            self.directions.append((p.copy(), q.copy()))

    def state(self, x, r):
        if self.residuals is not None:
            self.residuals.append(r.copy())
            self.iterates.append(x.copy())


def orthogonalize(basis, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Modified Gram-Schmidt of ``w`` against ``basis``, with one conditional repeat.

    A second pass runs when the first removes most of ``w`` (norm drops
    below ``1/sqrt(2)`` of its input), which keeps the basis orthogonal to
    working precision. Returns the projection coefficients and the
    remainder.
    """
    h = np.zeros(len(basis))
    before = np.linalg.norm(w)
    for j, vi in enumerate(basis):
        c = vi @ w
        w = w - c * vi
        h[j] = c
    if np.linalg.norm(w) < before / np.sqrt(2.0):
        for j, vi in enumerate(basis):
            c = vi @ w
            w = w - c * vi
            h[j] += c
    return h, w


def prepare(a, b) -> tuple[SparseMatrix, np.ndarray]:
    a = as_sparse(a)
    b = np.asarray(b, dtype=float)
    if a.nrows != a.ncols:
        raise DimensionError("matrix must be square")
    if b.ndim != 1 or b.size != a.nrows:
        raise DimensionError(f"rhs length {b.size} does not match order {a.nrows}")
    return a, b


def finish(a, b, x, status, k, history, cfg, trace=None, **extra) -> SolveReport:
    true_res = None
    if cfg.recompute_final_residual:
        bn = np.linalg.norm(b)
        true_res = float(np.linalg.norm(b - a.matvec(x)) / bn) if bn > 0 else 0.0
    return SolveReport(
        solution=x,
        status=status,
        iterations=k,
        residual_history=np.asarray(history, dtype=float),
        true_final_residual=true_res,
        directions=trace.directions if trace else None,
        residual_vectors=trace.residuals if trace else None,
        iterates=trace.iterates if trace else None,
        **extra,
    )


def zero_rhs_report(a, b, cfg) -> SolveReport:
    trace = _Trace(cfg)
    x = np.zeros_like(b)
    trace.state(x, b)
    return finish(a, b, x, Status.CONVERGED, 0, [0.0], cfg, trace)

"""Test problems: the two small worked examples and two generators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .sparse import SparseMatrix, dense_solve_oracle, symmetric_part_spectrum


@dataclass(frozen=True)
class LinearProblem:
    matrix: SparseMatrix
    rhs: np.ndarray
    known_solution: Optional[np.ndarray] = None
    label: str = ""

    def __post_init__(self):
        if self.matrix.nrows != self.matrix.ncols or self.rhs.shape != (self.matrix.nrows,):
            raise ValueError("matrix must be square and match rhs")
        if self.known_solution is not None:
            res = np.linalg.norm(self.matrix @ self.known_solution - self.rhs)
            if res > 1e-10 * max(np.linalg.norm(self.rhs), 1e-300):
                raise ValueError("known_solution does not satisfy the system")

    @property
    def order(self) -> int:
        return self.matrix.nrows


def with_ones_solution(matrix: SparseMatrix, label: str = "") -> LinearProblem:
    """Pair ``matrix`` with ``b = A @ 1`` so the exact solution is all ones."""
    ones = np.ones(matrix.ncols)
    return LinearProblem(matrix, matrix @ ones, ones, label)


def example_3x3() -> LinearProblem:
    """3x3 positive definite system on which neither ``||x_k - x*||`` nor ``||x_k||`` is monotone."""
    a = np.array([[1.0, 0.0, -2.0], [0.0, 1.0, 0.0], [2.0, 0.0, 2.0]])
    b = np.array([1.0, 0.0, 0.0])
    x = np.array([1.0, 0.0, -1.0]) / 3.0
    return LinearProblem(SparseMatrix.from_dense(a), b, x, "example_3x3")


def example_5x5() -> LinearProblem:
    """5x5 system separating SWI(2) from DIOM(2)."""
    a = np.array(
        [
            [1.0, 0.0, 0.0, 0.0, -1.0],
            [0.0, 1.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, 0.0, 2.0],
        ]
    )
    b = np.array([1.0, 1.0, 1.0, 0.0, 0.0])
    return LinearProblem(SparseMatrix.from_dense(a), b, dense_solve_oracle(a, b), "example_5x5")


def identity_problem(n: int) -> LinearProblem:
    return with_ones_solution(SparseMatrix.identity(n), f"identity-{n}")


def _boundary(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # profile given on (-1, 1)^2, pulled back to the unit square
    xs, ys = 2 * x - 1, 2 * y - 1
    g = np.zeros_like(x)
    g[np.isclose(ys, -1.0)] = xs[np.isclose(ys, -1.0)]
    g[np.isclose(xs, -1.0)] = -1.0
    g[np.isclose(xs, 1.0)] = 1.0
    g[np.isclose(ys, 1.0)] = 0.0
    return g


def convection_diffusion(
    grid_points_per_side: int,
    epsilon: float,
    wind: tuple[float, float] = (0.0, 1.0),
    scheme: str = "upwind",
) -> LinearProblem:
    """Five-point finite differences for ``-eps * lap(u) + w . grad(u) = 0``.

    Unknowns sit on the ``N x N`` interior of a uniform grid on the unit
    square with spacing ``h = 1 / (N + 1)``, numbered x-fastest. Dirichlet
    values are moved to the right-hand side. Diffusion is always the
    standard 5-point Laplacian; convection is differenced either
    ``"upwind"`` (first order, against the wind) or ``"central"``. Both
    give a positive definite symmetric part; with central differences it
    stays ``eps`` times the Laplacian, so once the mesh Peclet number
    ``|w| h / (2 eps)`` exceeds 1 the skew part dominates and short-window
    methods can stagnate.
    """
    if scheme not in ("upwind", "central"):
        raise ValueError("scheme must be 'upwind' or 'central'")
    n = int(grid_points_per_side)
    if n < 3:
        raise ValueError("grid_points_per_side must be at least 3")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    wx, wy = (float(w) for w in wind)
    h = 1.0 / (n + 1)
    d = epsilon / h**2
    diag = 4 * d
    if scheme == "central":
        cx, cy = wx / (2 * h), wy / (2 * h)
        stencil = {  # (di, dj): coefficient
            (1, 0): -d + cx,
            (-1, 0): -d - cx,
            (0, 1): -d + cy,
            (0, -1): -d - cy,
        }
    else:
        diag += (abs(wx) + abs(wy)) / h
        stencil = {
            (1, 0): -d + min(wx, 0.0) / h,
            (-1, 0): -d - max(wx, 0.0) / h,
            (0, 1): -d + min(wy, 0.0) / h,
            (0, -1): -d - max(wy, 0.0) / h,
        }

    ii, jj = np.meshgrid(np.arange(1, n + 1), np.arange(1, n + 1))
    ii, jj = ii.ravel(), jj.ravel()
    idx = (jj - 1) * n + (ii - 1)
    rows = [idx]
    cols = [idx]
    vals = [np.full(idx.size, diag)]
    rhs = np.zeros(n * n)
    for (di, dj), coef in stencil.items():
        ni, nj = ii + di, jj + dj
        inside = (ni >= 1) & (ni <= n) & (nj >= 1) & (nj <= n)
        rows.append(idx[inside])
        cols.append((nj[inside] - 1) * n + (ni[inside] - 1))
        vals.append(np.full(inside.sum(), coef))
        out = ~inside
        g = _boundary(ni[out] * h, nj[out] * h)
        np.add.at(rhs, idx[out], -coef * g)
    mat = SparseMatrix.from_coo(
        np.concatenate(rows), np.concatenate(cols), np.concatenate(vals), (n * n, n * n)
    )
    label = f"convdiff-{scheme}-N{n}-eps{epsilon:g}-w{wx:g},{wy:g}"
    return LinearProblem(mat, rhs, None, label)


def random_pd_system(order: int, seed: int, skew_scale: float = 0.5) -> LinearProblem:
    """Dense random ``A = S + skew_scale * K + sigma * I`` with ``b = A @ 1``.

    ``S`` is random symmetric, ``K`` random skew-symmetric, and ``sigma``
    shifts the symmetric part so its smallest eigenvalue is 1.
    """
    if order < 1:
        raise ValueError("order must be positive")
    if skew_scale < 0:
        raise ValueError("skew_scale must be non-negative")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((order, order)) / np.sqrt(order)
    f = rng.standard_normal((order, order)) / np.sqrt(order)
    sym = 0.5 * (g + g.T)
    skew = 0.5 * (f - f.T)
    a = sym + (1.0 - np.linalg.eigvalsh(sym)[0]) * np.eye(order) + skew_scale * skew
    lmin = symmetric_part_spectrum(a)[0]
    if lmin < 1.0:
        a += (1.0 - lmin) * np.eye(order)
    mat = SparseMatrix.from_dense(a)
    return with_ones_solution(mat, f"random-n{order}-s{seed}-k{skew_scale:g}")

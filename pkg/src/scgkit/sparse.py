"""Compressed sparse-row matrices and the small dense kernels used around them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import warnings

import numpy as np
import scipy.linalg
import scipy.sparse

from .errors import BreakdownError, DimensionError, SingularMatrixError

EPS = np.finfo(float).eps
DEFAULT_GUARD = 1e2 * EPS


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """Real CSR matrix with sorted, duplicate-free rows.

    Construct through :meth:`from_coo` or :meth:`from_dense` unless the
    arrays are already canonical; the constructor validates but does not
    reorder.
    """

    nrows: int
    ncols: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    values: np.ndarray
    _csr: scipy.sparse.csr_matrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ro = np.ascontiguousarray(self.row_offsets, dtype=np.int64)
        ci = np.ascontiguousarray(self.col_indices, dtype=np.int64)
        va = np.ascontiguousarray(self.values, dtype=float)
        if ro.shape != (self.nrows + 1,):
            raise ValueError("row_offsets must have length nrows + 1")
        if ro[0] != 0 or ro[-1] != ci.size or np.any(np.diff(ro) < 0):
            raise ValueError("row_offsets must be non-decreasing from 0 to nnz")
        if ci.shape != va.shape:
            raise ValueError("col_indices and values differ in length")
        if ci.size:
            if ci.min() < 0 or ci.max() >= self.ncols:
                raise ValueError("column index out of range")
            # strictly increasing within each row
            step = np.diff(ci)
            row_start = np.zeros(ci.size, dtype=bool)
            row_start[ro[:-1][np.diff(ro) > 0]] = True
            if np.any((step <= 0) & ~row_start[1:]):
                raise ValueError("column indices must be strictly increasing per row")
        for arr in (ro, ci, va):
            arr.setflags(write=False)
        object.__setattr__(self, "row_offsets", ro)
        object.__setattr__(self, "col_indices", ci)
        object.__setattr__(self, "values", va)
        csr = scipy.sparse.csr_matrix((va, ci, ro), shape=(self.nrows, self.ncols))
        csr.has_sorted_indices = True
        object.__setattr__(self, "_csr", csr)

    @classmethod
    def from_coo(cls, rows, cols, vals, shape: tuple[int, int]) -> SparseMatrix:
        """Build from triplets, summing duplicates."""
        coo = scipy.sparse.coo_matrix(
            (np.asarray(vals, dtype=float), (np.asarray(rows), np.asarray(cols))),
            shape=shape,
        )
        csr = coo.tocsr()  # sums duplicates
        csr.sort_indices()
        return cls(shape[0], shape[1], csr.indptr, csr.indices, csr.data)

    @classmethod
    def from_dense(cls, a) -> SparseMatrix:
        a = np.asarray(a, dtype=float)
        if a.ndim != 2:
            raise DimensionError("expected a 2-D array")
        rows, cols = np.nonzero(a)
        return cls.from_coo(rows, cols, a[rows, cols], a.shape)

    @classmethod
    def from_scipy(cls, m) -> SparseMatrix:
        coo = scipy.sparse.coo_matrix(m)
        return cls.from_coo(coo.row, coo.col, coo.data, coo.shape)

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        idx = np.arange(n)
        return cls(n, n, np.arange(n + 1), idx, np.ones(n))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return int(self.values.size)

    @cached_property
    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def to_dense(self) -> np.ndarray:
        return self._csr.toarray()

    def to_scipy(self) -> scipy.sparse.csr_matrix:
        return self._csr.copy()

    def transpose(self) -> SparseMatrix:
        return SparseMatrix.from_scipy(self._csr.T)

    @property
    def T(self) -> SparseMatrix:
        return self.transpose()

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or x.size != self.ncols:
            raise DimensionError(f"matrix has {self.ncols} columns, vector has length {x.size}")
        return self._csr @ x

    def __matmul__(self, x):
        return self.matvec(x)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.row_offsets, other.row_offsets)
            and np.array_equal(self.col_indices, other.col_indices)
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None


def as_sparse(a) -> SparseMatrix:
    """Coerce dense arrays and scipy matrices to :class:`SparseMatrix`."""
    if isinstance(a, SparseMatrix):
        return a
    if scipy.sparse.issparse(a):
        return SparseMatrix.from_scipy(a)
    return SparseMatrix.from_dense(a)


def spmv(a: SparseMatrix, x: np.ndarray) -> np.ndarray:
    """Return ``a @ x``; each row is accumulated in ascending column order."""
    return a.matvec(x)


@dataclass(frozen=True)
class TriangularSystem:
    lower: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        rhs = np.asarray(self.rhs, dtype=float)
        if lower.ndim != 2 or lower.shape[0] != lower.shape[1] or rhs.shape != (lower.shape[0],):
            raise DimensionError("lower must be square and match rhs")
        if np.any(np.triu(lower, 1) != 0):
            raise ValueError("strictly upper part must be zero")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "rhs", rhs)

    @property
    def order(self) -> int:
        return self.lower.shape[0]


def forward_substitute(system: TriangularSystem, guard: float = DEFAULT_GUARD) -> np.ndarray:
    """Solve a lower-triangular system row by row.

    Raises:
        BreakdownError: if ``|L[i, i]| <= guard * ||L[i, :]||_inf``.
    """
    lower, rhs = system.lower, system.rhs
    n = system.order
    lam = np.zeros(n)
    for i in range(n):
        d = lower[i, i]
        if abs(d) <= guard * np.max(np.abs(lower[i, : i + 1])) or d == 0.0:
            raise BreakdownError(f"diagonal entry {i} below breakdown guard", index=i)
        acc = rhs[i]
        for j in range(i):
            acc -= lower[i, j] * lam[j]
        lam[i] = acc / d
    return lam


def dense_solve_oracle(a, b) -> np.ndarray:
    """Solve a small dense system by LU with partial pivoting."""
    a = np.asarray(a.to_dense() if isinstance(a, SparseMatrix) else a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("matrix must be square")
    if b.shape != (a.shape[0],):
        raise DimensionError("rhs length does not match matrix order")
    with warnings.catch_warnings():
        # exact singularity is reported below as SingularMatrixError
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    diag = np.abs(np.diag(lu))
    if diag.min() <= a.shape[0] * EPS * max(diag.max(), np.abs(a).max()):
        raise SingularMatrixError("matrix is singular to working precision")
    return scipy.linalg.lu_solve((lu, piv), b)


def symmetric_part_spectrum(a) -> tuple[float, float, float]:
    """Extreme eigenvalues of (A + A^T)/2 and spectral radius of (A - A^T)/2.

    The skew part is normal, so its spectral radius is its largest
    singular value, taken here from ``S^T S``. That product is unchanged
    when ``S`` flips sign, so ``A`` and ``A^T`` give identical triples.
    """
    a = np.asarray(a.to_dense() if isinstance(a, SparseMatrix) else a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("matrix must be square")
    h = 0.5 * (a + a.T)
    s = 0.5 * (a - a.T)
    ev = np.linalg.eigvalsh(h)
    rho = float(np.sqrt(max(np.linalg.eigvalsh(s.T @ s)[-1], 0.0))) if a.size else 0.0
    return float(ev[0]), float(ev[-1]), rho

"""Sufficient condition for sliding-window convergence, evaluated densely."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError, SingularMatrixError
from ..sparse import SparseMatrix, dense_solve_oracle, symmetric_part_spectrum


@dataclass(frozen=True)
class ConvergenceCertificate:
    condition_holds: bool
    lambda_min_H: float
    lambda_max_H: float
    rho_S: float
    contraction_bound: float


def convergence_certificate(a) -> ConvergenceCertificate:
    """Test ``lambda_min(H(A^-1)) > rho(S(A^-1))`` and report the energy contraction.

    When the condition holds, each SWI step satisfies
    ``d_{k+1}^T A d_{k+1} <= bound * d_k^T A d_k`` with
    ``bound = 1 - (lmin**2 - rho**2) / (lmin * lmax)``, where ``lmin``/``lmax``
    bound the spectrum of the symmetric part of ``A^-1`` and ``rho`` is the
    spectral radius of its skew part. H and S denote those two parts.
    """
    a = np.asarray(a.to_dense() if isinstance(a, SparseMatrix) else a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("matrix must be square")
    n = a.shape[0]
    eye = np.eye(n)
    ainv = np.column_stack([dense_solve_oracle(a, eye[:, j]) for j in range(n)])
    lmin, lmax, rho = symmetric_part_spectrum(ainv)
    if lmin <= 0:
        bound = np.inf
    else:
        bound = 1.0 - (lmin**2 - rho**2) / (lmin * lmax)
    return ConvergenceCertificate(
        condition_holds=bool(lmin > rho),
        lambda_min_H=lmin,
        lambda_max_H=lmax,
        rho_S=rho,
        contraction_bound=float(bound),
    )

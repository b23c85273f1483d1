"""Semi-conjugate gradient solvers and reference Krylov methods for sparse systems."""

from .errors import (
    BreakdownError,
    DimensionError,
    MatrixMarketError,
    SingularMatrixError,
    UnsupportedFormatError,
)
from .krylov import (
    SOLVERS,
    ArnoldiState,
    BreakdownKind,
    ConvergenceCertificate,
    SolveReport,
    SolverConfig,
    Status,
    WindowBuffer,
    bicgstab_solve,
    convergence_certificate,
    diom_solve,
    dqgmres_solve,
    fom_solve,
    gmres_solve,
    reference_cg,
    scg_direction_update,
    scg_solve,
    swi_solve,
)
from .mmio import read_matrix_market, write_matrix_market
from .problems import (
    LinearProblem,
    convection_diffusion,
    example_3x3,
    example_5x5,
    identity_problem,
    random_pd_system,
    with_ones_solution,
)
from .sparse import (
    SparseMatrix,
    TriangularSystem,
    dense_solve_oracle,
    forward_substitute,
    spmv,
    symmetric_part_spectrum,
)

__version__ = "0.1.0"

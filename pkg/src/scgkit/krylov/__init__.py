"""Krylov solvers for unsymmetric positive definite systems."""

from ._base import ArnoldiState, BreakdownKind, SolveReport, SolverConfig, Status, WindowBuffer
from .arnoldi import diom_solve, fom_solve
from .bicgstab import bicgstab_solve
from .certificate import ConvergenceCertificate, convergence_certificate
from .cg import reference_cg
from .gmres import dqgmres_solve, gmres_solve
from .scg import scg_direction_update, scg_solve, swi_solve

SOLVERS = {
    "scg": scg_solve,
    "swi": swi_solve,
    "fom": fom_solve,
    "diom": diom_solve,
    "gmres": gmres_solve,
    "dqgmres": dqgmres_solve,
    "bicgstab": bicgstab_solve,
    "cg": reference_cg,
}
WINDOWED = frozenset({"swi", "diom", "dqgmres"})

__all__ = [
    "ArnoldiState",
    "BreakdownKind",
    "ConvergenceCertificate",
    "SOLVERS",
    "SolveReport",
    "SolverConfig",
    "Status",
    "WINDOWED",
    "WindowBuffer",
    "bicgstab_solve",
    "convergence_certificate",
    "diom_solve",
    "dqgmres_solve",
    "fom_solve",
    "gmres_solve",
    "reference_cg",
    "scg_direction_update",
    "scg_solve",
    "swi_solve",
]

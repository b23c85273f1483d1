"""Two tiny systems that show what the semi-conjugate methods do and don't guarantee.

Run with ``python demos/01_small_examples.py``.
"""

import numpy as np

from scgkit import SolverConfig, diom_solve, example_3x3, example_5x5, fom_solve, scg_solve, swi_solve

np.set_printoptions(precision=5, suppress=True)
trace = SolverConfig(record_directions=True, record_residuals=True)

# A 3x3 positive definite but unsymmetric matrix. Full SCG and FOM both
# finish in two steps, yet the first step moves *away* from the solution.
prob = example_3x3()
x_star = prob.known_solution
print("3x3 system, b =", prob.rhs)
for name, solver in [("scg", scg_solve), ("fom", fom_solve)]:
    rep = solver(prob.matrix, prob.rhs, trace)
    print(f"  {name}: {rep.iterations} iterations, x = {rep.solution}")
    for k, x in enumerate(rep.iterates):
        print(f"    k={k}  |x_k - x*| = {np.linalg.norm(x - x_star):.5f}   |x_k| = {np.linalg.norm(x):.5f}")

# FOM exposes its Arnoldi data: the projected matrix and the second basis vector.
arn = fom_solve(prob.matrix, prob.rhs, trace).arnoldi
print("  Hessenberg (square part):\n", arn.hessenberg[:2, :2])
print("  second basis vector:", arn.basis[1])

# A 5x5 system where a window of two directions gives different methods
# depending on *what* is kept orthogonal.
prob = example_5x5()
a = prob.matrix.to_dense()
swi = swi_solve(prob.matrix, prob.rhs, SolverConfig(memory_m=2, record_directions=True, record_residuals=True))
diom = diom_solve(prob.matrix, prob.rhs, SolverConfig(memory_m=2, record_directions=True, record_residuals=True))
p = [d for d, _ in swi.directions]
q = [d for d, _ in diom.directions]
r_swi, r_diom = swi.residual_vectors, diom.residual_vectors

print("\n5x5 system, window m = 2")
print(f"  SWI : p3' A p4 = {p[3] @ a @ p[4]: .2e}   r3' r5 = {r_swi[3] @ r_swi[5]: .8f}  (-12/5491 = {-12 / 5491:.8f})")
print(f"  DIOM: p3' A p4 = {q[2] @ a @ q[3]: .8f}   r3' r5 = {r_diom[3] @ r_diom[5]: .2e}  (sqrt(6)/303 = {np.sqrt(6) / 303:.8f})")
print("  SWI keeps the recent directions conjugate and gives up residual orthogonality;")
print("  DIOM does the opposite, so with truncation the two methods part ways.")

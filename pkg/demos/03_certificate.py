"""A dense sufficient condition for SWI convergence, checked against actual runs.

``convergence_certificate`` compares the smallest eigenvalue of the symmetric
part of A^-1 with the spectral radius of its skew part. When the first is
larger, the A-energy of the SWI error must shrink by at least the reported
factor every step.
"""

import numpy as np

from scgkit import (
    SolverConfig,
    convergence_certificate,
    dense_solve_oracle,
    example_3x3,
    random_pd_system,
    swi_solve,
)


def energies(prob, m):
    a = prob.matrix.to_dense()
    x_star = dense_solve_oracle(a, prob.rhs)
    rep = swi_solve(prob.matrix, prob.rhs, SolverConfig(memory_m=m, record_residuals=True, max_iter=60))
    return rep, [float((x - x_star) @ a @ (x - x_star)) for x in rep.iterates]


for skew in (0.0, 0.5, 2.0, 6.0):
    prob = random_pd_system(40, 3, skew)
    cert = convergence_certificate(prob.matrix)
    rep, e = energies(prob, 2)
    ratios = np.array(e[1:]) / np.array(e[:-1])
    print(f"skew {skew:3.1f}: condition {cert.condition_holds!s:<5} bound {cert.contraction_bound:6.3f}"
          f"  worst observed ratio {ratios.max():6.3f}  SWI(2) {rep.iterations} its, {rep.status}")

# The certificate is only sufficient. The 3x3 example fails it, and the
# memoryless variant (m = 0, p_k = r_k) really does diverge there, while
# m = 2 keeps enough history to finish.
prob = example_3x3()
print("\n3x3 example:", convergence_certificate(prob.matrix))
for m in (0, 2):
    rep = swi_solve(prob.matrix, prob.rhs, SolverConfig(memory_m=m, max_iter=12))
    print(f"  SWI({m}): {rep.status}, residual history {np.array2string(rep.residual_history[:8], precision=3)}")

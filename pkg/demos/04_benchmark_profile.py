"""Drive the benchmark harness from Python and build a performance profile.

The same sweep is available on the command line, e.g.::

    scg-bench --problem random_pd:order=200,seed=1 convection_diffusion:grid_points_per_side=32 \
        --solver scg swi:2 swi:5 gmres dqgmres:5 bicgstab --profile profile.csv
"""

import sys

from scgkit.bench import (
    ProblemSpec,
    RunManifest,
    SolverSpec,
    emit_performance_profile,
    emit_table,
    performance_profile,
    run,
)

problems = [ProblemSpec(builtin="random_pd", params={"order": 150, "seed": s, "skew_scale": 1.0})
            for s in range(4)]
problems += [ProblemSpec(builtin="convection_diffusion",
                         params={"grid_points_per_side": n, "epsilon": 1 / 200}) for n in (24, 48)]
solvers = [SolverSpec("scg"), SolverSpec("swi", 2), SolverSpec("swi", 8), SolverSpec("gmres"),
           SolverSpec("dqgmres", 4), SolverSpec("bicgstab")]

records, errors = run(RunManifest(problems=tuple(problems), solvers=tuple(solvers), parallel=True))
sys.stdout.write(emit_table(records).decode())

# rho_s(tau): share of problems solver s solves within tau times the best iteration count.
# BiCGSTAB spends two products with A per iteration, the others one, so an
# iteration profile flatters it; pass "cpu" for a wall-clock profile instead.
print("\niteration profile (tau: rho per solver)")
prof = performance_profile(records, "iter")
taus = [t for t, _ in next(iter(prof.values()))]
print("tau     " + " ".join(f"{s:>10}" for s in prof))
for i, t in enumerate(taus):
    print(f"{t:<7.3f} " + " ".join(f"{prof[s][i][1]:>10.3f}" for s in prof))

with open("profile.csv", "wb") as f:
    f.write(emit_performance_profile(records, "iter"))
print("\nwrote profile.csv")

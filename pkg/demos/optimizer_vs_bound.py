"""
Numerical Bell maximization against the R-matrix bound
======================================================

For two qubits the eigenvalue bound is tight. With more qubits it is an
upper bound on the reduced operator, and the fully recursive operator is
capped by 2^((n+1)/2).
"""

import numpy as np

from qbell import (
    OptimizerConfig,
    TheoremFamilySpec,
    bell_bound,
    concurrence_pure,
    f_alpha,
    maximize_bell,
    pure_from_amplitudes,
    theorem_state,
)
from qbell.states import superpose

rng = np.random.default_rng(0)
cfg = OptimizerConfig(restarts=32, tolerance=1e-12, seed=0)


def random_state(n):
    z = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return pure_from_amplitudes(n, z / np.linalg.norm(z))


print("random pure states: optimizer vs bound")
for n in (2, 2, 3, 4):
    psi = random_state(n)
    opt = maximize_bell(psi, cfg=cfg)
    print(f"  n={n}: {opt.gamma_star:.10f} <= {bell_bound(psi).gamma_bound:.10f}")

ghz = superpose([(1, "000"), (1, "111")])
print("\nGHZ on three qubits")
print(f"  reduced form {maximize_bell(ghz, 'reduced', cfg).gamma_star:.10f}, bound {bell_bound(ghz).gamma_bound:.10f}")
print(f"  full form    {maximize_bell(ghz, 'full', cfg).gamma_star:.10f}, cap 4")

print("\ntwo-branch family on alpha qubits: optimizer vs 2 f_alpha(C)")
for alpha in (2, 3, 4):
    for lp in (0.3, 0.6):
        lm = np.sqrt(1 - lp * lp)
        psi = theorem_state(TheoremFamilySpec(alpha, alpha, "", "0" * (alpha - 1), lp, lm))
        c = concurrence_pure(psi, [alpha])
        opt = maximize_bell(psi, cfg=cfg)
        print(f"  alpha={alpha} C={c:.3f}: optimizer {opt.gamma_star:.6f}, 2 f_alpha {2 * f_alpha(alpha, c):.6f}")

"""Elliptical signatures, the arcsine law, and the heavy-tail limit.

Computes the concordance signature shared by every elliptical copula with
a given correlation matrix (exact arcsine pairs, Monte Carlo higher
orders), the extremal mixture the Student t copula collapses onto as its
degrees of freedom go to zero, and a Kendall matrix that no elliptical
copula can produce even though it is attainable in general.
"""

import numpy as np

from concord import (
    McConfig,
    arcsin_tau_matrix,
    check_cut_polytope,
    elliptical_attainable,
    elliptical_signature,
    t_limit_weights,
)

P3 = np.array([[1.0, 0.2, 0.5], [0.2, 1.0, 0.8], [0.5, 0.8, 1.0]])
print("trivariate P, exact signature:", np.round(elliptical_signature(P3).signature.values, 4))
print("Kendall transform 2 arcsin(P)/pi:\n", np.round(arcsin_tau_matrix(P3), 4))

limit = t_limit_weights(P3, mode="analytic")
print("t-copula limit weights per diagonal:", np.round(limit.weights.w, 3))
mc = t_limit_weights(P3, mode="monte_carlo", mc=McConfig(samples=500_000, seed=3))
print("same by Monte Carlo:               ", np.round(mc.weights.w, 3))

print()
upper = iter(range(1, 16))
P6 = np.eye(6)
for i in range(6):
    for j in range(i + 1, 6):
        P6[i, j] = P6[j, i] = next(upper) / 16
res = elliptical_signature(P6, McConfig(samples=1_000_000, seed=1))
print("six-dimensional study (pairs exact, rest MC):")
for s, v, e in list(zip(res.signature.labels, res.signature.values, res.estimates))[:4]:
    print(f"  kappa_{s or '{}'} = {v:.4f}  ({e.method}, se={e.std_error:.1e})")
print("  ... and the full-set entry:", f"{res.signature.values[-1]:.4f}")

print()
TAU = np.array([[1.0, -0.19, -0.29, 0.49], [-0.19, 1.0, -0.34, 0.30],
                [-0.29, -0.34, 1.0, -0.79], [0.49, 0.30, -0.79, 1.0]])
print("contrast matrix: attainable Kendall matrix that is not elliptical")
print("  cut polytope member:", check_cut_polytope(TAU).feasible)
ell = elliptical_attainable(TAU)
print("  elliptical:", ell.attainable, f"(min eigenvalue of sin-transform: {ell.min_eigenvalue:.4f})")

"""Equiconcordant copulas: the collapsed system and its attainable polytope.

For equiconcordant copulas one concordance probability per even cardinality
suffices (the skeletal signature), and attainability reduces to a system of
size 1 + floor(d/2).  The columns of the collapsed matrix are the polytope
vertices; for d=7 they span an irregular tetrahedron in (kappa_2, kappa_4,
kappa_6).  The script also exports the curve of skeletal signatures of
equicorrelated elliptical copulas for external plotting.
"""

import csv
import sys

import numpy as np

from concord import (
    McConfig,
    SkeletalSignature,
    build_B_matrix,
    b_matrix_fractions,
    expand_skeletal,
    is_equiconcordant,
    signature_from_weights,
    skeletal_solve,
)
from concord.equiconcordant import skeletal_of_equicorrelated

print("collapsed system for d=7 (exact rationals):")
for row in b_matrix_fractions(7):
    print("  ", [str(x) for x in row])
print("tetrahedron vertices in (kappa_2, kappa_4, kappa_6):")
B7 = build_B_matrix(7)
for j in range(4):
    print("  ", np.round(B7[1:, j], 4))

print()
print("d=4 skeletal attainability:")
for k2, k4 in [(2 / 3, 0.4), (0.4, 0.4), (0.9, 0.85)]:
    sol = skeletal_solve(SkeletalSignature.create(4, [1.0, k2, k4]))
    print(f"  (k2={k2:.3f}, k4={k4:.3f}) attainable: {sol.attainable}", end="")
    if sol.attainable:
        w = expand_skeletal(sol.group_weights, 4)
        sig = signature_from_weights(w)
        print(f"  equiconcordant mixture: {is_equiconcordant(sig)}", end="")
    print()

out = sys.argv[1] if len(sys.argv) > 1 else "elliptical_skeletal_d7.csv"
rhos = np.linspace(-1 / 6 + 1e-6, 1 - 1e-6, 25)
with open(out, "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["rho", "kappa_2", "kappa_4", "kappa_6"])
    for i, rho in enumerate(rhos):
        sk = skeletal_of_equicorrelated(7, float(rho), McConfig(samples=200_000, seed=100 + i))
        writer.writerow([f"{rho:.6f}"] + [f"{x:.6f}" for x in sk.k[1:]])
print(f"\nwrote the equicorrelated elliptical curve to {out}")
print("(overlay it on the tetrahedron to see the strict inclusion)")

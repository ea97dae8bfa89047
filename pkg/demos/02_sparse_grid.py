"""Smolyak sparse grids built from nested-by-level Gauss-Hermite rules."""
import numpy as np

from gausscub.sparse_grid import isotropic_index_set, smolyak_quadrature, total_points

f = lambda x: np.cos(x.sum(axis=1) / np.sqrt(x.shape[1]))  # E f = exp(-1/2)
exact = np.exp(-0.5)

for d in (2, 4):
    print(f"d = {d}")
    for L in range(d, d + 7):
        lam = isotropic_index_set(d, L)
        value = smolyak_quadrature(f, lam)
        print(f"  L={L:2d}  points={total_points(lam):6d}  error={abs(value - exact):.2e}")

# The delta (difference) form and the combination form are the same operator.
lam = isotropic_index_set(3, 7)
print("delta vs combination:",
      abs(smolyak_quadrature(f, lam, form="delta") - smolyak_quadrature(f, lam, form="combination")))

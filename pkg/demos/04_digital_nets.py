"""Sobol' nets and higher-order nets obtained by digit interlacing."""
import numpy as np

from gausscub.digital_net import higher_order_sobol, load_direction_numbers, net_points

# The first coordinate of a Sobol' net is the van der Corput sequence.
print(net_points(load_direction_numbers(m=3, d=2)))

# Interlacing q coordinates of a dq-dimensional net gives a d-dimensional net
# whose error decays faster on smooth (not necessarily periodic) integrands.
f = lambda x: np.prod(np.exp(x), axis=1)
exact = (np.e - 1) ** 2
print("m:     " + "  ".join(f"{m:7d}" for m in range(6, 15, 2)))
for q in (1, 2, 3):
    errs = [abs(f(net_points(higher_order_sobol(m, 2, q, max_depth=64))).mean() - exact) for m in range(6, 15, 2)]
    print(f"q={q}:   " + "  ".join(f"{e:.1e}" for e in errs))

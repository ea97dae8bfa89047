"""Component-by-component rank-1 lattices in a Korobov space."""
from gausscub.fooling import fit_loglog_slope
from gausscub.lattice import KorobovParams, cbc_construct, lattice_points

vec, wce = cbc_construct(13, 2)
print("N=13 generating vector", vec.z, f"worst-case error {wce:.4f}")
print(lattice_points(vec)[:5])

# The worst-case error of CBC lattices decays close to N^-alpha.
params = KorobovParams(alpha=1)
primes = [31, 61, 127, 251, 509, 1021, 2039]
errors = [cbc_construct(N, 3, params)[1] for N in primes]
for N, e in zip(primes, errors):
    print(f"N={N:5d}  e={e:.3e}")
print("fitted slope", round(fit_loglog_slope(primes, errors), 3))

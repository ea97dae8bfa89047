"""
Rank-1 lattice rules: point generation, worst-case error in the weighted
Korobov space of smoothness ``alpha``, and the greedy component-by-component
(CBC) construction of generating vectors for prime ``N``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "is_prime",
    "GeneratingVector",
    "KorobovParams",
    "lattice_points",
    "korobov_rate",
    "korobov_kernel_values",
    "korobov_wce",
    "cbc_construct",
    "cached_cbc",
    "cache_dir",
]

# candidate squared errors within this relative slack (plus a few ulps of
# the 1 + e**2 sum) count as tied
TIE_RTOL = 1e-10


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % p for p in range(3, math.isqrt(n) + 1, 2))


# B_2 and B_4
_BERNOULLI = {
    1: lambda x: x * x - x + 1.0 / 6.0,
    2: lambda x: x**4 - 2.0 * x**3 + x * x - 1.0 / 30.0,
}


@dataclass(frozen=True)
class GeneratingVector:
    N: int
    z: tuple

    def __post_init__(self):
        z = tuple(int(c) for c in self.z)
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.N > 1:
            for c in z:
                if not 1 <= c <= self.N - 1:
                    raise ValueError(f"component {c} outside 1..{self.N - 1}")
                if is_prime(self.N) and math.gcd(c, self.N) != 1:
                    raise ValueError(f"component {c} not coprime to {self.N}")
        object.__setattr__(self, "z", z)

    @property
    def d(self):
        return len(self.z)


@dataclass(frozen=True)
class KorobovParams:
    alpha: int = 1
    gamma: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if any(g <= 0 for g in self.gamma):
            raise ValueError("product weights must be positive")

    def weights(self, d):
        """Per-coordinate weights; unspecified coordinates get weight 1."""
        g = tuple(self.gamma) + (1.0,) * max(0, d - len(self.gamma))
        return g[:d]


def lattice_points(v):
    """Points ``frac(j * z / N)`` for ``j = 1..N`` as an ``(N, d)`` array.

    The last row (``j = N``) is the origin.
    """
    j = np.arange(1, v.N + 1, dtype=np.int64)[:, None]
    z = np.asarray(v.z, dtype=np.int64)[None, :]
    return ((j * z) % v.N) / v.N


def korobov_rate(k, alpha):
    """``r_alpha(k) = prod_j max(1, |k_j|**alpha)``."""
    return math.prod(max(1, abs(int(kj)) ** alpha) for kj in k)


def korobov_kernel_values(x, alpha):
    """``omega(x) = sum_{h != 0} exp(2 pi i h x) / |h|**(2 alpha)`` for x in [0, 1)."""
    if alpha not in _BERNOULLI:
        raise ValueError(f"Korobov kernel only tabulated for alpha in (1, 2), got {alpha}")
    scale = (-1) ** (alpha + 1) * (2.0 * math.pi) ** (2 * alpha) / math.factorial(2 * alpha)
    return scale * _BERNOULLI[alpha](np.asarray(x, dtype=float))


def _residue_kernel(N, alpha):
    # omega at r / N for r = 0..N-1, symmetric in r <-> N - r bit for bit
    r = np.arange(N)
    return korobov_kernel_values(np.minimum(r, N - r) / N, alpha)


def korobov_wce(v, params=KorobovParams()):
    """Worst-case error of the lattice rule in the weighted Korobov space.

    ``e**2 = -1 + (1/N) sum_j prod_k (1 + gamma_k omega({j z_k / N}))``,
    with ``omega`` the Bernoulli-polynomial form of the reproducing kernel.
    Only ``alpha`` in {1, 2} is supported.
    """
    omega = _residue_kernel(v.N, params.alpha)
    j = np.arange(v.N, dtype=np.int64)
    prod = np.ones(v.N)
    for zk, gk in zip(v.z, params.weights(v.d)):
        prod *= 1.0 + gk * omega[(j * zk) % v.N]
    e2 = math.fsum(prod) / v.N - 1.0
    return math.sqrt(max(e2, 0.0))


def cbc_construct(N, d, params=KorobovParams(), chunk=512):
    """Component-by-component generating vector for prime ``N``.

    ``z_1 = 1``; each later ``z_s`` minimises the ``s``-dimensional
    worst-case error over ``c in 1..N-1`` with the earlier components held
    fixed, ties (within ``TIE_RTOL``) going to the smallest ``c``. Running
    per-point products are reused across components, so each step costs
    ``O(N**2)``.

    Returns
    -------
    (GeneratingVector, float)
        The vector and its worst-case error.
    """
    if not is_prime(N):
        raise ValueError(f"CBC construction needs a prime N, got {N}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    omega = _residue_kernel(N, params.alpha)
    gamma = params.weights(d)
    j = np.arange(N, dtype=np.int64)
    prod = 1.0 + gamma[0] * omega[j % N]
    z = [1]
    candidates = np.arange(1, N, dtype=np.int64)
    for s in range(1, d):
        e2 = np.empty(N - 1)
        for start in range(0, N - 1, chunk):
            c = candidates[start : start + chunk]
            factors = 1.0 + gamma[s] * omega[(j[None, :] * c[:, None]) % N]
            e2[start : start + chunk] = (factors * prod[None, :]).sum(axis=1) / N - 1.0
        best = int(np.flatnonzero(e2 <= e2.min() * (1.0 + TIE_RTOL) + 1e-15)[0])
        z.append(int(candidates[best]))
        prod = prod * (1.0 + gamma[s] * omega[(j * z[-1]) % N])
    vec = GeneratingVector(N, tuple(z))
    return vec, korobov_wce(vec, params)


def cache_dir():
    return Path(os.environ.get("GAUSSCUB_CACHE_DIR", "cache"))


def cached_cbc(N, d, alpha=1, directory=None):
    """CBC vector (unit weights) read from or written to the on-disk cache.

    Files are ``cbc_N<N>_d<d>_a<alpha>.txt``: a header line ``N d alpha``,
    the comma-separated vector, and the worst-case error.
    """
    directory = Path(directory) if directory is not None else cache_dir()
    path = directory / f"cbc_N{N}_d{d}_a{alpha}.txt"
    if path.exists():
        lines = path.read_text().splitlines()
        if len(lines) >= 3 and lines[0].split() == [str(N), str(d), str(alpha)]:
            z = tuple(int(c) for c in lines[1].split(","))
            return GeneratingVector(N, z), float(lines[2])
    vec, wce = cbc_construct(N, d, KorobovParams(alpha=alpha))
    directory.mkdir(parents=True, exist_ok=True)
    path.write_text(f"{N} {d} {alpha}\n{','.join(map(str, vec.z))}\n{wce:.17g}\n")
    return vec, wce

"""Independent reference computations used to freeze expected values.

Nothing here imports the code paths it is used to check.
"""

import itertools
import math

import mpmath as mp
import numpy as np
from scipy.special import zeta


def gauss_hermite_mp(n, dps=40):
    """Golub-Welsch in mpmath at ``dps`` digits; returns (nodes, weights) as floats."""
    with mp.workdps(dps):
        J = mp.zeros(n, n)
        for i in range(n - 1):
            J[i, i + 1] = J[i + 1, i] = mp.sqrt(i + 1)
        evals, evecs = mp.eigsy(J)
        pairs = sorted((evals[i], evecs[0, i] ** 2) for i in range(n))
        return [float(x) for x, _ in pairs], [float(w) for _, w in pairs]


def gaussian_moment_mp(k, dps=30):
    with mp.workdps(dps):
        rho = lambda x: mp.exp(-x * x / 2) / mp.sqrt(2 * mp.pi)
        return float(mp.quad(lambda x: x**k * rho(x), [-mp.inf, 0, mp.inf]))


def delta_expansion(index_set):
    """Coefficients of tensor rules obtained by expanding every Delta product."""
    coeffs = {}
    for ell in index_set:
        for shift in itertools.product((0, 1), repeat=len(ell)):
            lower = tuple(c - s for c, s in zip(ell, shift))
            if min(lower) >= 1:
                coeffs[lower] = coeffs.get(lower, 0) + (-1) ** sum(shift)
    return {k: v for k, v in coeffs.items() if v}


def brute_index_set(d, L):
    return sorted(ell for ell in itertools.product(range(1, L + 1), repeat=d) if sum(ell) <= L)


def residue_class_sums(N, alpha, gamma=1.0, box=None):
    """``S(r) = sum_{h = r mod N} w(h)`` with ``w(0) = 1``, ``w(h) = gamma |h|^-2alpha``.

    Exact (Hurwitz zeta) when ``box`` is None, otherwise truncated to
    ``|h| <= box``.
    """
    s = 2 * alpha
    out = np.zeros(N)
    if box is None:
        for r in range(N):
            if r == 0:
                out[r] = 1.0 + gamma * 2.0 * N ** (-s) * zeta(s, 1.0)
            else:
                out[r] = gamma * N ** (-s) * (zeta(s, r / N) + zeta(s, 1.0 - r / N))
        return out
    h = np.arange(-box, box + 1)
    w = np.zeros(len(h))
    nz = h != 0
    w[nz] = gamma * np.abs(h[nz]).astype(float) ** (-s)
    w[~nz] = 1.0
    np.add.at(out, h % N, w)
    return out


def dual_lattice_sum(N, z, alpha, box=None):
    """``sum_{k != 0, k.z = 0 mod N} r_alpha(k)^-2`` by residue-tuple enumeration."""
    S = residue_class_sums(N, alpha, box=box)
    d = len(z)
    r = np.arange(N)
    grids = np.meshgrid(*([r] * d), indexing="ij")
    dot = sum(int(zk) * g for zk, g in zip(z, grids)) % N
    weight = np.ones(dot.shape)
    for g in grids:
        weight = weight * S[g]
    return float(weight[dot == 0].sum()) - 1.0


def van_der_corput(j):
    bits = bin(j)[2:][::-1]
    return sum(int(b) / 2 ** (i + 1) for i, b in enumerate(bits)) if j else 0.0


def gaussian_box_mass(b):
    return math.erf(b / math.sqrt(2.0))


def trapezoid(f, a, b, panels):
    x = np.linspace(a, b, panels + 1)
    y = f(x)
    h = (b - a) / panels
    return h * (y.sum() - 0.5 * (y[0] + y[-1]))

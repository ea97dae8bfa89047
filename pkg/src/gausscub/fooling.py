"""
Fooling functions for Gauss-Hermite based quadrature.

Given the ``n`` roots ``xi_1 < ... < xi_n`` of ``H_n``, the bump

    p_n(t) = u**alpha * (1 - u)**alpha,  u = (t - xi_j) / (xi_{j+1} - xi_j),

on each gap ``[xi_j, xi_{j+1}]`` (and zero outside ``[xi_1, xi_n]``)
vanishes at every node, so any rule on those nodes returns 0 whatever its
weights. Its integral divided by its Gaussian Sobolev norm is therefore a
lower bound on the worst-case error of every such rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.legendre import leggauss

from .gauss_hermite import gauss_hermite_rule, gaussian_density
from .sparse_grid import POW2, level_size

__all__ = [
    "FoolingFunction",
    "SobolevNormReport",
    "fooling_function",
    "fooling_eval",
    "fooling_derivative",
    "fooling_integral",
    "fooling_norm",
    "suboptimality_ratio",
    "sparse_grid_fooling",
    "fit_loglog_slope",
]


@dataclass(frozen=True)
class FoolingFunction:
    n: int
    alpha: int
    knots: np.ndarray

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if len(self.knots) != self.n:
            raise ValueError(f"expected {self.n} knots, got {len(self.knots)}")

    @cached_property
    def bump(self):
        """``u**alpha (1 - u)**alpha`` as a polynomial in the local variable."""
        a = self.alpha
        coef = np.zeros(2 * a + 1)
        for i in range(a + 1):
            coef[a + i] = (-1) ** i * math.comb(a, i)
        return Polynomial(coef)

    def __call__(self, x):
        return fooling_eval(self, x)


@dataclass(frozen=True)
class SobolevNormReport:
    """``contributions[r] = ||D^r p_n||^2`` in ``L^2_rho`` for r = 0..alpha."""

    contributions: tuple

    @property
    def total_squared(self):
        return math.fsum(self.contributions)

    @property
    def total(self):
        return math.sqrt(self.total_squared)


def fooling_function(n, alpha):
    """Fooling function for the ``n``-point Gauss-Hermite rule."""
    return FoolingFunction(n, alpha, gauss_hermite_rule(n).nodes)


def _locate(F, x):
    """Gap index and local coordinate for each x; gap -1 means outside the support."""
    x = np.asarray(x, dtype=float)
    knots = F.knots
    if F.n < 2:
        return np.full(x.shape, -1), np.zeros(x.shape)
    gap = np.searchsorted(knots, x, side="right") - 1
    gap = np.where(x == knots[-1], F.n - 2, gap)
    inside = (gap >= 0) & (gap <= F.n - 2)
    g = np.clip(gap, 0, F.n - 2)
    u = (x - knots[g]) / (knots[g + 1] - knots[g])
    return np.where(inside, g, -1), u


def fooling_derivative(F, x, r=0):
    """``D^r p_n(x)`` (one-sided at the knots for ``r = alpha``)."""
    gap, u = _locate(F, x)
    poly = F.bump.deriv(r) if r else F.bump
    width = np.diff(F.knots)
    scale = width[np.clip(gap, 0, None)] ** (-r) if F.n > 1 else 1.0
    value = np.where(gap >= 0, poly(u) * scale, 0.0)
    return value if np.ndim(value) else float(value)


def fooling_eval(F, x):
    """``p_n(x)``; vectorised over ``x``."""
    return fooling_derivative(F, x, 0)


def _gap_quadrature(F, integrand):
    """``sum_j int_{xi_j}^{xi_{j+1}} integrand(u, x, h) dx`` summed in gap order."""
    if F.n < 2:
        return 0.0
    u, w = leggauss(2 * F.alpha + 16)
    u = (u + 1.0) / 2.0
    w = w / 2.0
    left = F.knots[:-1, None]
    width = np.diff(F.knots)[:, None]
    x = left + width * u[None, :]
    per_gap = (integrand(u[None, :], x, width) * w[None, :]).sum(axis=1) * width[:, 0]
    return math.fsum(per_gap)


def fooling_integral(F):
    """``int p_n rho`` by per-gap Gauss-Legendre of order ``2 alpha + 16``."""
    bump = F.bump
    return _gap_quadrature(F, lambda u, x, h: bump(u) * gaussian_density(x))


def fooling_norm(F):
    """Gaussian Sobolev norm of ``p_n`` with per-order contributions.

    On each gap ``D^r p_n = h**-r * P^(r)(u)`` with ``P`` the bump polynomial,
    so every contribution is a sum of smooth per-gap integrals.
    """
    contributions = []
    for r in range(F.alpha + 1):
        poly = F.bump.deriv(r) if r else F.bump
        contributions.append(
            _gap_quadrature(
                F, lambda u, x, h, poly=poly, r=r: (poly(u) * h ** (-r)) ** 2 * gaussian_density(x)
            )
        )
    return SobolevNormReport(tuple(contributions))


def suboptimality_ratio(n, alpha):
    """``int p_n rho / ||p_n||_{H^alpha_rho}`` for the ``n``-point rule.

    Every quadrature on the ``n`` Gauss-Hermite nodes has worst-case error at
    least this large.
    """
    if n < 2:
        raise ValueError(f"need n >= 2 nodes, got {n}")
    F = fooling_function(n, alpha)
    return fooling_integral(F) / fooling_norm(F).total


def sparse_grid_fooling(index_set, alpha, schedule=POW2, direction=0):
    """``h_Lambda(x) = p_n(x[direction])`` for a sparse grid on ``index_set``.

    ``n`` is the node count at the largest level ``l`` such that all the
    axis indices ``(1, .., k, .., 1)`` with ``k <= l`` lie in the set.

    Returns
    -------
    (callable, FoolingFunction)
        The vectorised d-variate function and the underlying 1-D bump.
    """
    members = set(index_set.indices)
    d = index_set.d
    top = 0
    while True:
        axis = [1] * d
        axis[direction] = top + 1
        if tuple(axis) not in members:
            break
        top += 1
    if top == 0:
        raise ValueError("index set does not contain (1, ..., 1)")
    F = fooling_function(level_size(top, schedule), alpha)

    def h(x):
        return fooling_eval(F, np.atleast_2d(x)[:, direction])

    return h, F


def fit_loglog_slope(x, y):
    """Least-squares slope of ``log y`` against ``log x``."""
    slope, _ = np.polyfit(np.log(np.asarray(x, float)), np.log(np.asarray(y, float)), 1)
    return float(slope)

"""
Turn unit-cube point sets into rules for integrals against the standard
Gaussian on R^d.

Two maps are provided:

* affine truncation to the box ``[-b, b]^d``: ``x = 2 b t - b`` with weights
  ``(2b)**d rho(x) / N``;
* the cotangent (Moebius) map ``phi(t) = -cot(pi t)`` onto all of R^d, with
  weights ``rho(x) prod_k phi'(t_k) / N``. Points touching the boundary of
  the cube get weight zero; the transformed integrand extends continuously
  by zero there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MappedRule",
    "affine_radius",
    "affine_rule",
    "mobius_map",
    "mobius_rule",
    "mobius_quadrature",
    "mobius_summand",
    "log_gaussian_density",
]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def log_gaussian_density(x):
    """``sum_k log rho(x_k)`` over the last axis."""
    x = np.atleast_2d(x)
    return -0.5 * np.sum(x * x, axis=-1) - x.shape[-1] * _LOG_SQRT_2PI


@dataclass(frozen=True)
class MappedRule:
    """Nodes ``(N, d)`` in R^d with weights; ``kind`` is "affine" or "mobius"."""

    points: np.ndarray
    weights: np.ndarray
    kind: str
    radius: float | None = None
    source: str = ""

    def apply(self, f):
        """``sum_j w_j f(x_j)``; zero-weight nodes are never evaluated."""
        live = self.weights != 0.0
        values = np.asarray(f(self.points[live]), dtype=float)
        return math.fsum(self.weights[live] * values)


def affine_radius(N, alpha, flavor):
    """Box half-width ``b`` for the affine map.

    ``sqrt((alpha/2) ln N)`` for lattice rules and ``2 sqrt(alpha ln N)`` for
    higher-order nets.
    """
    if N < 2:
        raise ValueError(f"affine truncation needs N >= 2, got {N}")
    log_n = math.log(N)
    if flavor == "lattice":
        return math.sqrt(0.5 * alpha * log_n)
    if flavor == "net":
        return 2.0 * math.sqrt(alpha * log_n)
    raise ValueError(f"flavor must be 'lattice' or 'net', got {flavor!r}")


def affine_rule(points01, b, source=""):
    """Affine map ``t -> 2 b t - b`` of a point set in ``[0, 1]^d``."""
    if b <= 0:
        raise ValueError(f"truncation radius must be positive, got {b}")
    t = np.atleast_2d(np.asarray(points01, dtype=float))
    n, d = t.shape
    x = 2.0 * b * t - b
    weights = np.exp(d * math.log(2.0 * b) + log_gaussian_density(x)) / n
    return MappedRule(x, weights, "affine", radius=b, source=source)


def _cot_map(t):
    """``phi(t)`` and ``log phi'(t)`` for ``t`` in (0, 1).

    Both are evaluated on the reflected argument ``u = min(t, 1 - t)``
    (exact in floating point), which keeps full relative accuracy near
    ``t = 1`` and makes mirrored points map to exact negatives.
    """
    upper = t > 0.5
    u = np.where(upper, 1.0 - t, t)
    s = np.sin(math.pi * u)
    with np.errstate(over="ignore", divide="ignore"):
        # cos(pi/2) is not exactly zero in floating point
        x = np.where(u == 0.5, 0.0, np.cos(math.pi * u) / s)
        # phi' itself overflows next to the boundary; its log does not
        log_dx = math.log(math.pi) - 2.0 * np.log(s)
    return np.where(upper, x, -x), log_dx


def mobius_map(t):
    """``phi(t) = -cot(pi t)`` and ``phi'(t) = pi / sin(pi t)**2`` on (0, 1)."""
    t = np.asarray(t, dtype=float)
    if np.any((t <= 0.0) | (t >= 1.0)):
        raise ValueError("the cotangent map is only defined on the open interval (0, 1)")
    x, log_dx = _cot_map(t)
    with np.errstate(over="ignore"):
        dx = np.exp(log_dx)
    if x.ndim == 0:
        return float(x), float(dx)
    return x, dx


def mobius_rule(points01, source=""):
    """Cotangent-mapped rule; rows with a coordinate equal to 0 or 1 get weight 0."""
    t = np.atleast_2d(np.asarray(points01, dtype=float))
    n, d = t.shape
    interior = np.all((t > 0.0) & (t < 1.0), axis=1)
    x = np.zeros_like(t)
    weights = np.zeros(n)
    if interior.any():
        xi, log_dx = _cot_map(t[interior])
        with np.errstate(over="ignore"):
            # rho underflowing to zero far out is consistent with the zero extension
            log_w = log_gaussian_density(xi) + np.sum(log_dx, axis=1)
        x[interior] = xi
        weights[interior] = np.exp(log_w) / n
    return MappedRule(x, weights, "mobius", source=source)


def mobius_quadrature(points01, f):
    """``(1/N) sum_j f(Psi(t_j)) rho(Psi(t_j)) prod_k phi'(t_jk)``.

    Boundary points contribute exactly zero and ``f`` is not called there.
    """
    return mobius_rule(points01).apply(f)


def mobius_summand(t, f):
    """The transformed integrand ``g(t) = f(phi(t)) rho(phi(t)) prod phi'(t)``.

    ``t`` has shape ``(M, d)``; rows on the boundary return 0.
    """
    t = np.atleast_2d(np.asarray(t, dtype=float))
    rule = mobius_rule(t)
    out = np.zeros(len(t))
    live = rule.weights != 0.0
    if live.any():
        out[live] = np.asarray(f(rule.points[live]), dtype=float) * rule.weights[live] * len(t)
    return out

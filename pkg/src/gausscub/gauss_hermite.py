"""
Probabilists' Hermite polynomials and Gauss-Hermite rules for the standard
Gaussian weight ``rho(x) = exp(-x**2/2) / sqrt(2*pi)``.

The polynomials are normalised so that ``||H_k||_{L^2_rho} = 1`` and the
rules carry probability weights (they sum to one).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "QuadratureRule",
    "hermite_eval",
    "gauss_hermite_rule",
    "gaussian_moment",
    "gaussian_density",
]


@dataclass(frozen=True)
class QuadratureRule:
    """An immutable 1-D rule for integration against ``rho``.

    Attributes
    ----------
    nodes : np.ndarray
        Strictly increasing abscissae.
    weights : np.ndarray
        Positive weights summing to one.
    """

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        for arr in (self.nodes, self.weights):
            arr.setflags(write=False)

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f):
        """Apply the rule to a vectorised callable ``f``."""
        return float(np.dot(self.weights, f(self.nodes)))


def gaussian_density(x):
    return np.exp(-0.5 * np.square(x)) / math.sqrt(2.0 * math.pi)


def hermite_eval(k, x):
    """Normalised probabilists' Hermite polynomial ``H_k`` at ``x``.

    Uses the three-term recurrence
    ``sqrt(k+1) H_{k+1}(x) = x H_k(x) - sqrt(k) H_{k-1}(x)``.
    ``x`` may be a scalar or an array; the result has the same shape.
    """
    if k < 0:
        raise ValueError(f"Hermite degree must be non-negative, got {k}")
    x = np.asarray(x, dtype=float)
    h_prev = np.zeros_like(x)
    h = np.ones_like(x)
    for j in range(k):
        h_prev, h = h, (x * h - math.sqrt(j) * h_prev) / math.sqrt(j + 1)
    return h if h.ndim else float(h)


_RULE_CACHE: dict[int, QuadratureRule] = {}
_RULE_LOCK = threading.Lock()


_RESCALE = 1e150


def _christoffel_weights(x, n):
    """``1 / sum_{k<n} H_k(x)**2``, rescaling as the recurrence grows."""
    h_prev = np.zeros_like(x)
    h = np.ones_like(x)
    total = np.ones_like(x)
    log_scale = np.zeros_like(x)
    for k in range(n - 1):
        h_prev, h = h, (x * h - math.sqrt(k) * h_prev) / math.sqrt(k + 1)
        total += h * h
        big = np.abs(h) > _RESCALE
        if big.any():
            h[big] /= _RESCALE
            h_prev[big] /= _RESCALE
            total[big] /= _RESCALE**2
            log_scale[big] += 2.0 * math.log(_RESCALE)
    return np.exp(-np.log(total) - log_scale)


def _build_rule(n):
    if n == 1:
        return QuadratureRule(np.zeros(1), np.ones(1))
    diag = np.zeros(n)
    offdiag = np.sqrt(np.arange(1, n, dtype=float))
    try:
        nodes = eigh_tridiagonal(diag, offdiag, eigvals_only=True)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(
            f"Jacobi eigensolve failed for the {n}-point Gauss-Hermite rule"
        ) from exc
    # Christoffel numbers keep full relative accuracy where squared
    # eigenvector components would underflow
    weights = _christoffel_weights(nodes, n)
    # enforce exact symmetry about the origin
    half = (nodes[::-1] - nodes) / 2.0
    nodes = -half
    weights = (weights + weights[::-1]) / 2.0
    if n % 2:
        nodes[n // 2] = 0.0
    return QuadratureRule(nodes, weights)


def gauss_hermite_rule(n):
    """The ``n``-point Gauss-Hermite rule for ``rho``.

    Nodes are the roots of ``H_n``; the rule is exact for polynomials of
    degree up to ``2n - 1``. Nodes are the eigenvalues of the Jacobi matrix
    with off-diagonal ``sqrt(1), ..., sqrt(n-1)`` (Golub-Welsch); weights
    are the matching Christoffel numbers. Rules are cached.

    Parameters
    ----------
    n : int
        Number of nodes, ``n >= 1``.

    Returns
    -------
    QuadratureRule
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"number of nodes must be >= 1, got {n}")
    rule = _RULE_CACHE.get(n)
    if rule is None:
        with _RULE_LOCK:
            rule = _RULE_CACHE.get(n)
            if rule is None:
                rule = _build_rule(n)
                _RULE_CACHE[n] = rule
    return rule


def gaussian_moment(k):
    """``E[X**k]`` for ``X ~ N(0, 1)``: ``(k-1)!!`` for even ``k``, else 0.

    Raises OverflowError when the double factorial is not representable as
    a double.
    """
    if k < 0:
        raise ValueError(f"moment order must be non-negative, got {k}")
    if k % 2:
        return 0.0
    value = math.prod(range(k - 1, 0, -2))
    return float(value)

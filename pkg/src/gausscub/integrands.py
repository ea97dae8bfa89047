"""
Test integrands on R^d with known Gaussian integrals.

All evaluators are vectorised, mapping an ``(M, d)`` array to ``M`` values.
Names may carry parameters, e.g. ``hermite(3,0)`` or ``spline(2)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable

import numpy as np

from .gauss_hermite import hermite_eval

__all__ = ["TestIntegrand", "CatalogError", "catalog", "get_integrand", "spline_mass"]


class CatalogError(KeyError):
    pass


@dataclass(frozen=True)
class TestIntegrand:
    name: str
    d: int
    evaluator: Callable
    exact_value: float
    smoothness: str

    __test__ = False  # not a pytest class

    def __call__(self, x):
        return self.evaluator(np.atleast_2d(np.asarray(x, dtype=float)))


@lru_cache(maxsize=None)
def _spline_table():
    text = resources.files("gausscub.data").joinpath("spline_oracle.txt").read_text()
    table = {}
    for line in text.splitlines():
        if line.strip() and not line.startswith("#"):
            alpha, value = line.split()
            table[int(alpha)] = float(value)
    return table


def spline_mass(alpha):
    """``int (1 - |x|)_+**alpha rho(x) dx`` from the bundled oracle table."""
    table = _spline_table()
    if alpha not in table:
        raise CatalogError(f"no oracle value for spline({alpha}); regenerate the table")
    return table[alpha]


def _one(d):
    return TestIntegrand("one", d, lambda x: np.ones(len(x)), 1.0, "analytic")


def _prodcos(d, a):
    return TestIntegrand(
        "prodcos",
        d,
        lambda x: np.prod(np.cos(a * x), axis=1),
        math.exp(-d * a * a / 2.0),
        "analytic",
    )


def _explin(d, a):
    c = np.full(d, float(a))
    return TestIntegrand(
        "explin", d, lambda x: np.exp(x @ c), math.exp(float(c @ c) / 2.0), "analytic"
    )


def _hermite(d, k):
    k = tuple(int(v) for v in k) + (0,) * (d - len(k))
    if len(k) != d or min(k) < 0:
        raise CatalogError(f"hermite index {k} invalid for d={d}")

    def f(x):
        out = np.ones(len(x))
        for j, kj in enumerate(k):
            if kj:
                out = out * hermite_eval(kj, x[:, j])
        return out

    name = "hermite(" + ",".join(map(str, k)) + ")"
    return TestIntegrand(name, d, f, 1.0 if not any(k) else 0.0, "analytic")


def _spline(d, alpha):
    alpha = int(alpha)
    if alpha < 1:
        raise CatalogError(f"spline order must be >= 1, got {alpha}")

    def f(x):
        return np.prod(np.maximum(0.0, 1.0 - np.abs(x)) ** alpha, axis=1)

    return TestIntegrand(f"spline({alpha})", d, f, spline_mass(alpha) ** d, f"sobolev({alpha})")


_NAME = re.compile(r"^\s*([a-z]+)\s*(?:\(([^)]*)\))?\s*$")


def get_integrand(name, d, a=1.0):
    """Look up one integrand by (possibly parameterised) name."""
    match = _NAME.match(name)
    if not match:
        raise CatalogError(f"cannot parse integrand name {name!r}")
    base, args = match.group(1), match.group(2)
    params = [float(t) for t in args.split(",")] if args else []
    if base == "one":
        return _one(d)
    if base == "prodcos":
        return _prodcos(d, params[0] if params else a)
    if base == "explin":
        return _explin(d, params[0] if params else a)
    if base == "hermite":
        return _hermite(d, params if params else (2,))
    if base == "spline":
        return _spline(d, params[0] if params else 2)
    raise CatalogError(f"unknown integrand {name!r}")


def catalog(d, a=1.0):
    """The default integrands for dimension ``d`` and scale parameter ``a``."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return [
        _one(d),
        _prodcos(d, a),
        _explin(d, a),
        _hermite(d, (2,)),
        _hermite(d, (0,)),
        _spline(d, 1),
        _spline(d, 2),
        _spline(d, 3),
    ]

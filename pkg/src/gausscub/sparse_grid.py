"""
Smolyak sparse-grid quadrature over R^d built from Gauss-Hermite levels.

Levels are positive integers; level ``l`` uses ``n_l`` Gauss-Hermite nodes
as given by a :class:`LevelSchedule`. The quadrature is

    S_Lambda = sum_{l in Lambda} Delta_{l_1} x ... x Delta_{l_d},
    Delta_l = Q_l - Q_{l-1},  Q_0 = 0.

Integrands are vectorised: they take an ``(M, d)`` array of nodes and
return ``M`` values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .gauss_hermite import gauss_hermite_rule

__all__ = [
    "LevelSchedule",
    "POW2",
    "LINEAR",
    "IndexSet",
    "IndexSetTooLarge",
    "IntegrandEvaluationError",
    "isotropic_index_set",
    "level_size",
    "combination_coefficients",
    "smolyak_quadrature",
    "total_points",
    "tensor_nodes",
]

MAX_INDEX_SET_SIZE = 2_000_000


class IndexSetTooLarge(ValueError):
    pass


class IntegrandEvaluationError(RuntimeError):
    """Raised when the integrand fails; ``node`` holds the offending point."""

    def __init__(self, node, cause):
        super().__init__(f"integrand failed at node {tuple(node)}: {cause!r}")
        self.node = np.asarray(node)


@dataclass(frozen=True)
class LevelSchedule:
    """Map from level ``l >= 1`` to a univariate point count ``n_l``.

    ``growth`` is ``M`` and ``cap`` is ``M_0`` in the bracket
    ``M**(l-1) <= n_l <= M_0 * (M**l - 1)``; the bracket is only meaningful
    for geometric schedules.
    """

    name: str
    growth: float = 2.0
    cap: float = 1.0

    def __call__(self, level):
        return level_size(level, self)

    def in_bracket(self, level):
        n = self(level)
        return self.growth ** (level - 1) <= n <= self.cap * (self.growth**level - 1)


POW2 = LevelSchedule("pow2", growth=2.0, cap=1.0)
# diagnostics only; violates the geometric bracket
LINEAR = LevelSchedule("linear", growth=1.0, cap=1.0)

SCHEDULES = {"pow2": POW2, "linear": LINEAR}


def level_size(level, schedule=POW2):
    """Number of univariate nodes at ``level`` (``2**(level-1)`` by default)."""
    if level < 1:
        raise ValueError(f"levels start at 1, got {level}")
    if schedule.name == "pow2":
        if level > 62:
            raise OverflowError(f"level {level} overflows the pow2 schedule")
        return 1 << (level - 1)
    if schedule.name == "linear":
        return int(level)
    raise ValueError(f"unknown level schedule {schedule.name!r}")


@dataclass(frozen=True)
class IndexSet:
    """A finite set of multi-indices in N^d (components >= 1).

    ``isotropic_level`` is set when the set is exactly ``{|l|_1 <= L}``.
    """

    d: int
    indices: tuple = field(default_factory=tuple)
    isotropic_level: int | None = None

    def __post_init__(self):
        idx = tuple(sorted({tuple(int(c) for c in ell) for ell in self.indices}))
        for ell in idx:
            if len(ell) != self.d:
                raise ValueError(f"index {ell} does not have length {self.d}")
            if min(ell) < 1:
                raise ValueError(f"index {ell} has a component < 1")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, ell):
        return tuple(ell) in set(self.indices)

    def is_downward_closed(self):
        members = set(self.indices)
        for ell in self.indices:
            for k in range(self.d):
                if ell[k] > 1:
                    lower = ell[:k] + (ell[k] - 1,) + ell[k + 1 :]
                    if lower not in members:
                        return False
        return True


def _compositions(total, d):
    """All tuples of ``d`` positive integers summing to ``total``."""
    for cuts in itertools.combinations(range(1, total), d - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(d))


def isotropic_index_set(d, L, max_size=MAX_INDEX_SET_SIZE):
    """``{l in N^d : |l|_1 <= L}``; empty when ``L < d``."""
    if d < 1 or L < 1:
        raise ValueError(f"need d >= 1 and L >= 1, got d={d}, L={L}")
    size = math.comb(L, d)
    if size > max_size:
        raise IndexSetTooLarge(
            f"isotropic index set for d={d}, L={L} has {size} indices (cap {max_size})"
        )
    indices = [ell for k in range(d, L + 1) for ell in _compositions(k, d)]
    return IndexSet(d, tuple(indices), isotropic_level=L)


def combination_coefficients(d, L):
    """Combination-technique coefficients for the isotropic set ``Lambda_L``.

    ``c_l = (-1)**(L - |l|) * binom(d - 1, L - |l|)`` for
    ``L - d + 1 <= |l| <= L``. Returned as a list of ``(index, c_l)`` sorted
    by index.
    """
    if L < d:
        raise ValueError(f"combination form needs L >= d, got d={d}, L={L}")
    out = []
    for k in range(max(d, L - d + 1), L + 1):
        coeff = (-1) ** (L - k) * math.comb(d - 1, L - k)
        out.extend((ell, coeff) for ell in _compositions(k, d))
    return sorted(out)


def total_points(index_set, schedule=POW2):
    """``N = sum_{l in Lambda} prod_k n_{l_k}`` (no cross-level deduplication)."""
    return sum(math.prod(level_size(c, schedule) for c in ell) for ell in index_set)


def tensor_nodes(levels, schedule=POW2):
    """Nodes ``(M, d)`` and weights ``(M,)`` of the tensor rule at ``levels``."""
    rules = [gauss_hermite_rule(level_size(c, schedule)) for c in levels]
    grids = np.meshgrid(*[r.nodes for r in rules], indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    wgrids = np.meshgrid(*[r.weights for r in rules], indexing="ij")
    weights = np.prod(np.stack([w.ravel() for w in wgrids], axis=-1), axis=-1)
    return nodes, weights


class _Evaluator:
    """Wraps the integrand; optionally reuses values at repeated nodes."""

    def __init__(self, f, memoize):
        self.f = f
        self.memo = {} if memoize else None
        self.calls = 0

    def _call(self, nodes):
        self.calls += len(nodes)
        try:
            values = np.asarray(self.f(nodes), dtype=float).reshape(len(nodes))
        except Exception as exc:
            for node in nodes:
                try:
                    self.f(node[None, :])
                except Exception as inner:
                    raise IntegrandEvaluationError(node, inner) from inner
            raise IntegrandEvaluationError(nodes[0], exc) from exc
        return values

    def __call__(self, nodes):
        if self.memo is None:
            return self._call(nodes)
        keys = [n.tobytes() for n in nodes]
        missing = [i for i, k in enumerate(keys) if k not in self.memo]
        if missing:
            fresh = self._call(nodes[missing])
            for i, v in zip(missing, fresh):
                self.memo[keys[i]] = v
        return np.array([self.memo[k] for k in keys])


def _tensor_value(ev, levels, schedule):
    nodes, weights = tensor_nodes(levels, schedule)
    return math.fsum(weights * ev(nodes))


def smolyak_quadrature(
    f, index_set, schedule=POW2, form="auto", memoize=True, return_calls=False
):
    """Sparse-grid Gauss-Hermite quadrature ``S_Lambda(f)``.

    Parameters
    ----------
    f : callable
        Vectorised integrand, ``(M, d) -> (M,)``.
    index_set : IndexSet
        Finite index set. The combination form requires an isotropic set.
    schedule : LevelSchedule
        Univariate level sizes.
    form : {"auto", "delta", "combination"}
        ``"delta"`` expands each ``Delta_{l_1} x ... x Delta_{l_d}`` into
        signed tensor rules; ``"combination"`` uses the closed
        combination-technique coefficients. ``"auto"`` picks the
        combination form for isotropic sets.
    memoize : bool
        Reuse integrand values at nodes shared between tensor grids.
    return_calls : bool
        Also return the number of integrand evaluations.

    Returns
    -------
    float, or (float, int) when ``return_calls`` is set.
    """
    if form == "auto":
        form = "combination" if index_set.isotropic_level is not None else "delta"
    ev = _Evaluator(f, memoize)
    d = index_set.d

    if form == "combination":
        L = index_set.isotropic_level
        if L is None:
            raise ValueError("combination form needs an isotropic index set")
        if L < d:
            value = 0.0
        else:
            terms = [
                c * _tensor_value(ev, ell, schedule)
                for ell, c in combination_coefficients(d, L)
            ]
            value = math.fsum(terms)
    elif form == "delta":
        # every tensor value T_l is computed once; Delta products reuse them
        cache = {}

        def tensor(levels):
            if levels not in cache:
                cache[levels] = _tensor_value(ev, levels, schedule)
            return cache[levels]

        terms = []
        for ell in index_set:
            for shift in itertools.product((0, 1), repeat=d):
                lower = tuple(c - s for c, s in zip(ell, shift))
                if min(lower) < 1:
                    continue
                sign = -1 if sum(shift) % 2 else 1
                terms.append(sign * tensor(lower))
        value = math.fsum(terms)
    else:
        raise ValueError(f"unknown form {form!r}")

    if return_calls:
        return value, ev.calls
    return value

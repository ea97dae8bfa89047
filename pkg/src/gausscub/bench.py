"""
Convergence sweeps for the five Gaussian quadrature methods, log-log rate
fits and CSV / gnuplot output.

Methods
-------
sg-gh        isotropic Smolyak sparse grid on Gauss-Hermite levels
aff-lattice  CBC rank-1 lattice, affine map to [-b, b]^d
aff-net      order-(2 alpha + 1) interlaced Sobol' net, affine map
mob-lattice  CBC rank-1 lattice, cotangent map
mob-net      order-(2 alpha + 1) interlaced Sobol' net, cotangent map

Everything is deterministic: no randomness, fixed summation order. Wall
times are only recorded on request since they would break byte-identical
output.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .digital_net import MAX_DEPTH, higher_order_sobol, net_points
from .lattice import cached_cbc, is_prime, lattice_points
from .sparse_grid import POW2, isotropic_index_set, smolyak_quadrature, total_points
from .transforms import affine_radius, affine_rule, mobius_rule

__all__ = [
    "METHODS",
    "PRIME_LADDER",
    "ConvergenceRecord",
    "RateFit",
    "FitError",
    "default_sizes",
    "method_value",
    "converge_sweep",
    "fit_rate",
    "emit_outputs",
    "read_results",
    "CSV_HEADER",
]

log = logging.getLogger(__name__)

METHODS = ("sg-gh", "aff-lattice", "aff-net", "mob-lattice", "mob-net")
PRIME_LADDER = (127, 251, 509, 1021, 2039, 4093, 8191)
NET_LOG2_SIZES = tuple(range(6, 15))
CSV_HEADER = ("method", "d", "alpha", "N", "abs_error", "wall_seconds")
ERROR_FLOOR = 1e-14


class FitError(ValueError):
    pass


@dataclass(frozen=True)
class ConvergenceRecord:
    method: str
    d: int
    alpha: int
    N: int
    abs_error: float
    wall_seconds: float = 0.0


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    r_squared: float
    window: tuple


def default_sizes(method, d):
    """Native size ladder: primes for lattices, 2**m for nets, levels L for sg-gh."""
    if method == "sg-gh":
        return tuple(range(d, d + 9))
    if method.endswith("lattice"):
        return PRIME_LADDER
    if method.endswith("net"):
        return tuple(1 << m for m in NET_LOG2_SIZES)
    raise ValueError(f"unknown method {method!r}")


def _net_order(alpha):
    return 2 * alpha + 1


def _unit_points(method, d, alpha, size, cache_dir):
    if method.endswith("lattice"):
        if alpha not in (1, 2):
            raise ValueError(f"lattice methods support alpha in (1, 2), got {alpha}")
        if not is_prime(size):
            raise ValueError(f"lattice sizes must be prime, got {size}")
        vec, _ = cached_cbc(size, d, alpha, directory=cache_dir)
        return lattice_points(vec)
    m = int(size).bit_length() - 1
    if size < 2 or size != 1 << m:
        raise ValueError(f"net sizes must be powers of two, got {size}")
    G = higher_order_sobol(m, d, _net_order(alpha), max_depth=MAX_DEPTH)
    return net_points(G)


def method_value(method, f, d, alpha, size, cache_dir=None):
    """Apply one method at one size; returns ``(N, estimate)``.

    ``size`` is the level ``L`` for sg-gh and the point count otherwise.
    """
    if method == "sg-gh":
        index_set = isotropic_index_set(d, size)
        return total_points(index_set, POW2), smolyak_quadrature(f, index_set, POW2)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    points = _unit_points(method, d, alpha, size, cache_dir)
    n = len(points)
    if method.startswith("aff"):
        flavor = "lattice" if method.endswith("lattice") else "net"
        rule = affine_rule(points, affine_radius(n, alpha, flavor))
    else:
        rule = mobius_rule(points)
    return n, rule.apply(f)


def converge_sweep(method, integrand, d, alpha, sizes=None, cache_dir=None, record_time=False):
    """Error of ``method`` on ``integrand`` over an ascending size schedule.

    Parameters
    ----------
    method : str
        One of :data:`METHODS`.
    integrand : TestIntegrand
        Must carry an exact value.
    d, alpha : int
        Dimension and smoothness (the latter sets the net order, the lattice
        kernel and the affine radius).
    sizes : sequence of int, optional
        Defaults to :func:`default_sizes`.
    record_time : bool
        Store wall-clock seconds; off by default so output is reproducible.
    """
    if integrand.exact_value is None or not math.isfinite(integrand.exact_value):
        raise ValueError(f"integrand {integrand.name!r} has no exact value to measure against")
    sizes = tuple(default_sizes(method, d) if sizes is None else sizes)
    if list(sizes) != sorted(set(sizes)):
        raise ValueError(f"sizes must be strictly ascending, got {sizes}")
    records = []
    for size in sizes:
        start = time.perf_counter()
        n, value = method_value(method, integrand, d, alpha, size, cache_dir)
        elapsed = time.perf_counter() - start if record_time else 0.0
        err = abs(value - integrand.exact_value)
        log.info("%s d=%d alpha=%d N=%d error=%.3e", method, d, alpha, n, err)
        records.append(ConvergenceRecord(method, d, alpha, n, err, elapsed))
    return records


def fit_rate(records, window=None):
    """OLS fit of ``log(abs_error)`` on ``log(N)``.

    Records below the 1e-14 error floor or outside ``window = (N_min, N_max)``
    are dropped; at least four must remain.
    """
    lo, hi = window if window is not None else (-math.inf, math.inf)
    usable = [r for r in records if lo <= r.N <= hi and r.abs_error >= ERROR_FLOOR]
    if len(usable) < 4:
        raise FitError(f"need at least 4 records above the error floor, got {len(usable)}")
    x = np.log([r.N for r in usable])
    y = np.log([r.abs_error for r in usable])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    r2 = min(max(r2, 0.0), 1.0)
    return RateFit(float(slope), float(intercept), r2, (usable[0].N, usable[-1].N))


def _fmt(x):
    return f"{x:.17g}"


def records_to_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in sorted(records, key=lambda r: (r.method, r.N)):
        writer.writerow(
            [r.method, r.d, r.alpha, r.N, _fmt(r.abs_error), _fmt(r.wall_seconds)]
        )
    return buf.getvalue()


def plot_script(methods, csv_name="results.csv"):
    """gnuplot script drawing one log-log series per method from the CSV."""
    lines = [
        "# gnuplot script; reads only " + csv_name,
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set logscale xy",
        "set xlabel 'N'",
        "set ylabel 'absolute error'",
        "set format y '10^{%T}'",
    ]
    series = [
        f"'{csv_name}' using (strcol(1) eq '{m}' ? $4 : 1/0):5 with linespoints title '{m}'"
        for m in methods
    ]
    if series:
        lines.append("plot " + ", \\\n     ".join(series))
    return "\n".join(lines) + "\n"


def fits_to_csv(fits):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("method", "slope", "intercept", "r_squared", "N_min", "N_max"))
    for method in sorted(fits):
        fit = fits[method]
        writer.writerow(
            [method, _fmt(fit.slope), _fmt(fit.intercept), _fmt(fit.r_squared), *fit.window]
        )
    return buf.getvalue()


def emit_outputs(records, fits, path):
    """Write ``results.csv``, ``fits.csv`` and ``plot.gp`` into directory ``path``."""
    path = Path(path)
    methods = sorted({r.method for r in records})
    files = {
        "results.csv": records_to_csv(records),
        "fits.csv": fits_to_csv(fits),
        "plot.gp": plot_script(methods),
    }
    written = []
    for name, text in files.items():
        target = path / name
        try:
            path.mkdir(parents=True, exist_ok=True)
            with open(target, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"could not write {target}: {exc}") from exc
        written.append(target)
    return written


def read_results(path):
    """Parse a ``results.csv`` back into records."""
    path = Path(path)
    if path.is_dir():
        path = path / "results.csv"
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header}")
        return [
            ConvergenceRecord(m, int(d), int(a), int(n), float(e), float(w))
            for m, d, a, n, e, w in reader
        ]

"""
Base-2 digital nets.

A net with ``N = 2**m`` points is given by ``d`` binary generating matrices
of shape ``depth x m``. Point ``j`` (1-based) has coordinate ``i`` with
digits ``C_i @ digits(j - 1)`` over GF(2), read as ``sum_r xi_r 2**-r``.
Higher-order nets come from interlacing the digits of ``q`` first-order
coordinates into one.

Matrices are stored as uint8 arrays of shape ``(d, depth, m)``; point
generation packs each column into a machine word and XORs.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

__all__ = [
    "GeneratingMatrices",
    "DirectionNumberError",
    "CapacityError",
    "MAX_DEPTH",
    "radical_inverse",
    "net_points",
    "interlace",
    "deinterlace",
    "load_direction_numbers",
    "sobol_matrices",
    "higher_order_sobol",
    "BUNDLED_TABLE",
]

MAX_DEPTH = 64
# digits kept when converting to float64
_FLOAT_BITS = 53


class DirectionNumberError(ValueError):
    pass


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratingMatrices:
    """``d`` binary matrices of shape ``depth x m`` (base 2)."""

    matrices: np.ndarray

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=np.uint8) & 1
        if mats.ndim != 3:
            raise ValueError(f"expected a (d, depth, m) array, got shape {mats.shape}")
        if mats.shape[1] > MAX_DEPTH:
            raise ValueError(f"depth {mats.shape[1]} exceeds {MAX_DEPTH} digits")
        mats.setflags(write=False)
        object.__setattr__(self, "matrices", mats)

    @property
    def d(self):
        return self.matrices.shape[0]

    @property
    def depth(self):
        return self.matrices.shape[1]

    @property
    def m(self):
        return self.matrices.shape[2]

    @property
    def n_points(self):
        return 1 << self.m

    def columns(self):
        """Columns packed into uint64 words, row 1 in the top used bit.

        Returns an array of shape ``(d, m)``.
        """
        weights = np.array(
            [1 << (self.depth - 1 - r) for r in range(self.depth)], dtype=np.uint64
        )
        cols = np.zeros((self.d, self.m), dtype=np.uint64)
        for r in range(self.depth):
            cols |= self.matrices[:, r, :].astype(np.uint64) * weights[r]
        return cols


def radical_inverse(j):
    """Base-2 digit reversal: ``j = sum b_k 2**k`` maps to ``sum b_k 2**-(k+1)``."""
    if j < 0:
        raise ValueError(f"index must be non-negative, got {j}")
    value, scale = 0.0, 0.5
    while j:
        if j & 1:
            value += scale
        j >>= 1
        scale /= 2
    return value


def _digit_words(G):
    """Output digit words for j = 1..N, shape (N, d), dtype uint64."""
    cols = G.columns()
    idx = np.arange(G.n_points, dtype=np.uint64)
    words = np.zeros((G.n_points, G.d), dtype=np.uint64)
    for c in range(G.m):
        bit = ((idx >> np.uint64(c)) & np.uint64(1)).astype(bool)
        words[bit] ^= cols[:, c]
    return words


def net_points(G):
    """The ``2**m`` points of the net, ordered ``j = 1..N``, shape ``(N, d)``.

    Only the leading 53 digits survive the conversion to float64 (they are
    truncated, never rounded up), so all coordinates lie in ``[0, 1)``.
    """
    words = _digit_words(G)
    depth = G.depth
    if depth > _FLOAT_BITS:
        words = words >> np.uint64(depth - _FLOAT_BITS)
        depth = _FLOAT_BITS
    return words.astype(np.float64) * 2.0**-depth


def interlace(base, q, max_depth=None):
    """Dick's digit interlacing of ``q`` consecutive coordinates.

    Output matrix ``i`` has row ``(r-1)*q + s`` equal to row ``r`` of base
    matrix ``(i-1)*q + s``. Only the first ``m`` rows of each base matrix
    are used, so the result has depth ``q*m``.

    Parameters
    ----------
    base : GeneratingMatrices
        First-order matrices over ``q*d`` coordinates.
    q : int
        Interlacing factor.
    max_depth : int, optional
        Keep only the leading ``max_depth`` output rows. Without it, a depth
        ``q*m`` above 64 is rejected.
    """
    if q < 1:
        raise ValueError(f"interlacing factor must be >= 1, got {q}")
    if base.d % q:
        raise ValueError(f"{base.d} base coordinates are not divisible by q={q}")
    m = base.m
    if base.depth < m:
        raise ValueError(f"base matrices need at least m={m} rows, got {base.depth}")
    depth = q * m
    if max_depth is None and depth > MAX_DEPTH:
        raise CapacityError(f"interlaced depth q*m = {depth} exceeds {MAX_DEPTH} digits")
    d = base.d // q
    # (d, q, m rows, m cols) -> rows ordered (r, s)
    blocks = base.matrices[:, :m, :].reshape(d, q, m, m)
    out = blocks.transpose(0, 2, 1, 3).reshape(d, depth, m)
    if max_depth is not None:
        out = out[:, : min(depth, max_depth, MAX_DEPTH), :]
    return GeneratingMatrices(out)


def deinterlace(G, q):
    """Split each coordinate's rows back into ``q`` digit streams.

    Inverse of :func:`interlace` on the retained rows.
    """
    if G.depth % q:
        raise ValueError(f"depth {G.depth} is not divisible by q={q}")
    rows = G.depth // q
    out = G.matrices.reshape(G.d, rows, q, G.m).transpose(0, 2, 1, 3)
    return GeneratingMatrices(out.reshape(G.d * q, rows, G.m))


BUNDLED_TABLE = "sobol_joe_kuo_21.txt"


def _read_table(source):
    if source is None:
        return resources.files("gausscub.data").joinpath(BUNDLED_TABLE).read_text()
    if isinstance(source, (str, Path)):
        return Path(source).read_text()
    return source.read()


def _parse_table(text):
    lines = text.splitlines()
    content = [(no, ln.split()) for no, ln in enumerate(lines, 1) if ln.strip()]
    if not content:
        return 0, 0, []
    no, head = content[0]
    try:
        dmax, mmax = (int(t) for t in head)
    except ValueError:
        raise DirectionNumberError(f"line {no}: header must be 'dmax mmax', got {head}")
    rows = []
    for no, toks in content[1:]:
        try:
            coord, s, a, *mvals = (int(t) for t in toks)
        except ValueError:
            raise DirectionNumberError(f"line {no}: non-integer field in {toks}")
        if s < 1 or len(mvals) != s:
            raise DirectionNumberError(f"line {no}: degree {s} needs {s} initial values")
        if not 0 <= a < 2 ** max(s - 1, 0):
            raise DirectionNumberError(f"line {no}: coefficient {a} invalid for degree {s}")
        for i, mi in enumerate(mvals, 1):
            if mi % 2 == 0 or not 0 < mi < 2**i:
                raise DirectionNumberError(f"line {no}: m_{i} = {mi} must be odd and < 2^{i}")
        if coord != len(rows) + 2:
            raise DirectionNumberError(f"line {no}: expected coordinate {len(rows) + 2}")
        rows.append((s, a, mvals))
    return dmax, mmax, rows


def _direction_integers(s, a, mvals, m):
    """m_1..m_m from the primitive-polynomial recurrence."""
    mm = list(mvals[:m])
    for i in range(s, m):
        new = mm[i - s] ^ (mm[i - s] << s)
        for k in range(1, s):
            if (a >> (s - 1 - k)) & 1:
                new ^= mm[i - k] << k
        mm.append(new)
    return mm


def load_direction_numbers(source=None, m=10, d=None):
    """Sobol' generating matrices from a Joe-Kuo style direction-number file.

    Parameters
    ----------
    source : path, file object or None
        Table with a ``dmax mmax`` header and one line
        ``coord s a m_1 ... m_s`` per coordinate from 2 on; coordinate 1 is
        the identity. ``None`` loads the bundled 21-dimensional table.
    m : int
        Log2 of the number of points; the matrices are ``m x m``.
    d : int, optional
        Number of coordinates; defaults to the table's dimension.

    Raises
    ------
    DirectionNumberError
        On a malformed line (the message carries the line number).
    CapacityError
        When ``d`` or ``m`` exceeds what the table provides.
    """
    dmax, mmax, rows = _parse_table(_read_table(source))
    available = min(dmax, len(rows) + 1)
    if d is None:
        d = available
    if d < 1 or d > available:
        raise CapacityError(f"requested d={d} but the table provides {available} coordinates")
    if m > mmax or m > MAX_DEPTH:
        raise CapacityError(f"requested m={m} but the table supports m <= {mmax}")
    mats = np.zeros((d, m, m), dtype=np.uint8)
    mats[0] = np.eye(m, dtype=np.uint8)
    for i in range(1, d):
        s, a, mvals = rows[i - 1]
        for c, mc in enumerate(_direction_integers(s, a, mvals, m)):
            # v_{c+1} = m_{c+1} / 2^{c+1}: row r holds bit (c+1-r) of m_{c+1}
            for r in range(c + 1):
                mats[i, r, c] = (mc >> (c - r)) & 1
    return GeneratingMatrices(mats)


sobol_matrices = load_direction_numbers


def higher_order_sobol(m, d, q, source=None, max_depth=None):
    """Order-``q`` interlaced Sobol' matrices for ``2**m`` points in ``d`` dims."""
    base = load_direction_numbers(source, m=m, d=q * d)
    return interlace(base, q, max_depth=max_depth)

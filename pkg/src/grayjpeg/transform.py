"""Forward and inverse 2D DCT on 8x8 blocks, plus an NxN DCT-II matrix generator.

The orthonormal DCT-II convention is used throughout:

    X[k] = a(k) * sum_n x[n] * cos((2n+1)*pi*k / (2N))

with a(0) = sqrt(1/N) and a(k) = sqrt(2/N) otherwise.  With this scaling the
transform matrix is orthogonal (M @ M.T == I), so the inverse transform is the
transpose and energy is conserved.

The 2D transforms are evaluated separably (row pass then column pass); the
direct quadruple-sum form exists only in the test suite as an oracle.
"""

from __future__ import annotations

import math

import numpy as np

BLOCK_SIZE = 8


def dct_matrix(order: int) -> np.ndarray:
    """Return the orthonormal ``order x order`` DCT-II matrix.

    Entry [k, n] is a(k) * cos((2n+1)*pi*k / (2*order)).
    """
    if order < 1:
        raise ValueError(f"DCT matrix order must be >= 1, got {order}")
    n = np.arange(order)
    k = n.reshape(-1, 1)
    m = np.cos((2 * n + 1) * k * np.pi / (2 * order))
    m *= math.sqrt(2.0 / order)
    m[0, :] = math.sqrt(1.0 / order)
    return m


# The codec path only ever transforms 8-point signals / 8x8 blocks.
_DCT8 = dct_matrix(BLOCK_SIZE)
_DCT8_T = _DCT8.T.copy()


def fdct_1d(signal: np.ndarray) -> np.ndarray:
    """Forward 1D DCT-II of a length-N signal (N >= 1)."""
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("fdct_1d expects a nonempty 1D signal")
    m = _DCT8 if x.size == BLOCK_SIZE else dct_matrix(x.size)
    return m @ x


def fdct_2d(block: np.ndarray) -> np.ndarray:
    """Forward 2D DCT-II of an 8x8 sample block.

    Computed separably as M @ block @ M.T, which equals the double sum
    F[k,l] = a(k)a(l) * sum_mn f[m,n] cos((2m+1)pi k/16) cos((2n+1)pi l/16).
    """
    f = np.asarray(block, dtype=np.float64)
    if f.shape != (BLOCK_SIZE, BLOCK_SIZE):
        raise ValueError(f"fdct_2d expects an 8x8 block, got shape {f.shape}")
    return _DCT8 @ f @ _DCT8_T


def idct_2d(coeffs: np.ndarray) -> np.ndarray:
    """Inverse 2D DCT of an 8x8 coefficient block.

    Returns real-valued samples; rounding and clamping to pixel range is the
    caller's responsibility (the codec applies them after the +128 shift).
    """
    F = np.asarray(coeffs, dtype=np.float64)
    if F.shape != (BLOCK_SIZE, BLOCK_SIZE):
        raise ValueError(f"idct_2d expects an 8x8 block, got shape {F.shape}")
    return _DCT8_T @ F @ _DCT8


# Fast 8-point FDCT (Lee-style decimation).  Each stage halves the problem by
# splitting into a sum half (even outputs) and a cosine-weighted difference
# half (odd outputs).  Divisions by 2cos are folded into multiplications by
# precomputed reciprocals so the multiplication count below is exact.
_LEE8 = tuple(1.0 / (2.0 * math.cos((i + 0.5) * math.pi / 8)) for i in range(4))
_LEE4 = tuple(1.0 / (2.0 * math.cos((i + 0.5) * math.pi / 4)) for i in range(2))
_LEE2 = (1.0 / (2.0 * math.cos(math.pi / 4)),)
_ALPHA8 = tuple(math.sqrt((1.0 if k == 0 else 2.0) / 8) for k in range(8))


def _lee(values: list[float], recip, counter: list[int]) -> list[float]:
    n = len(values)
    if n == 1:
        return values
    half = n // 2
    sums = [values[i] + values[n - 1 - i] for i in range(half)]
    diffs = [(values[i] - values[n - 1 - i]) * recip[0][i] for i in range(half)]
    counter[0] += half
    even = _lee(sums, recip[1:], counter)
    odd = _lee(diffs, recip[1:], counter)
    out = [0.0] * n
    for i in range(half - 1):
        out[2 * i] = even[i]
        out[2 * i + 1] = odd[i] + odd[i + 1]
    out[n - 2] = even[half - 1]
    out[n - 1] = odd[half - 1]
    return out


def fast_fdct_8(signal: np.ndarray) -> tuple[np.ndarray, int]:
    """Fast 8-point forward DCT.

    Returns ``(coefficients, multiplication_count)``.  The output matches
    :func:`fdct_1d` to within 1e-9; the count tallies every floating-point
    multiplication actually performed (20, versus 64 for the direct
    matrix-vector product).
    """
    x = np.asarray(signal, dtype=np.float64)
    if x.shape != (BLOCK_SIZE,):
        raise ValueError(f"fast_fdct_8 expects exactly 8 samples, got shape {x.shape}")
    counter = [0]
    unscaled = _lee(list(x), (_LEE8, _LEE4, _LEE2), counter)
    out = np.array([a * u for a, u in zip(_ALPHA8, unscaled)])
    counter[0] += BLOCK_SIZE
    return out, counter[0]

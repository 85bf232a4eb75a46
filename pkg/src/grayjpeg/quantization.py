"""Coefficient quantization: the codec's only lossy stage.

Each DCT coefficient is divided by its quantum and rounded to an integer
level; dequantization multiplies the level back by the quantum.  Tables are
stored in zig-zag order, matching both the DQT wire format and the common
published form of the default table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import ZIGZAG_INDICES

# ISO/JPEG recommended luminance table for CCIR-601-class images, natural
# (row-major) order.
_DEFAULT_LUMINANCE = (
    16, 11, 10, 16, 24, 40, 51, 61,
    12, 12, 14, 19, 26, 58, 60, 55,
    14, 13, 16, 24, 40, 57, 69, 56,
    14, 17, 22, 29, 51, 87, 80, 62,
    18, 22, 37, 56, 68, 109, 103, 77,
    24, 35, 55, 64, 81, 104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103, 99,
)


@dataclass(frozen=True)
class QuantizationTable:
    """64 quanta in zig-zag order, each in [1, 255] (baseline 8-bit precision)."""

    quanta: tuple[int, ...]

    def __post_init__(self):
        if len(self.quanta) != 64:
            raise ValueError(f"quantization table needs 64 quanta, got {len(self.quanta)}")
        for q in self.quanta:
            if not 1 <= int(q) <= 255:
                raise ValueError(f"quantum {q} outside [1, 255]")
        object.__setattr__(self, "quanta", tuple(int(q) for q in self.quanta))

    @classmethod
    def from_natural(cls, values) -> "QuantizationTable":
        """Build a table from 64 quanta given in natural (row-major) order."""
        flat = np.asarray(values).reshape(64)
        return cls(tuple(int(flat[i]) for i in ZIGZAG_INDICES))

    def natural(self) -> np.ndarray:
        """The 8x8 quanta grid in natural order, as int64."""
        grid = np.zeros(64, dtype=np.int64)
        for zz, nat in enumerate(ZIGZAG_INDICES):
            grid[nat] = self.quanta[zz]
        return grid.reshape(8, 8)


def default_luminance_table() -> QuantizationTable:
    """The standard recommended luminance table (DC quantum 16)."""
    return QuantizationTable.from_natural(_DEFAULT_LUMINANCE)


def quantize(coeffs: np.ndarray, table: QuantizationTable) -> np.ndarray:
    """Map coefficients to integer levels: round(F/Q), ties away from zero."""
    F = np.asarray(coeffs, dtype=np.float64)
    scaled = F / table.natural()
    return (np.sign(scaled) * np.floor(np.abs(scaled) + 0.5)).astype(np.int64)


def dequantize(levels: np.ndarray, table: QuantizationTable) -> np.ndarray:
    """Reverse the normalization: level * quantum (the rounding is not undone)."""
    return np.asarray(levels, dtype=np.float64) * table.natural()


def scale_table(base: QuantizationTable, quality: int) -> QuantizationTable:
    """Scale a base table by a quality setting in [1, 100].

    Quality 50 reproduces the base table; lower quality scales quanta up,
    higher quality scales them down (quality 100 clamps every quantum to 1).
    Uses the de facto interchange convention: scale% = 5000/q below 50,
    200 - 2q at and above.
    """
    if not 1 <= quality <= 100:
        raise ValueError(f"quality must be in [1, 100], got {quality}")
    scale = 5000 // quality if quality < 50 else 200 - 2 * quality
    scaled = tuple(min(max((q * scale + 50) // 100, 1), 255) for q in base.quanta)
    return QuantizationTable(scaled)

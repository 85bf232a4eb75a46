"""Baseline sequential pipeline: level shift, 8x8 tiling with edge padding,
FDCT -> quantize -> entropy encode, the inverse chain, and quality metrics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import container, entropy, quantization, transform
from .container import FrameHeader, MAX_DIMENSION


class ImageBuffer:
    """A width x height grid of 8-bit grayscale samples.

    ``pixels`` is a (height, width) uint8 array; rows are top to bottom.
    """

    def __init__(self, pixels: np.ndarray):
        arr = np.asarray(pixels)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2D sample grid, got {arr.ndim} dims")
        h, w = arr.shape
        if not (1 <= w <= MAX_DIMENSION and 1 <= h <= MAX_DIMENSION):
            raise ValueError(f"dimensions {w}x{h} outside 1..{MAX_DIMENSION}")
        if arr.dtype != np.uint8:
            if np.any((arr < 0) | (arr > 255)):
                raise ValueError("samples must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        self.pixels = arr

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def from_samples(cls, width: int, height: int, samples: bytes) -> "ImageBuffer":
        """Build from row-major raw samples (length must equal width*height)."""
        if len(samples) != width * height:
            raise ValueError(
                f"{len(samples)} samples for a {width}x{height} image"
            )
        return cls(np.frombuffer(samples, dtype=np.uint8).reshape(height, width).copy())

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, ImageBuffer) and np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True)
class EncodeSettings:
    """Encoder knobs: quality 1..100 and optional two-pass Huffman optimization."""

    quality: int = 75
    optimize_huffman: bool = False

    def __post_init__(self):
        if not 1 <= self.quality <= 100:
            raise ValueError(f"quality must be in [1, 100], got {self.quality}")


def _tile_blocks(pixels: np.ndarray) -> np.ndarray:
    """Level-shift and split into 8x8 blocks, left-to-right then top-to-bottom.

    Partial edge blocks are padded by replicating the last row/column.
    """
    h, w = pixels.shape
    pad_h = (-h) % 8
    pad_w = (-w) % 8
    shifted = pixels.astype(np.float64) - 128.0
    padded = np.pad(shifted, ((0, pad_h), (0, pad_w)), mode="edge")
    ph, pw = padded.shape
    return (
        padded.reshape(ph // 8, 8, pw // 8, 8)
        .transpose(0, 2, 1, 3)
        .reshape(-1, 8, 8)
    )


def encode_image(image: ImageBuffer, settings: EncodeSettings = EncodeSettings()) -> bytes:
    """Encode a grayscale image into a baseline sequential JFIF stream.

    Blocks are scanned in a single top-to-bottom pass.  The output is fully
    deterministic for a given image and settings.
    """
    qtable = quantization.scale_table(quantization.default_luminance_table(), settings.quality)
    blocks_zz = []
    for block in _tile_blocks(image.pixels):
        coeffs = transform.fdct_2d(block)
        levels = quantization.quantize(coeffs, qtable)
        blocks_zz.append(entropy.zigzag_scan(levels))

    if settings.optimize_huffman:
        dc_freqs, ac_freqs = entropy.symbol_frequencies(blocks_zz)
        dc_table = entropy.build_huffman_table(dc_freqs, interoperable=True)
        ac_table = entropy.build_huffman_table(ac_freqs, interoperable=True)
    else:
        dc_table = entropy.STANDARD_DC_LUMINANCE
        ac_table = entropy.STANDARD_AC_LUMINANCE

    payload = entropy.huffman_encode(blocks_zz, dc_table, ac_table)
    frame = FrameHeader(width=image.width, height=image.height)
    return container.write_stream(frame, qtable, dc_table, ac_table, payload)


def decode_image(stream: bytes) -> ImageBuffer:
    """Decode a baseline sequential grayscale JFIF stream.

    Raises a typed :class:`~grayjpeg.errors.JpegError` on malformed or
    unsupported input; no partial image is ever returned.
    """
    doc = container.parse_stream(stream)
    w, h = doc.frame.width, doc.frame.height
    blocks_w = math.ceil(w / 8)
    blocks_h = math.ceil(h / 8)
    blocks_zz = entropy.huffman_decode(
        doc.entropy_payload, doc.dc_table, doc.ac_table, blocks_w * blocks_h
    )

    qtable = doc.quant_table
    out = np.empty((blocks_h * 8, blocks_w * 8), dtype=np.uint8)
    for i, vector in enumerate(blocks_zz):
        levels = entropy.inverse_zigzag(vector)
        coeffs = quantization.dequantize(levels, qtable)
        samples = transform.idct_2d(coeffs) + 128.0
        rounded = np.sign(samples) * np.floor(np.abs(samples) + 0.5)
        clamped = np.clip(rounded, 0, 255).astype(np.uint8)
        by, bx = divmod(i, blocks_w)
        out[by * 8 : by * 8 + 8, bx * 8 : bx * 8 + 8] = clamped
    return ImageBuffer(out[:h, :w].copy())


def psnr(a: ImageBuffer, b: ImageBuffer) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images."""
    if a.pixels.shape != b.pixels.shape:
        raise ValueError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    diff = a.pixels.astype(np.float64) - b.pixels.astype(np.float64)
    mse = np.mean(diff * diff)
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)


def compression_ratio(original: ImageBuffer, encoded: bytes) -> float:
    """Raw sample bytes divided by encoded stream bytes."""
    if len(encoded) == 0:
        raise ValueError("encoded stream is empty")
    return (original.width * original.height) / len(encoded)

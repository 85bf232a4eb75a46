"""One 8x8 block walked through every encoder stage, intermediate values
printed: level shift, FDCT, quantization, zig-zag, run-length symbols, bits.

Run: python demos/02_block_pipeline.py
"""

import numpy as np

from grayjpeg import (
    default_luminance_table,
    dequantize,
    fdct_2d,
    idct_2d,
    quantize,
    run_length_symbols,
    scale_table,
    zigzag_scan,
)
from grayjpeg.entropy import (
    STANDARD_AC_LUMINANCE,
    STANDARD_DC_LUMINANCE,
    huffman_encode,
)

np.set_printoptions(precision=1, suppress=True, linewidth=120)

# A block with a diagonal edge, the kind of content JPEG sees constantly.
pixels = np.fromfunction(lambda i, j: np.where(i + j < 8, 60, 190), (8, 8))
print("=== Input samples ===")
print(pixels.astype(int))

shifted = pixels - 128.0
print("\n=== After level shift (-128) ===")
print(shifted.astype(int))

coeffs = fdct_2d(shifted)
print("\n=== DCT coefficients ===")
print(coeffs)

table = scale_table(default_luminance_table(), quality=50)
levels = quantize(coeffs, table)
print("\n=== Quantized levels (quality 50) ===")
print(levels)
print(f"nonzero levels: {np.count_nonzero(levels)} of 64")

vector = zigzag_scan(levels)
print("\n=== Zig-zag sequence ===")
print(vector)

symbols = run_length_symbols(vector[1:])
print("\n=== Intermediate run-length symbols (AC) ===")
for sym in symbols:
    if sym.size == 0:
        print("  EOB" if sym.run == 0 else "  ZRL")
    else:
        print(f"  run={sym.run:2d} size={sym.size:2d} amplitude={sym.amplitude}")

payload = huffman_encode([vector], STANDARD_DC_LUMINANCE, STANDARD_AC_LUMINANCE)
print(f"\n=== Entropy-coded payload: {len(payload)} bytes for 64 samples ===")
print(payload.hex(" "))

restored = idct_2d(dequantize(levels, table)) + 128.0
print("\n=== Reconstruction error (per pixel) ===")
print((restored.round() - pixels).astype(int))

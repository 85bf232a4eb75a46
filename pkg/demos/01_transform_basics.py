"""A tour of the 8x8 DCT: the transform matrix, orthogonality, energy
compaction, and the fast kernel's multiplication count.

Run: python demos/01_transform_basics.py
"""

import numpy as np

from grayjpeg import dct_matrix, fast_fdct_8, fdct_1d, fdct_2d, idct_2d

np.set_printoptions(precision=4, suppress=True, linewidth=120)

print("=== The 4-point DCT matrix ===")
m4 = dct_matrix(4)
print(m4)
print("\nM @ M.T (orthogonal -> identity):")
print(m4 @ m4.T)

print("\n=== Energy compaction on a smooth ramp block ===")
ramp = np.tile(np.arange(8.0) * 16 - 60, (8, 1))
coeffs = fdct_2d(ramp)
print("spatial block (one row):", ramp[0])
print("coefficient magnitudes:")
print(np.abs(coeffs))
energy = (coeffs**2).sum()
top_left = (coeffs[:2, :2] ** 2).sum()
print(f"\n{top_left / energy:.1%} of the energy sits in the 4 lowest-frequency coefficients")

print("\n=== Perfect reconstruction ===")
rng = np.random.default_rng(1)
block = rng.integers(-128, 128, size=(8, 8)).astype(float)
err = np.abs(idct_2d(fdct_2d(block)) - block).max()
print(f"max |idct(fdct(x)) - x| over a random block: {err:.2e}")

print("\n=== Fast 8-point kernel ===")
x = rng.uniform(-128, 127, size=8)
fast, mults = fast_fdct_8(x)
direct = fdct_1d(x)
print(f"fast vs direct max difference: {np.abs(fast - direct).max():.2e}")
print(f"multiplications: {mults} (direct matrix-vector product needs 64)")

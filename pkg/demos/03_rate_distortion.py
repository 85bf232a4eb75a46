"""Rate-distortion behavior: sweep the quality knob on a synthetic image and
watch size, compression ratio, and PSNR trade off.

Run: python demos/03_rate_distortion.py
"""

import numpy as np

from grayjpeg import (
    EncodeSettings,
    ImageBuffer,
    compression_ratio,
    decode_image,
    encode_image,
    psnr,
)


def make_scene(width=160, height=120) -> ImageBuffer:
    yy, xx = np.mgrid[0:height, 0:width].astype(float)
    values = 90 + 70 * np.sin(xx / 13) * np.cos(yy / 17) + 0.3 * xx
    rng = np.random.default_rng(9)
    values += rng.normal(0, 4, values.shape)
    return ImageBuffer(np.clip(values, 0, 255).astype(np.uint8))


image = make_scene()
raw_bytes = image.width * image.height
print(f"test scene: {image.width}x{image.height} ({raw_bytes} raw bytes)\n")

print(f"{'quality':>7} {'bytes':>7} {'ratio':>7} {'psnr, dB':>9}")
for quality in (5, 10, 20, 35, 50, 65, 80, 90, 95, 100):
    stream = encode_image(image, EncodeSettings(quality=quality))
    decoded = decode_image(stream)
    print(
        f"{quality:>7} {len(stream):>7} {compression_ratio(image, stream):>7.2f} "
        f"{psnr(decoded, image):>9.2f}"
    )

print("\nWith per-image optimized Huffman tables:")
for quality in (50, 90):
    standard = encode_image(image, EncodeSettings(quality=quality))
    optimized = encode_image(image, EncodeSettings(quality=quality, optimize_huffman=True))
    saved = 100 * (1 - len(optimized) / len(standard))
    print(f"  quality {quality}: {len(standard)} -> {len(optimized)} bytes ({saved:.1f}% smaller)")

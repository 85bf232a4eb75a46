import numpy as np
import pytest

from grayjpeg import ImageBuffer


def synthetic_image(kind: str, width: int = 128, height: int = 96) -> ImageBuffer:
    """Deterministic natural-ish test images (smooth, blobby, textured)."""
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    if kind == "gradient":
        values = 40 + 140 * xx / width + 30 * np.sin(2 * np.pi * yy / 37)
    elif kind == "blobs":
        values = np.full_like(xx, 90.0)
        for cx, cy, sigma, amp in [(30, 20, 12, 120), (90, 60, 18, -60), (70, 30, 8, 80)]:
            values += amp * np.exp(-((xx - cx) ** 2 + (yy - cy) ** 2) / (2.0 * sigma**2))
    elif kind == "texture":
        rng = np.random.default_rng(2024)
        coarse = rng.integers(40, 216, size=(height // 8 + 1, width // 8 + 1))
        values = np.kron(coarse, np.ones((8, 8)))[:height, :width].astype(float)
        values += rng.normal(0, 5, size=(height, width))
    else:
        raise ValueError(kind)
    return ImageBuffer(np.clip(values, 0, 255).astype(np.uint8))


CORPUS_KINDS = ("gradient", "blobs", "texture")


@pytest.fixture(params=CORPUS_KINDS)
def corpus_image(request) -> ImageBuffer:
    return synthetic_image(request.param)


def random_image(rng: np.random.Generator, width: int, height: int) -> ImageBuffer:
    return ImageBuffer(rng.integers(0, 256, size=(height, width), dtype=np.uint8))

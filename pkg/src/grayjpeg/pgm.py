"""Binary (P5) PGM reader and writer for raw grayscale ingestion."""

from __future__ import annotations

from .codec import ImageBuffer


class PgmError(ValueError):
    """Malformed or unsupported PGM data."""


def read_pgm(data: bytes) -> ImageBuffer:
    """Parse a binary P5 PGM with maxval 255."""
    if data[:2] == b"P2":
        raise PgmError("ASCII PGM (P2) is not supported; convert to binary P5")
    if data[:2] != b"P5":
        raise PgmError("not a P5 PGM file")

    # Header tokens are whitespace-separated; '#' comments run to end of line.
    pos = 2
    tokens: list[int] = []
    while len(tokens) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos] == ord("#"):
            eol = data.find(b"\n", pos)
            pos = len(data) if eol < 0 else eol + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise PgmError("PGM header ends before width/height/maxval")
        token = data[start:pos]
        if not token.isdigit():
            raise PgmError(f"bad PGM header token {token!r}")
        tokens.append(int(token))
    width, height, maxval = tokens
    if maxval != 255:
        raise PgmError(f"only maxval 255 is supported, got {maxval}")
    if width < 1 or height < 1:
        raise PgmError(f"bad PGM dimensions {width}x{height}")

    pos += 1  # single whitespace byte separates header from samples
    samples = data[pos : pos + width * height]
    if len(samples) != width * height:
        raise PgmError(
            f"PGM payload has {len(samples)} samples, expected {width * height}"
        )
    return ImageBuffer.from_samples(width, height, samples)


def write_pgm(image: ImageBuffer) -> bytes:
    """Serialize an image as binary P5 with maxval 255."""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.tobytes()

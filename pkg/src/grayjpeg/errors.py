"""Exception types raised by the codec, entropy coder, and container parser."""


class JpegError(Exception):
    """Base class for all stream-format and coding errors.

    ``offset`` carries the byte position in the input stream where the
    problem was detected, when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class NotAJpegError(JpegError):
    """Input does not begin with an SOI marker."""


class TruncationError(JpegError):
    """Stream ended before a complete segment or entropy payload was read."""


class CorruptStreamError(JpegError):
    """Structurally invalid data: bad marker, broken Huffman code, bad stuffing."""


class UnsupportedFeatureError(JpegError):
    """Valid JPEG construct outside the baseline sequential grayscale subset."""


class MissingTableError(JpegError):
    """Scan references a quantization or Huffman table that was never defined."""


class CodingError(JpegError):
    """Encoder was handed a symbol its Huffman table cannot represent."""


class SerializationError(JpegError):
    """Data cannot be represented in the container format (e.g. oversized segment)."""

"""Baseline sequential JPEG codec for grayscale images.

A numpy-based library covering the full pipeline: 8x8 DCT transforms,
quantization with quality scaling, run-length + Huffman entropy coding,
the JFIF container format, and rate-distortion measurement.  A command-line
front end lives in :mod:`grayjpeg.cli`.
"""

from .codec import (
    EncodeSettings,
    ImageBuffer,
    compression_ratio,
    decode_image,
    encode_image,
    psnr,
)
from .container import FrameHeader, JpegDocument, parse_stream, write_stream
from .entropy import (
    EOB,
    ZRL,
    HuffmanTable,
    IntermediateSymbol,
    build_huffman_table,
    dc_differentials,
    huffman_decode,
    huffman_encode,
    inverse_zigzag,
    magnitude_category,
    reconstruct_dc,
    run_length_symbols,
    zigzag_scan,
)
from .errors import (
    CodingError,
    CorruptStreamError,
    JpegError,
    MissingTableError,
    NotAJpegError,
    SerializationError,
    TruncationError,
    UnsupportedFeatureError,
)
from .pgm import PgmError, read_pgm, write_pgm
from .quantization import (
    QuantizationTable,
    default_luminance_table,
    dequantize,
    quantize,
    scale_table,
)
from .transform import dct_matrix, fast_fdct_8, fdct_1d, fdct_2d, idct_2d

__version__ = "0.1.0"

__all__ = [
    "EncodeSettings",
    "ImageBuffer",
    "compression_ratio",
    "decode_image",
    "encode_image",
    "psnr",
    "FrameHeader",
    "JpegDocument",
    "parse_stream",
    "write_stream",
    "EOB",
    "ZRL",
    "HuffmanTable",
    "IntermediateSymbol",
    "build_huffman_table",
    "dc_differentials",
    "huffman_decode",
    "huffman_encode",
    "inverse_zigzag",
    "magnitude_category",
    "reconstruct_dc",
    "run_length_symbols",
    "zigzag_scan",
    "CodingError",
    "CorruptStreamError",
    "JpegError",
    "MissingTableError",
    "NotAJpegError",
    "SerializationError",
    "TruncationError",
    "UnsupportedFeatureError",
    "PgmError",
    "read_pgm",
    "write_pgm",
    "QuantizationTable",
    "default_luminance_table",
    "dequantize",
    "quantize",
    "scale_table",
    "dct_matrix",
    "fast_fdct_8",
    "fdct_1d",
    "fdct_2d",
    "idct_2d",
]

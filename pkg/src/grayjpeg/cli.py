"""Command-line front end: encode/decode between PGM and JPEG, inspect
streams, and run quality sweeps that emit rate-distortion tables.

Data and tables go to stdout; diagnostics go to stderr.  Exit status is 0 on
success, 1 on operational failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import codec, pgm
from .container import parse_stream
from .errors import JpegError


def _quality(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"quality must be an integer, got {text!r}")
    if not 1 <= value <= 100:
        raise argparse.ArgumentTypeError(f"quality must be in 1..100, got {value}")
    return value


def _quality_list(text: str) -> list[int]:
    return [_quality(part) for part in text.split(",") if part]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grayjpeg",
        description="Baseline sequential JPEG codec for grayscale images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="encode a P5 PGM into a JPEG")
    enc.add_argument("input", help="input PGM path")
    enc.add_argument("output", help="output JPEG path")
    enc.add_argument("--quality", type=_quality, default=75, help="1..100 (default 75)")
    enc.add_argument(
        "--optimize-huffman",
        action="store_true",
        help="build Huffman tables from the image's own symbol statistics",
    )
    enc.set_defaults(func=cmd_encode)

    dec = sub.add_parser("decode", help="decode a JPEG into a P5 PGM")
    dec.add_argument("input", help="input JPEG path")
    dec.add_argument("output", help="output PGM path")
    dec.set_defaults(func=cmd_decode)

    ins = sub.add_parser("inspect", help="list marker segments and tables")
    ins.add_argument("input", help="input JPEG path")
    ins.set_defaults(func=cmd_inspect)

    sw = sub.add_parser("sweep", help="encode at several qualities, print a CSV table")
    sw.add_argument("input", help="input PGM path")
    sw.add_argument(
        "--qualities",
        type=_quality_list,
        default=[10, 30, 50, 70, 90],
        help="comma-separated list, e.g. 10,50,90",
    )
    sw.set_defaults(func=cmd_sweep)
    return parser


def _read_file(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _load_pgm(path: str) -> codec.ImageBuffer:
    return pgm.read_pgm(_read_file(path))


def cmd_encode(args) -> int:
    image = _load_pgm(args.input)
    settings = codec.EncodeSettings(quality=args.quality, optimize_huffman=args.optimize_huffman)
    start = time.perf_counter()
    stream = codec.encode_image(image, settings)
    elapsed = time.perf_counter() - start
    with open(args.output, "wb") as fh:
        fh.write(stream)
    ratio = codec.compression_ratio(image, stream)
    print(f"encoded {len(stream)} bytes (ratio {ratio:.2f}, {elapsed:.3f} s)")
    return 0


def cmd_decode(args) -> int:
    image = codec.decode_image(_read_file(args.input))
    with open(args.output, "wb") as fh:
        fh.write(pgm.write_pgm(image))
    print(f"decoded {image.width}x{image.height} image")
    return 0


def cmd_inspect(args) -> int:
    doc = parse_stream(_read_file(args.input))
    print("marker  offset  length")
    for seg in doc.segments:
        print(f"{seg.name:<7} {seg.offset:>6}  {seg.length:>6}")
    print(f"entropy data: {len(doc.entropy_payload)} bytes (unstuffed) at offset {doc.entropy_start}")
    print(f"dimensions: {doc.frame.width} x {doc.frame.height}")
    for tid in sorted(doc.qtables):
        table = doc.qtables[tid]
        print(f"quantization table {tid} (zig-zag): {' '.join(str(q) for q in table.quanta)}")
        print(f"quantization table {tid} (natural):")
        for row in table.natural():
            print("  " + " ".join(f"{q:>3}" for q in row))
    for label, tables in (("DC", doc.dc_tables), ("AC", doc.ac_tables)):
        for tid in sorted(tables):
            table = tables[tid]
            lengths = [l for l, n in enumerate(table.counts, start=1) if n]
            print(
                f"{label} Huffman table {tid}: {len(table.symbols)} symbols, "
                f"code lengths {lengths[0]}..{lengths[-1]}"
            )
    return 0


def cmd_sweep(args) -> int:
    image = _load_pgm(args.input)
    print("quality,bytes,ratio,psnr_db")
    for quality in args.qualities:
        stream = codec.encode_image(image, codec.EncodeSettings(quality=quality))
        decoded = codec.decode_image(stream)
        ratio = codec.compression_ratio(image, stream)
        quality_db = codec.psnr(decoded, image)
        print(f"{quality},{len(stream)},{ratio:.3f},{quality_db:.3f}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (JpegError, pgm.PgmError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    raise SystemExit(main())

"""Bit-exact JFIF container: marker-segment writer and tolerant parser.

The writer emits the minimal valid interchange layout for one grayscale scan:
SOI, APP0 (JFIF 1.01, 1:1 aspect, no thumbnail), DQT, SOF0, two DHT segments,
SOS, the byte-stuffed entropy payload, EOI.  The parser accepts anything
structurally conformant within the baseline sequential grayscale subset,
skips unknown APPn/COM segments, and reports everything else as a typed
error with a byte offset.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

from .entropy import HuffmanTable
from .errors import (
    CorruptStreamError,
    MissingTableError,
    NotAJpegError,
    SerializationError,
    TruncationError,
    UnsupportedFeatureError,
)
from .quantization import QuantizationTable

MARKER_SOI = 0xD8
MARKER_EOI = 0xD9
MARKER_SOS = 0xDA
MARKER_DQT = 0xDB
MARKER_DHT = 0xC4
MARKER_SOF0 = 0xC0
MARKER_APP0 = 0xE0
MARKER_COM = 0xFE
MARKER_DRI = 0xDD
MARKER_DNL = 0xDC
MARKER_DAC = 0xCC
MARKER_TEM = 0x01

MAX_DIMENSION = 65535  # JFIF limit per side
MAX_SEGMENT_PAYLOAD = 65533  # 16-bit length field includes its own 2 bytes

_SOF_NAMES = {
    0xC0: "baseline sequential", 0xC1: "extended sequential", 0xC2: "progressive",
    0xC3: "lossless", 0xC5: "differential sequential", 0xC6: "differential progressive",
    0xC7: "differential lossless", 0xC9: "extended sequential (arithmetic)",
    0xCA: "progressive (arithmetic)", 0xCB: "lossless (arithmetic)",
    0xCD: "differential sequential (arithmetic)",
    0xCE: "differential progressive (arithmetic)",
    0xCF: "differential lossless (arithmetic)",
}


def marker_name(marker: int) -> str:
    names = {
        MARKER_SOI: "SOI", MARKER_EOI: "EOI", MARKER_SOS: "SOS", MARKER_DQT: "DQT",
        MARKER_DHT: "DHT", MARKER_COM: "COM", MARKER_DRI: "DRI", MARKER_DNL: "DNL",
        MARKER_DAC: "DAC", MARKER_TEM: "TEM",
    }
    if marker in names:
        return names[marker]
    if 0xC0 <= marker <= 0xCF:
        return f"SOF{marker - 0xC0}"
    if 0xD0 <= marker <= 0xD7:
        return f"RST{marker - 0xD0}"
    if 0xE0 <= marker <= 0xEF:
        return f"APP{marker - 0xE0}"
    return f"0x{marker:02X}"


@dataclass(frozen=True)
class FrameHeader:
    """Baseline grayscale frame parameters (precision 8, one component)."""

    width: int
    height: int
    precision: int = 8
    component_id: int = 1
    quant_table_id: int = 0

    def __post_init__(self):
        if self.precision != 8:
            raise ValueError("baseline frames use 8-bit precision")
        if not (1 <= self.width <= MAX_DIMENSION and 1 <= self.height <= MAX_DIMENSION):
            raise ValueError(
                f"dimensions {self.width}x{self.height} outside 1..{MAX_DIMENSION}"
            )


@dataclass(frozen=True)
class SegmentInfo:
    """One parsed marker occurrence, for stream inspection."""

    name: str
    marker: int
    offset: int
    length: int  # marker bytes plus any length-prefixed payload


@dataclass
class JpegDocument:
    """Everything the decoder needs, pulled out of one JFIF stream."""

    frame: FrameHeader
    qtables: dict[int, QuantizationTable]
    dc_tables: dict[int, HuffmanTable]
    ac_tables: dict[int, HuffmanTable]
    dc_table_id: int
    ac_table_id: int
    entropy_payload: bytes  # unstuffed
    entropy_start: int  # offset of the first entropy byte in the stream
    segments: list[SegmentInfo] = field(default_factory=list)

    @property
    def quant_table(self) -> QuantizationTable:
        return self.qtables[self.frame.quant_table_id]

    @property
    def dc_table(self) -> HuffmanTable:
        return self.dc_tables[self.dc_table_id]

    @property
    def ac_table(self) -> HuffmanTable:
        return self.ac_tables[self.ac_table_id]


def stuff_bytes(payload: bytes) -> bytes:
    """Insert 0x00 after every 0xFF so no marker can appear in entropy data."""
    return payload.replace(b"\xff", b"\xff\x00")


def unstuff_bytes(stuffed: bytes) -> bytes:
    """Inverse of :func:`stuff_bytes`."""
    return stuffed.replace(b"\xff\x00", b"\xff")


def _segment(marker: int, payload: bytes) -> bytes:
    if len(payload) > MAX_SEGMENT_PAYLOAD:
        raise SerializationError(
            f"{marker_name(marker)} payload of {len(payload)} bytes exceeds "
            f"the {MAX_SEGMENT_PAYLOAD}-byte segment limit"
        )
    return struct.pack(">BBH", 0xFF, marker, len(payload) + 2) + payload


def _app0_jfif() -> bytes:
    # JFIF 1.01, unit-less 1:1 aspect ratio, no thumbnail.
    return _segment(MARKER_APP0, b"JFIF\x00" + struct.pack(">BBBHHBB", 1, 1, 0, 1, 1, 0, 0))


def write_stream(
    frame: FrameHeader,
    qtable: QuantizationTable,
    dc_table: HuffmanTable,
    ac_table: HuffmanTable,
    entropy_payload: bytes,
) -> bytes:
    """Serialize one grayscale scan into a complete JFIF byte stream."""
    out = bytearray()
    out += struct.pack(">BB", 0xFF, MARKER_SOI)
    out += _app0_jfif()
    out += _segment(MARKER_DQT, bytes([frame.quant_table_id]) + bytes(qtable.quanta))
    sof = struct.pack(
        ">BHHB", frame.precision, frame.height, frame.width, 1
    ) + struct.pack(">BBB", frame.component_id, 0x11, frame.quant_table_id)
    out += _segment(MARKER_SOF0, sof)
    out += _segment(MARKER_DHT, b"\x00" + bytes(dc_table.counts) + bytes(dc_table.symbols))
    out += _segment(MARKER_DHT, b"\x10" + bytes(ac_table.counts) + bytes(ac_table.symbols))
    out += _segment(MARKER_SOS, struct.pack(">BBBBBB", 1, frame.component_id, 0x00, 0, 63, 0))
    out += stuff_bytes(entropy_payload)
    out += struct.pack(">BB", 0xFF, MARKER_EOI)
    return bytes(out)


class _StreamReader:
    """Bounds-checked byte cursor; every overrun is a TruncationError."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def remaining(self) -> int:
        return len(self.data) - self.pos

    def take(self, n: int, what: str) -> bytes:
        if self.remaining() < n:
            raise TruncationError(f"stream ends inside {what}", offset=self.pos)
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u8(self, what: str) -> int:
        return self.take(1, what)[0]

    def u16(self, what: str) -> int:
        chunk = self.take(2, what)
        return (chunk[0] << 8) | chunk[1]


def _parse_dqt(payload: bytes, offset: int, qtables: dict[int, QuantizationTable]):
    pos = 0
    while pos < len(payload):
        pq_tq = payload[pos]
        pq, tq = pq_tq >> 4, pq_tq & 0x0F
        if pq == 1:
            raise UnsupportedFeatureError(
                "16-bit quantization tables are not baseline", offset=offset + pos
            )
        if pq != 0 or tq > 3:
            raise CorruptStreamError(
                f"bad DQT precision/id byte {pq_tq:#04x}", offset=offset + pos
            )
        if len(payload) - pos - 1 < 64:
            raise TruncationError("DQT table shorter than 64 quanta", offset=offset + pos)
        quanta = payload[pos + 1 : pos + 65]
        try:
            qtables[tq] = QuantizationTable(tuple(quanta))
        except ValueError as exc:
            raise CorruptStreamError(f"invalid DQT: {exc}", offset=offset + pos) from None
        pos += 65


def _parse_dht(payload: bytes, offset: int, dc: dict, ac: dict):
    pos = 0
    while pos < len(payload):
        tc_th = payload[pos]
        tc, th = tc_th >> 4, tc_th & 0x0F
        if tc > 1 or th > 3:
            raise CorruptStreamError(
                f"bad DHT class/id byte {tc_th:#04x}", offset=offset + pos
            )
        if len(payload) - pos - 1 < 16:
            raise TruncationError("DHT counts truncated", offset=offset + pos)
        counts = tuple(payload[pos + 1 : pos + 17])
        n = sum(counts)
        if len(payload) - pos - 17 < n:
            raise TruncationError("DHT symbols truncated", offset=offset + pos)
        symbols = tuple(payload[pos + 17 : pos + 17 + n])
        try:
            table = HuffmanTable(counts, symbols)
        except ValueError as exc:
            raise CorruptStreamError(f"invalid DHT: {exc}", offset=offset + pos) from None
        (dc if tc == 0 else ac)[th] = table
        pos += 17 + n


def _parse_sof0(payload: bytes, offset: int) -> FrameHeader:
    if len(payload) < 9:
        raise TruncationError("SOF0 payload too short", offset=offset)
    precision, height, width, ncomp = struct.unpack(">BHHB", payload[:6])
    if precision != 8:
        raise UnsupportedFeatureError(
            f"{precision}-bit sample precision is not baseline", offset=offset
        )
    if ncomp != 1:
        raise UnsupportedFeatureError(
            f"{ncomp}-component (color) images are not supported", offset=offset
        )
    if width == 0 or height == 0:
        raise CorruptStreamError("frame with zero dimension", offset=offset)
    comp_id, _sampling, tq = payload[6], payload[7], payload[8]
    if tq > 3:
        raise CorruptStreamError(f"bad quantization table id {tq}", offset=offset)
    return FrameHeader(width=width, height=height, component_id=comp_id, quant_table_id=tq)


def _scan_entropy_data(reader: _StreamReader) -> tuple[bytes, int]:
    """Collect and unstuff entropy bytes; stop before the next real marker."""
    data = reader.data
    start = reader.pos
    out = bytearray()
    i = start
    while True:
        if i >= len(data):
            raise TruncationError("entropy data ends without a terminating marker", offset=i)
        b = data[i]
        if b != 0xFF:
            out.append(b)
            i += 1
            continue
        if i + 1 >= len(data):
            raise TruncationError("stream ends on a bare 0xFF", offset=i)
        nxt = data[i + 1]
        if nxt == 0x00:  # stuffed literal 0xFF
            out.append(0xFF)
            i += 2
        elif nxt == 0xFF:  # fill byte
            i += 1
        elif 0xD0 <= nxt <= 0xD7:
            raise UnsupportedFeatureError(
                "restart markers are not supported", offset=i
            )
        else:
            reader.pos = i
            return bytes(out), start


def parse_stream(data: bytes) -> JpegDocument:
    """Parse a JFIF byte stream into frame, tables, and unstuffed entropy data.

    Unknown APPn and COM segments are recorded and skipped.  Every failure
    mode raises a typed :class:`~grayjpeg.errors.JpegError`; arbitrary input
    never crashes the parser.
    """
    if len(data) < 2 or data[0] != 0xFF or data[1] != MARKER_SOI:
        raise NotAJpegError("not a JPEG: no SOI marker at start of stream", offset=0)

    reader = _StreamReader(data)
    segments = [SegmentInfo("SOI", MARKER_SOI, 0, 2)]
    reader.pos = 2

    frame: FrameHeader | None = None
    qtables: dict[int, QuantizationTable] = {}
    dc_tables: dict[int, HuffmanTable] = {}
    ac_tables: dict[int, HuffmanTable] = {}
    scan: tuple[int, int, bytes, int] | None = None  # (dc id, ac id, payload, start)

    while True:
        marker_offset = reader.pos
        b = reader.u8("marker prefix")
        if b != 0xFF:
            raise CorruptStreamError(
                f"expected marker, found byte {b:#04x}", offset=marker_offset
            )
        marker = reader.u8("marker code")
        while marker == 0xFF:  # fill bytes before a marker are legal
            marker = reader.u8("marker code")
        if marker == 0x00:
            raise CorruptStreamError("stuffed byte outside entropy data", offset=marker_offset)
        code_pos = reader.pos - 1

        if marker == MARKER_EOI:
            segments.append(SegmentInfo("EOI", marker, marker_offset, reader.pos - marker_offset))
            break
        if marker == MARKER_SOI:
            raise CorruptStreamError("unexpected second SOI", offset=marker_offset)
        if marker == MARKER_TEM or 0xD0 <= marker <= 0xD7:
            raise CorruptStreamError(
                f"unexpected standalone marker {marker_name(marker)}", offset=marker_offset
            )

        # Everything else carries a length-prefixed payload.
        length = reader.u16(f"{marker_name(marker)} length field")
        if length < 2:
            raise CorruptStreamError(
                f"segment length {length} smaller than its own field", offset=marker_offset
            )
        payload = reader.take(length - 2, f"{marker_name(marker)} payload")
        payload_offset = code_pos + 3
        segments.append(
            SegmentInfo(marker_name(marker), marker, marker_offset, reader.pos - marker_offset)
        )

        if 0xE0 <= marker <= 0xEF or marker == MARKER_COM or marker == MARKER_DNL:
            continue
        if marker == MARKER_DQT:
            _parse_dqt(payload, payload_offset, qtables)
        elif marker == MARKER_DHT:
            _parse_dht(payload, payload_offset, dc_tables, ac_tables)
        elif marker == MARKER_DAC:
            raise UnsupportedFeatureError(
                "arithmetic coding is not supported", offset=marker_offset
            )
        elif marker == MARKER_DRI:
            if len(payload) < 2 or struct.unpack(">H", payload[:2])[0] != 0:
                raise UnsupportedFeatureError(
                    "restart intervals are not supported", offset=marker_offset
                )
        elif marker == MARKER_SOF0:
            if frame is not None:
                raise CorruptStreamError("duplicate frame header", offset=marker_offset)
            frame = _parse_sof0(payload, payload_offset)
        elif marker in _SOF_NAMES:
            raise UnsupportedFeatureError(
                f"{_SOF_NAMES[marker]} mode ({marker_name(marker)}) is not supported",
                offset=marker_offset,
            )
        elif marker == MARKER_SOS:
            if frame is None:
                raise CorruptStreamError("scan before frame header", offset=marker_offset)
            if scan is not None:
                raise CorruptStreamError("multiple scans in one frame", offset=marker_offset)
            if len(payload) < 6:
                raise TruncationError("SOS payload too short", offset=marker_offset)
            if payload[0] != 1:
                raise UnsupportedFeatureError(
                    "multi-component scans are not supported", offset=marker_offset
                )
            if payload[1] != frame.component_id:
                raise CorruptStreamError(
                    f"scan selects unknown component {payload[1]}", offset=payload_offset
                )
            dc_id, ac_id = payload[2] >> 4, payload[2] & 0x0F
            ss, se, ahal = payload[3], payload[4], payload[5]
            if (ss, se, ahal) != (0, 63, 0):
                raise CorruptStreamError(
                    "non-baseline spectral selection in SOS", offset=payload_offset
                )
            if frame.quant_table_id not in qtables:
                raise MissingTableError(
                    f"quantization table {frame.quant_table_id} never defined",
                    offset=marker_offset,
                )
            if dc_id not in dc_tables:
                raise MissingTableError(
                    f"DC Huffman table {dc_id} never defined", offset=marker_offset
                )
            if ac_id not in ac_tables:
                raise MissingTableError(
                    f"AC Huffman table {ac_id} never defined", offset=marker_offset
                )
            payload_bytes, start = _scan_entropy_data(reader)
            scan = (dc_id, ac_id, payload_bytes, start)
        else:
            # Reserved/unknown segment with a valid length: skip liberally.
            continue

    if scan is None:
        raise CorruptStreamError("stream contains no scan data", offset=len(data))
    dc_id, ac_id, payload_bytes, start = scan
    return JpegDocument(
        frame=frame,
        qtables=qtables,
        dc_tables=dc_tables,
        ac_tables=ac_tables,
        dc_table_id=dc_id,
        ac_table_id=ac_id,
        entropy_payload=payload_bytes,
        entropy_start=start,
        segments=segments,
    )

"""Container round trips, byte stuffing, and parser robustness."""

import struct

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grayjpeg.container import (
    FrameHeader,
    _segment,
    marker_name,
    parse_stream,
    stuff_bytes,
    unstuff_bytes,
    write_stream,
)
from grayjpeg.entropy import STANDARD_AC_LUMINANCE, STANDARD_DC_LUMINANCE
from grayjpeg.errors import (
    CorruptStreamError,
    JpegError,
    MissingTableError,
    NotAJpegError,
    SerializationError,
    TruncationError,
    UnsupportedFeatureError,
)
from grayjpeg.quantization import default_luminance_table


def minimal_stream(payload: bytes = b"\x2b", width: int = 8, height: int = 8) -> bytes:
    return write_stream(
        FrameHeader(width=width, height=height),
        default_luminance_table(),
        STANDARD_DC_LUMINANCE,
        STANDARD_AC_LUMINANCE,
        payload,
    )


class TestStuffing:
    def test_ff_byte_is_stuffed(self):
        assert stuff_bytes(b"\x12\xff\x34") == b"\x12\xff\x00\x34"

    @given(st.binary(max_size=300))
    def test_round_trip(self, payload):
        assert unstuff_bytes(stuff_bytes(payload)) == payload

    def test_run_of_ff(self):
        payload = b"\xff" * 5
        assert stuff_bytes(payload) == b"\xff\x00" * 5
        assert unstuff_bytes(stuff_bytes(payload)) == payload

    @given(st.binary(max_size=300))
    def test_no_marker_aliasing(self, payload):
        stuffed = stuff_bytes(payload)
        assert b"\xff\xd9" not in stuffed
        assert b"\xff\xda" not in stuffed


class TestWriteStream:
    def test_starts_with_soi(self):
        assert minimal_stream()[:2] == b"\xff\xd8"

    def test_ends_with_eoi(self):
        assert minimal_stream()[-2:] == b"\xff\xd9"

    def test_segment_order(self):
        doc = parse_stream(minimal_stream())
        names = [seg.name for seg in doc.segments]
        assert names == ["SOI", "APP0", "DQT", "SOF0", "DHT", "DHT", "SOS", "EOI"]

    def test_payload_ff_is_stuffed_in_stream(self):
        stream = minimal_stream(payload=b"\xff")
        assert b"\xff\x00" in stream

    def test_oversized_segment_rejected(self):
        with pytest.raises(SerializationError):
            _segment(0xE5, b"\x00" * 65534)

    def test_length_field_accounts_for_itself(self):
        seg = _segment(0xE0, b"abc")
        assert struct.unpack(">H", seg[2:4])[0] == 5


class TestParseRoundTrip:
    def test_reproduces_tables_dimensions_payload(self):
        table = default_luminance_table()
        payload = bytes(range(256)) * 3
        stream = write_stream(
            FrameHeader(width=300, height=200),
            table,
            STANDARD_DC_LUMINANCE,
            STANDARD_AC_LUMINANCE,
            payload,
        )
        doc = parse_stream(stream)
        assert (doc.frame.width, doc.frame.height) == (300, 200)
        assert doc.quant_table.quanta == table.quanta
        assert doc.dc_table.counts == STANDARD_DC_LUMINANCE.counts
        assert doc.dc_table.symbols == STANDARD_DC_LUMINANCE.symbols
        assert doc.ac_table.counts == STANDARD_AC_LUMINANCE.counts
        assert doc.ac_table.symbols == STANDARD_AC_LUMINANCE.symbols
        assert doc.entropy_payload == payload

    def test_com_segment_is_skipped(self):
        stream = minimal_stream()
        com = b"\xff\xfe" + struct.pack(">H", 2 + 11) + b"hello there"
        patched = stream[:2] + com + stream[2:]
        doc = parse_stream(patched)
        assert "COM" in [seg.name for seg in doc.segments]
        assert doc.entropy_payload == parse_stream(stream).entropy_payload

    def test_unknown_app_segment_is_skipped(self):
        stream = minimal_stream()
        app7 = b"\xff\xe7" + struct.pack(">H", 6) + b"meta"
        patched = stream[:2] + app7 + stream[2:]
        assert parse_stream(patched).frame.width == 8

    def test_multi_table_dqt_segment(self):
        # One DQT segment carrying two tables; the writer never emits this
        # form but the parser accepts it.
        table = default_luminance_table()
        stream = minimal_stream()
        two_tables = b"\x00" + bytes(table.quanta) + b"\x01" + bytes(table.quanta)
        dqt = b"\xff\xdb" + struct.pack(">H", 2 + len(two_tables)) + two_tables
        patched = stream[:2] + dqt + stream[2:]
        doc = parse_stream(patched)
        assert doc.qtables[1].quanta == table.quanta


class TestParseErrors:
    def test_not_a_jpeg(self):
        with pytest.raises(NotAJpegError):
            parse_stream(b"\x00\x01")

    def test_empty_stream(self):
        with pytest.raises(NotAJpegError):
            parse_stream(b"")

    def test_progressive_frame_named(self):
        stream = bytearray(minimal_stream())
        sof = stream.find(b"\xff\xc0")
        stream[sof + 1] = 0xC2
        with pytest.raises(UnsupportedFeatureError, match="progressive"):
            parse_stream(bytes(stream))

    def test_missing_huffman_table(self):
        table = default_luminance_table()
        stream = write_stream(
            FrameHeader(width=8, height=8), table,
            STANDARD_DC_LUMINANCE, STANDARD_AC_LUMINANCE, b"\x00",
        )
        # Excise both DHT segments wholesale.
        out = bytearray()
        pos = 0
        while pos < len(stream):
            if stream[pos] == 0xFF and pos + 1 < len(stream) and stream[pos + 1] == 0xC4:
                length = struct.unpack(">H", stream[pos + 2 : pos + 4])[0]
                pos += 2 + length
                continue
            out.append(stream[pos])
            pos += 1
        with pytest.raises(MissingTableError):
            parse_stream(bytes(out))

    def test_truncated_mid_segment(self):
        stream = minimal_stream()
        with pytest.raises(TruncationError):
            parse_stream(stream[:20])

    def test_length_field_overruns_stream(self):
        bad = b"\xff\xd8\xff\xe0" + struct.pack(">H", 60000) + b"JFIF"
        with pytest.raises(TruncationError):
            parse_stream(bad)

    def test_missing_eoi(self):
        stream = minimal_stream()
        with pytest.raises(TruncationError):
            parse_stream(stream[:-2])

    def test_scan_before_tables(self):
        stream = minimal_stream()
        sos = stream.find(b"\xff\xda")
        dqt = stream.find(b"\xff\xdb")
        patched = stream[:dqt] + stream[sos:]
        with pytest.raises((MissingTableError, CorruptStreamError)):
            parse_stream(patched)

    def test_restart_interval_unsupported(self):
        stream = minimal_stream()
        dri = b"\xff\xdd" + struct.pack(">HH", 4, 100)
        patched = stream[:2] + dri + stream[2:]
        with pytest.raises(UnsupportedFeatureError, match="restart"):
            parse_stream(patched)

    def test_garbage_after_soi(self):
        with pytest.raises(JpegError):
            parse_stream(b"\xff\xd8\x12\x34\x56")


class TestMarkerNames:
    def test_known_names(self):
        assert marker_name(0xD8) == "SOI"
        assert marker_name(0xC2) == "SOF2"
        assert marker_name(0xE3) == "APP3"
        assert marker_name(0xD5) == "RST5"


class TestFrameHeader:
    @pytest.mark.parametrize("w,h", [(0, 8), (8, 0), (65536, 8), (8, 65536)])
    def test_bad_dimensions_rejected(self, w, h):
        with pytest.raises(ValueError):
            FrameHeader(width=w, height=h)

    def test_limits_accepted(self):
        FrameHeader(width=65535, height=65535)
        FrameHeader(width=1, height=1)


class TestFuzzSafety:
    def test_random_and_mutated_streams_yield_typed_errors(self):
        rng = np.random.default_rng(0xF0220)
        base = bytearray(minimal_stream(payload=bytes(rng.integers(0, 256, 400, dtype=np.uint8))))
        outcomes = {"ok": 0, "error": 0}
        for trial in range(2000):
            if trial % 2 == 0:
                data = bytes(rng.integers(0, 256, rng.integers(0, 600), dtype=np.uint8))
            else:
                data = bytearray(base)
                for _ in range(rng.integers(1, 8)):
                    op = rng.integers(0, 3)
                    if op == 0 and data:
                        data[rng.integers(0, len(data))] = rng.integers(0, 256)
                    elif op == 1 and len(data) > 4:
                        cut = rng.integers(1, len(data))
                        data = data[:cut]
                    else:
                        pos = rng.integers(0, len(data) + 1)
                        data = data[:pos] + bytes(rng.integers(0, 256, 3, dtype=np.uint8)) + data[pos:]
                data = bytes(data)
            try:
                parse_stream(data)
                outcomes["ok"] += 1
            except JpegError:
                outcomes["error"] += 1
        assert sum(outcomes.values()) == 2000

"""Command-line behavior: exit codes, output channels, file formats."""

import numpy as np
import pytest

from grayjpeg import EncodeSettings, ImageBuffer, decode_image, encode_image
from grayjpeg.cli import main
from grayjpeg.pgm import PgmError, read_pgm, write_pgm
from grayjpeg.quantization import default_luminance_table

from conftest import random_image, synthetic_image


@pytest.fixture
def pgm_file(tmp_path):
    img = synthetic_image("blobs", 48, 40)
    path = tmp_path / "input.pgm"
    path.write_bytes(write_pgm(img))
    return path, img


class TestPgmFormat:
    def test_round_trip_bit_exact(self):
        rng = np.random.default_rng(12)
        img = random_image(rng, 37, 23)
        assert read_pgm(write_pgm(img)) == img

    def test_header_comments(self):
        data = b"P5 # binary pgm\n# another comment\n4 2\n255\n" + bytes(8)
        img = read_pgm(data)
        assert (img.width, img.height) == (4, 2)

    def test_ascii_p2_rejected_with_clear_message(self):
        with pytest.raises(PgmError, match="P2"):
            read_pgm(b"P2\n2 2\n255\n0 1 2 3")

    def test_wrong_magic_rejected(self):
        with pytest.raises(PgmError):
            read_pgm(b"P6\n2 2\n255\n" + bytes(12))

    def test_nonstandard_maxval_rejected(self):
        with pytest.raises(PgmError, match="maxval"):
            read_pgm(b"P5\n2 2\n65535\n" + bytes(8))

    def test_short_payload_rejected(self):
        with pytest.raises(PgmError):
            read_pgm(b"P5\n4 4\n255\n" + bytes(10))


class TestEncodeCommand:
    def test_writes_jpeg_and_reports(self, pgm_file, tmp_path, capsys):
        path, img = pgm_file
        out = tmp_path / "out.jpg"
        assert main(["encode", str(path), str(out), "--quality", "75"]) == 0
        data = out.read_bytes()
        assert data[:2] == b"\xff\xd8"
        captured = capsys.readouterr()
        assert f"{len(data)} bytes" in captured.out
        assert "ratio" in captured.out

    def test_quality_out_of_range_is_usage_error(self, pgm_file, tmp_path, capsys):
        path, _ = pgm_file
        out = tmp_path / "out.jpg"
        assert main(["encode", str(path), str(out), "--quality", "101"]) == 2
        assert not out.exists()

    def test_deterministic_outputs(self, pgm_file, tmp_path):
        path, _ = pgm_file
        out1, out2 = tmp_path / "a.jpg", tmp_path / "b.jpg"
        assert main(["encode", str(path), str(out1)]) == 0
        assert main(["encode", str(path), str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_optimize_flag_shrinks_output(self, pgm_file, tmp_path):
        path, _ = pgm_file
        plain, opt = tmp_path / "plain.jpg", tmp_path / "opt.jpg"
        main(["encode", str(path), str(plain)])
        main(["encode", str(path), str(opt), "--optimize-huffman"])
        assert len(opt.read_bytes()) <= len(plain.read_bytes())

    def test_missing_input_fails(self, tmp_path, capsys):
        assert main(["encode", str(tmp_path / "none.pgm"), str(tmp_path / "o.jpg")]) == 1
        assert capsys.readouterr().err != ""

    def test_malformed_pgm_fails_with_diagnostic(self, tmp_path, capsys):
        bad = tmp_path / "bad.pgm"
        bad.write_bytes(b"P5\n10 10\n255\nshort")
        assert main(["encode", str(bad), str(tmp_path / "o.jpg")]) == 1
        assert "error" in capsys.readouterr().err


class TestDecodeCommand:
    def test_round_trip_dimensions(self, pgm_file, tmp_path):
        path, img = pgm_file
        jpg, back = tmp_path / "x.jpg", tmp_path / "back.pgm"
        main(["encode", str(path), str(jpg), "--quality", "90"])
        assert main(["decode", str(jpg), str(back)]) == 0
        decoded = read_pgm(back.read_bytes())
        assert (decoded.width, decoded.height) == (img.width, img.height)

    def test_progressive_named_in_error(self, pgm_file, tmp_path, capsys):
        path, img = pgm_file
        jpg = tmp_path / "prog.jpg"
        stream = bytearray(encode_image(img, EncodeSettings(quality=80)))
        stream[stream.find(b"\xff\xc0") + 1] = 0xC2
        jpg.write_bytes(bytes(stream))
        assert main(["decode", str(jpg), str(tmp_path / "o.pgm")]) == 1
        assert "progressive" in capsys.readouterr().err

    def test_corrupt_stream_reports_offset(self, pgm_file, tmp_path, capsys):
        path, img = pgm_file
        jpg = tmp_path / "corrupt.jpg"
        stream = bytearray(encode_image(img, EncodeSettings(quality=80)))
        del stream[len(stream) // 2 :]
        jpg.write_bytes(bytes(stream))
        assert main(["decode", str(jpg), str(tmp_path / "o.pgm")]) == 1
        assert "offset" in capsys.readouterr().err


class TestInspectCommand:
    def test_lists_markers_in_writer_order(self, pgm_file, tmp_path, capsys):
        path, _ = pgm_file
        jpg = tmp_path / "x.jpg"
        main(["encode", str(path), str(jpg)])
        assert main(["inspect", str(jpg)]) == 0
        out = capsys.readouterr().out
        positions = [out.find(name) for name in ("SOI", "APP0", "DQT", "SOF0", "DHT", "SOS", "EOI")]
        assert all(p >= 0 for p in positions)
        assert positions == sorted(positions)

    def test_prints_dc_quantum_of_default_table(self, pgm_file, tmp_path, capsys):
        path, _ = pgm_file
        jpg = tmp_path / "x.jpg"
        main(["encode", str(path), str(jpg), "--quality", "50"])
        main(["inspect", str(jpg)])
        out = capsys.readouterr().out
        zigzag_line = next(l for l in out.splitlines() if "(zig-zag)" in l)
        dc_quantum = int(zigzag_line.split(":")[1].split()[0])
        assert dc_quantum == default_luminance_table().quanta[0]

    def test_non_jpeg_diagnostic(self, tmp_path, capsys):
        bad = tmp_path / "bad.bin"
        bad.write_bytes(b"\x00\x01\x02")
        assert main(["inspect", str(bad)]) == 1
        assert "not a JPEG" in capsys.readouterr().err


class TestSweepCommand:
    def test_three_qualities_three_rows(self, pgm_file, capsys):
        path, _ = pgm_file
        assert main(["sweep", str(path), "--qualities", "10,50,90"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "quality,bytes,ratio,psnr_db"
        assert len(lines) == 4
        rows = [line.split(",") for line in lines[1:]]
        psnrs = [float(r[3]) for r in rows]
        ratios = [float(r[2]) for r in rows]
        assert all(a <= b for a, b in zip(psnrs, psnrs[1:]))
        assert all(a >= b for a, b in zip(ratios, ratios[1:]))

    def test_single_quality_single_row(self, pgm_file, capsys):
        path, _ = pgm_file
        assert main(["sweep", str(path), "--qualities", "42"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2

    def test_bad_quality_list_is_usage_error(self, pgm_file):
        path, _ = pgm_file
        assert main(["sweep", str(path), "--qualities", "10,200"]) == 2


def test_unknown_command_is_usage_error():
    assert main(["frobnicate"]) == 2

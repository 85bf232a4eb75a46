"""Lossless coding layer: zig-zag ordering, DC prediction, run-length symbols,
and canonical Huffman coding of quantized coefficient blocks.

The wire conventions follow the baseline interchange format: MSB-first bit
packing, amplitude extra-bits with the (value - 1) low-bits rule for negative
values, EOB/ZRL run-length symbols, and Huffman tables defined by 16 code
length counts plus a symbol list.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import CodingError, CorruptStreamError, TruncationError

# Natural (row-major) index of each position along the zig-zag path: start at
# DC, move right, then walk anti-diagonals down-left / up-right.
ZIGZAG_INDICES = (
    0, 1, 8, 16, 9, 2, 3, 10,
    17, 24, 32, 25, 18, 11, 4, 5,
    12, 19, 26, 33, 40, 48, 41, 34,
    27, 20, 13, 6, 7, 14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36,
    29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46,
    53, 60, 61, 54, 47, 55, 62, 63,
)

MAX_CODE_LENGTH = 16


def zigzag_scan(block: np.ndarray) -> np.ndarray:
    """Reorder an 8x8 block into the 64-element zig-zag sequence (DC first)."""
    flat = np.asarray(block).reshape(64)
    return flat[list(ZIGZAG_INDICES)]


def inverse_zigzag(vector: Sequence[int]) -> np.ndarray:
    """Exact inverse of :func:`zigzag_scan`."""
    v = np.asarray(vector)
    if v.shape != (64,):
        raise ValueError(f"zig-zag vector must have 64 entries, got shape {v.shape}")
    block = np.zeros(64, dtype=v.dtype)
    block[list(ZIGZAG_INDICES)] = v
    return block.reshape(8, 8)


def dc_differentials(dc_values: Sequence[int]) -> list[int]:
    """Difference each DC term from the previous block's (predictor starts at 0)."""
    if len(dc_values) == 0:
        raise ValueError("dc_differentials requires a nonempty sequence")
    out = [int(dc_values[0])]
    for prev, cur in zip(dc_values, dc_values[1:]):
        out.append(int(cur) - int(prev))
    return out


def reconstruct_dc(differentials: Sequence[int]) -> list[int]:
    """Inverse of :func:`dc_differentials` (running prefix sum)."""
    if len(differentials) == 0:
        raise ValueError("reconstruct_dc requires a nonempty sequence")
    out = []
    acc = 0
    for d in differentials:
        acc += int(d)
        out.append(acc)
    return out


def magnitude_category(value: int) -> int:
    """Bit-length class of an amplitude: 0 for 0, else ceil(log2(|v|+1))."""
    mag = abs(int(value))
    if mag > 32767:
        raise ValueError(f"amplitude {value} outside +-32767")
    return mag.bit_length()


class IntermediateSymbol(NamedTuple):
    """Run-length symbol: ``run`` zero AC levels followed by ``amplitude``.

    ``size`` is the amplitude's magnitude category.  EOB (0, 0) and ZRL
    (15, 0) carry no amplitude.
    """

    run: int
    size: int
    amplitude: int | None = None


EOB = IntermediateSymbol(0, 0)
ZRL = IntermediateSymbol(15, 0)


def run_length_symbols(ac_levels: Sequence[int]) -> list[IntermediateSymbol]:
    """Convert 63 AC levels (zig-zag order) into the intermediate symbol sequence.

    Each nonzero level yields (run, size, amplitude); every full run of 16
    zeros before it yields a ZRL.  A trailing all-zero suffix collapses to a
    single EOB; if the final level is nonzero no EOB is emitted.
    """
    if len(ac_levels) != 63:
        raise ValueError(f"expected 63 AC levels, got {len(ac_levels)}")
    symbols: list[IntermediateSymbol] = []
    run = 0
    for level in ac_levels:
        level = int(level)
        if level == 0:
            run += 1
            continue
        while run >= 16:
            symbols.append(ZRL)
            run -= 16
        symbols.append(IntermediateSymbol(run, magnitude_category(level), level))
        run = 0
    if run > 0:
        symbols.append(EOB)
    return symbols


def expand_run_length(symbols: Iterable[IntermediateSymbol]) -> list[int]:
    """Expand an intermediate symbol sequence back into 63 AC levels."""
    levels = [0] * 63
    k = 0
    for sym in symbols:
        if sym.size == 0:
            if sym.run == 0:  # EOB
                break
            if sym.run != 15:
                raise ValueError(f"invalid zero-size symbol {sym}")
            k += 16
        else:
            k += sym.run
            if k >= 63:
                raise ValueError("AC symbols overflow the block")
            levels[k] = int(sym.amplitude)
            k += 1
    return levels


@dataclass(frozen=True)
class HuffmanTable:
    """Canonical prefix-free code: codes-per-length counts plus symbol list.

    ``counts[i]`` is the number of codes of length ``i + 1``; ``symbols``
    lists the coded byte values in order of increasing code length.  This is
    exactly the DHT wire representation.
    """

    counts: tuple[int, ...]
    symbols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(n) for n in self.counts))
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        if len(self.counts) != MAX_CODE_LENGTH:
            raise ValueError(f"need {MAX_CODE_LENGTH} length counts, got {len(self.counts)}")
        if any(n < 0 for n in self.counts):
            raise ValueError("length counts must be nonnegative")
        if sum(self.counts) != len(self.symbols):
            raise ValueError("length counts do not match number of symbols")
        if not 1 <= len(self.symbols) <= 256:
            raise ValueError(f"table must hold 1..256 symbols, has {len(self.symbols)}")
        if any(not 0 <= s <= 255 for s in self.symbols):
            raise ValueError("symbols must be byte values")
        kraft = sum(n << (MAX_CODE_LENGTH - l) for l, n in enumerate(self.counts, start=1))
        if kraft > 1 << MAX_CODE_LENGTH:
            raise ValueError("code lengths violate the Kraft inequality")
        if any(l == 16 and c == 0xFFFF for c, l in self.code_map().values()):
            raise ValueError("the all-ones 16-bit code is reserved")

    def code_map(self) -> dict[int, tuple[int, int]]:
        """Map each symbol to its canonical ``(code, length)``."""
        codes: dict[int, tuple[int, int]] = {}
        code = 0
        k = 0
        for length in range(1, MAX_CODE_LENGTH + 1):
            for _ in range(self.counts[length - 1]):
                codes[self.symbols[k]] = (code, length)
                code += 1
                k += 1
            code <<= 1
        return codes

    def decode_tables(self) -> tuple[list[int], list[int], list[int]]:
        """Per-length (mincode, maxcode, valptr) arrays for sequential decoding."""
        mincode = [0] * (MAX_CODE_LENGTH + 1)
        maxcode = [-1] * (MAX_CODE_LENGTH + 1)
        valptr = [0] * (MAX_CODE_LENGTH + 1)
        code = 0
        k = 0
        for length in range(1, MAX_CODE_LENGTH + 1):
            n = self.counts[length - 1]
            if n > 0:
                valptr[length] = k
                mincode[length] = code
                code += n
                k += n
                maxcode[length] = code - 1
            code <<= 1
        return mincode, maxcode, valptr


def build_huffman_table(
    symbol_frequencies: dict[int, int], *, interoperable: bool = False
) -> HuffmanTable:
    """Build an optimal canonical Huffman table from symbol counts.

    Code lengths are limited to 16 by the standard pair-lifting adjustment,
    and one symbol is demoted a level if the code would otherwise occupy the
    reserved all-ones 16-bit word.  More frequent symbols never receive
    longer codes than less frequent ones.

    With ``interoperable=True`` the deepest level always keeps one unused
    slot (the code is never complete), so no codeword of *any* length is all
    ones.  Strict decoders (libjpeg and kin) reject tables that use an
    all-ones codeword; the standard published tables leave the slot unused
    for the same reason.  Costs at most one extra bit on one rare symbol.
    """
    freqs = {int(s): int(c) for s, c in symbol_frequencies.items() if c > 0}
    if not freqs:
        raise ValueError("no symbols with nonzero frequency")
    if any(not 0 <= s <= 255 for s in freqs):
        raise ValueError("symbols must be byte values")

    lengths = _huffman_code_lengths(freqs)
    bits = [0] * (max(max(lengths.values()), MAX_CODE_LENGTH) + 1)
    for l in lengths.values():
        bits[l] += 1

    # Lift pairs of over-long codes up until nothing exceeds 16.
    for i in range(len(bits) - 1, MAX_CODE_LENGTH, -1):
        while bits[i] > 0:
            j = i - 2
            while bits[j] == 0:
                j -= 1
            bits[i] -= 2
            bits[i - 1] += 1
            bits[j + 1] += 2
            bits[j] -= 1
    bits = bits[: MAX_CODE_LENGTH + 1]

    kraft = sum(n << (MAX_CODE_LENGTH - l) for l, n in enumerate(bits[1:], start=1))
    if kraft == 1 << MAX_CODE_LENGTH and (interoperable or bits[MAX_CODE_LENGTH] > 0):
        j = MAX_CODE_LENGTH - 1
        while bits[j] == 0:
            j -= 1
        bits[j] -= 1
        bits[j + 1] += 1

    # Shortest codes go to the most frequent symbols (ties: lower symbol value).
    ordered = sorted(freqs, key=lambda s: (-freqs[s], s))
    counts = tuple(bits[1:])
    return HuffmanTable(counts, tuple(ordered))


def _huffman_code_lengths(freqs: dict[int, int]) -> dict[int, int]:
    """Unrestricted optimal code lengths (single symbol is padded to 1 bit)."""
    if len(freqs) == 1:
        return {next(iter(freqs)): 1}
    heap = [(count, sym, {sym: 0}) for sym, count in freqs.items()]
    heapq.heapify(heap)
    while len(heap) > 1:
        c1, t1, d1 = heapq.heappop(heap)
        c2, t2, d2 = heapq.heappop(heap)
        merged = {s: d + 1 for s, d in d1.items()}
        merged.update({s: d + 1 for s, d in d2.items()})
        heapq.heappush(heap, (c1 + c2, min(t1, t2), merged))
    return heap[0][2]


# Standard recommended luminance tables (DHT fixture form: 16 counts + symbols).
STANDARD_DC_LUMINANCE = HuffmanTable(
    counts=(0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0),
    symbols=tuple(range(12)),
)

STANDARD_AC_LUMINANCE = HuffmanTable(
    counts=(0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 125),
    symbols=(
        0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12,
        0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07,
        0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xA1, 0x08,
        0x23, 0x42, 0xB1, 0xC1, 0x15, 0x52, 0xD1, 0xF0,
        0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0A, 0x16,
        0x17, 0x18, 0x19, 0x1A, 0x25, 0x26, 0x27, 0x28,
        0x29, 0x2A, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39,
        0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49,
        0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59,
        0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69,
        0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79,
        0x7A, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
        0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98,
        0x99, 0x9A, 0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7,
        0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6,
        0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3, 0xC4, 0xC5,
        0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3, 0xD4,
        0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA, 0xE1, 0xE2,
        0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9, 0xEA,
        0xF1, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8,
        0xF9, 0xFA,
    ),
)


class BitWriter:
    """MSB-first bit accumulator.  One stream per instance; not thread-safe."""

    def __init__(self):
        self._out = bytearray()
        self._acc = 0
        self._nbits = 0

    def write(self, value: int, nbits: int):
        if nbits == 0:
            return
        self._acc = (self._acc << nbits) | (value & ((1 << nbits) - 1))
        self._nbits += nbits
        while self._nbits >= 8:
            self._nbits -= 8
            self._out.append((self._acc >> self._nbits) & 0xFF)
        self._acc &= (1 << self._nbits) - 1

    def getvalue(self) -> bytes:
        """Pad the final partial byte with 1 bits and return the stream."""
        if self._nbits:
            pad = 8 - self._nbits
            self.write((1 << pad) - 1, pad)
        return bytes(self._out)


class BitReader:
    """MSB-first bit consumer over a byte string.  One stream per instance."""

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0
        self._acc = 0
        self._nbits = 0

    @property
    def byte_position(self) -> int:
        return self._pos

    def read(self, nbits: int) -> int:
        while self._nbits < nbits:
            if self._pos >= len(self._data):
                raise TruncationError("entropy data exhausted mid-block", offset=self._pos)
            self._acc = (self._acc << 8) | self._data[self._pos]
            self._pos += 1
            self._nbits += 8
        self._nbits -= nbits
        value = (self._acc >> self._nbits) & ((1 << nbits) - 1)
        self._acc &= (1 << self._nbits) - 1
        return value

    def bits_remaining(self) -> int:
        return self._nbits + 8 * (len(self._data) - self._pos)


def _amplitude_bits(value: int, size: int) -> int:
    # Positive amplitudes are their own low bits; negative use (value - 1).
    return value if value >= 0 else (value - 1) & ((1 << size) - 1)


def _amplitude_value(bits: int, size: int) -> int:
    if bits >> (size - 1):
        return bits
    return bits - (1 << size) + 1


def _decode_symbol(reader: BitReader, mincode, maxcode, valptr, symbols) -> int:
    code = 0
    for length in range(1, MAX_CODE_LENGTH + 1):
        code = (code << 1) | reader.read(1)
        if code <= maxcode[length]:
            return symbols[valptr[length] + code - mincode[length]]
    raise CorruptStreamError(
        "bit pattern matches no Huffman code", offset=reader.byte_position
    )


def block_symbols(block_zz: Sequence[int]) -> tuple[int, list[IntermediateSymbol]]:
    """Split one zig-zag block (DC already differenced) into codable symbols."""
    return int(block_zz[0]), run_length_symbols(block_zz[1:])


def symbol_frequencies(blocks_zz: Sequence[Sequence[int]]) -> tuple[dict[int, int], dict[int, int]]:
    """Tally DC-size and AC run/size symbol counts over a block sequence.

    Input blocks carry raw (undifferenced) DC terms; differencing is applied
    here exactly as the encoder will.
    """
    dc_freqs: dict[int, int] = {}
    ac_freqs: dict[int, int] = {}
    pred = 0
    for block in blocks_zz:
        dc = int(block[0])
        cat = magnitude_category(dc - pred)
        pred = dc
        dc_freqs[cat] = dc_freqs.get(cat, 0) + 1
        for sym in run_length_symbols(block[1:]):
            byte = (sym.run << 4) | sym.size
            ac_freqs[byte] = ac_freqs.get(byte, 0) + 1
    return dc_freqs, ac_freqs


def huffman_encode(
    blocks_zz: Sequence[Sequence[int]],
    dc_table: HuffmanTable,
    ac_table: HuffmanTable,
) -> bytes:
    """Entropy-encode quantized zig-zag blocks into a byte-aligned payload.

    DC terms are differenced against the previous block (predictor 0 at the
    start of the scan).  The payload is unstuffed; byte stuffing is the
    container's concern.
    """
    dc_codes = dc_table.code_map()
    ac_codes = ac_table.code_map()
    writer = BitWriter()
    pred = 0
    for block in blocks_zz:
        dc = int(block[0])
        diff = dc - pred
        pred = dc
        cat = magnitude_category(diff)
        try:
            code, length = dc_codes[cat]
        except KeyError:
            raise CodingError(f"DC category {cat} missing from table") from None
        writer.write(code, length)
        writer.write(_amplitude_bits(diff, cat), cat)
        for sym in run_length_symbols(block[1:]):
            byte = (sym.run << 4) | sym.size
            try:
                code, length = ac_codes[byte]
            except KeyError:
                raise CodingError(f"AC symbol {byte:#04x} missing from table") from None
            writer.write(code, length)
            if sym.size:
                writer.write(_amplitude_bits(sym.amplitude, sym.size), sym.size)
    return writer.getvalue()


def huffman_decode(
    payload: bytes,
    dc_table: HuffmanTable,
    ac_table: HuffmanTable,
    block_count: int,
) -> list[np.ndarray]:
    """Decode ``block_count`` zig-zag blocks from an entropy payload.

    Exact inverse of :func:`huffman_encode` (DC prediction and run-length
    expansion undone).  Raises :class:`CorruptStreamError` on bit patterns
    matching no code and :class:`TruncationError` if the payload ends early;
    trailing data beyond the final pad byte is also rejected.
    """
    reader = BitReader(payload)
    dc_min, dc_max, dc_ptr = dc_table.decode_tables()
    ac_min, ac_max, ac_ptr = ac_table.decode_tables()
    dc_syms = dc_table.symbols
    ac_syms = ac_table.symbols
    blocks = []
    pred = 0
    for _ in range(block_count):
        levels = np.zeros(64, dtype=np.int64)
        cat = _decode_symbol(reader, dc_min, dc_max, dc_ptr, dc_syms)
        if cat > MAX_CODE_LENGTH:
            raise CorruptStreamError(
                f"DC magnitude category {cat} out of range", offset=reader.byte_position
            )
        diff = _amplitude_value(reader.read(cat), cat) if cat else 0
        pred += diff
        levels[0] = pred
        k = 1
        while k < 64:
            byte = _decode_symbol(reader, ac_min, ac_max, ac_ptr, ac_syms)
            run, size = byte >> 4, byte & 0x0F
            if size == 0:
                if run == 0:  # EOB
                    break
                if run != 15:
                    raise CorruptStreamError(
                        f"invalid AC symbol {byte:#04x}", offset=reader.byte_position
                    )
                k += 16
                if k > 63:
                    raise CorruptStreamError(
                        "zero run overflows block", offset=reader.byte_position
                    )
            else:
                k += run
                if k > 63:
                    raise CorruptStreamError(
                        "AC coefficient index overflows block", offset=reader.byte_position
                    )
                levels[k] = _amplitude_value(reader.read(size), size)
                k += 1
        blocks.append(levels)
    if reader.bits_remaining() >= 8:
        raise CorruptStreamError(
            "entropy payload continues past the final block", offset=reader.byte_position
        )
    return blocks

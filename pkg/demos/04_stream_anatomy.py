"""Anatomy of the emitted byte stream: marker segments, table payloads, and
byte stuffing inside the entropy data.

Run: python demos/04_stream_anatomy.py
"""

import numpy as np

from grayjpeg import EncodeSettings, ImageBuffer, encode_image, parse_stream

rng = np.random.default_rng(4)
image = ImageBuffer(rng.integers(0, 256, size=(16, 16), dtype=np.uint8))
stream = encode_image(image, EncodeSettings(quality=40))

print(f"=== {len(stream)}-byte stream for a 16x16 random image ===\n")
doc = parse_stream(stream)

print(f"{'marker':<8} {'offset':>6} {'length':>6}")
for seg in doc.segments:
    print(f"{seg.name:<8} {seg.offset:>6} {seg.length:>6}")

print(f"\nframe: {doc.frame.width} x {doc.frame.height}, precision {doc.frame.precision}")

table = doc.quant_table
print("\nquantization table (natural order):")
for row in table.natural():
    print("  " + " ".join(f"{q:>3}" for q in row))

for label, tables in (("DC", doc.dc_tables), ("AC", doc.ac_tables)):
    for tid, huff in tables.items():
        print(f"\n{label} Huffman table {tid}: {len(huff.symbols)} symbols")
        print(f"  codes per length 1..16: {list(huff.counts)}")

stuffed = stream.count(b"\xff\x00")
print(f"\nentropy payload: {len(doc.entropy_payload)} bytes after unstuffing")
print(f"stuffed 0xFF bytes in the stream: {stuffed}")
print("first payload bytes:", doc.entropy_payload[:16].hex(" "))

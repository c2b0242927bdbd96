"""Payload codec, bitmap container, and LSB embedding."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stegdisc.carrier import (
    FLAG_SUPERBLOCK,
    BlockPayload,
    CarrierObject,
    CarrierPool,
    capacity,
    counter_bytes,
    decode_payload,
    embed,
    encode_payload,
    extract,
    header_size,
    is_bitmap,
    make_bitmap,
    read_payload,
    synthetic_bitmap,
)
from stegdisc.errors import (
    BadVersion,
    CapacityExceeded,
    CounterTooWide,
    DataTooLong,
    TruncatedPayload,
    UnsupportedCarrier,
)


def lsb_oracle_extract(bitmap_bytes, nbytes):
    """Pure-python reference: payload bits sit MSB-first in channel LSBs,
    walking pixel rows and skipping the 4-byte row padding."""
    width = int.from_bytes(bitmap_bytes[18:22], "little")
    height = int.from_bytes(bitmap_bytes[22:26], "little")
    offset = int.from_bytes(bitmap_bytes[10:14], "little")
    stride = (width * 3 + 3) & ~3
    bits = []
    for row in range(height):
        base = offset + row * stride
        for k in range(width * 3):
            bits.append(bitmap_bytes[base + k] & 1)
    out = bytearray()
    for i in range(nbytes):
        value = 0
        for bit in bits[i * 8: (i + 1) * 8]:
            value = (value << 1) | bit
        out.append(value)
    return bytes(out)


class TestPayloadCodec:
    def test_header_sizes(self):
        assert counter_bytes(8) == 1
        assert counter_bytes(9) == 2
        assert counter_bytes(16) == 2
        assert counter_bytes(24) == 3
        assert header_size(8) == 7

    def test_null_block_p8(self):
        raw = encode_payload(BlockPayload(next_counter=0), 8)
        assert raw == bytes.fromhex("01000000000000")

    def test_layout_p16(self):
        raw = encode_payload(BlockPayload(next_counter=258, data=b"AB"), 16)
        assert raw == bytes.fromhex("01000102000000024142")

    def test_counter_too_wide(self):
        with pytest.raises(CounterTooWide):
            encode_payload(BlockPayload(next_counter=256), 8)

    def test_data_too_long(self):
        with pytest.raises(DataTooLong):
            encode_payload(BlockPayload(next_counter=0, data=b"xyz"), 8, m=2)

    def test_bad_version(self):
        raw = bytearray(encode_payload(BlockPayload(next_counter=0), 8))
        raw[0] = 2
        with pytest.raises(BadVersion):
            decode_payload(bytes(raw), 8)

    def test_truncated_declared_length(self):
        raw = bytearray(encode_payload(BlockPayload(next_counter=0, data=b"x" * 10), 8))
        raw[2 + 1: 2 + 1 + 4] = (100).to_bytes(4, "big")
        with pytest.raises(TruncatedPayload):
            decode_payload(bytes(raw), 8)

    def test_truncated_header(self):
        with pytest.raises(TruncatedPayload):
            decode_payload(b"\x01\x00\x00", 8)

    def test_trailing_bytes_ignored(self):
        payload = BlockPayload(next_counter=5, data=b"hi")
        raw = encode_payload(payload, 8) + b"\xffJUNK"
        assert decode_payload(raw, 8) == payload

    def test_superblock_flag(self):
        payload = BlockPayload(next_counter=0, data=b"cfg", flags=FLAG_SUPERBLOCK)
        assert decode_payload(encode_payload(payload, 8), 8).is_superblock

    @given(
        st.integers(1, 40),
        st.integers(0, 2 ** 20),
        st.binary(max_size=200),
        st.integers(0, 255),
    )
    @settings(max_examples=120)
    def test_round_trip(self, p, counter, data, flags):
        counter %= 2 ** p
        payload = BlockPayload(next_counter=counter, data=data, flags=flags)
        assert decode_payload(encode_payload(payload, p), p) == payload


class TestBitmap:
    def test_capacity_100x100(self):
        assert capacity(CarrierObject.bitmap(100, 100)) == 3750

    def test_capacity_1x1(self):
        assert capacity(CarrierObject.bitmap(1, 1)) == 0

    def test_capacity_2x2(self):
        assert capacity(CarrierObject.bitmap(2, 2)) == 1

    def test_sniffing(self):
        assert is_bitmap(make_bitmap(4, 4))
        assert not is_bitmap(b"plain bytes")
        assert CarrierObject.from_bytes(make_bitmap(4, 4)).kind == "bitmap"
        assert CarrierObject.from_bytes(b"plain bytes").kind == "opaque"

    def test_rejects_garbage_with_magic(self):
        with pytest.raises(UnsupportedCarrier):
            capacity(CarrierObject(kind="bitmap", data=b"BMnot-a-real-bitmap"))

    def test_synthetic_deterministic(self):
        a = synthetic_bitmap("d1", 7, 16, 16)
        b = synthetic_bitmap("d1", 7, 16, 16)
        c = synthetic_bitmap("d1", 8, 16, 16)
        assert a.data == b.data
        assert a.data != c.data


class TestEmbed:
    def test_round_trip_bitmap(self):
        carrier = CarrierObject.bitmap(20, 10)
        payload = bytes(range(60))
        assert extract(embed(carrier, payload), 60) == payload

    def test_round_trip_opaque(self):
        carrier = CarrierObject.opaque(bytes(100))
        assert extract(embed(carrier, b"hello"), 5) == b"hello"

    def test_lsb_only_modification(self):
        rng = random.Random(3)
        chan = bytes(rng.randrange(256) for _ in range(21 * 7 * 3))
        carrier = CarrierObject.bitmap(21, 7, channel_bytes=chan)
        stego = embed(carrier, bytes(rng.randrange(256) for _ in range(50)))
        assert len(stego.data) == len(carrier.data)
        diffs = [(a, b) for a, b in zip(carrier.data, stego.data) if a != b]
        assert diffs  # something must actually change
        assert all(a ^ b == 1 for a, b in diffs)

    def test_capacity_exceeded(self):
        carrier = CarrierObject.bitmap(4, 4)  # 6 bytes
        with pytest.raises(CapacityExceeded):
            embed(carrier, bytes(7))

    def test_extract_from_zero_bitmap(self):
        carrier = CarrierObject.bitmap(8, 8, channel_bytes=bytes(8 * 8 * 3))
        assert extract(carrier, 10) == bytes(10)

    def test_matches_pure_python_oracle(self):
        rng = random.Random(9)
        for width, height in [(3, 5), (8, 1), (17, 9), (32, 32)]:
            chan = bytes(rng.randrange(256) for _ in range(width * height * 3))
            carrier = CarrierObject.bitmap(width, height, channel_bytes=chan)
            room = capacity(carrier)
            payload = bytes(rng.randrange(256) for _ in range(room))
            stego = embed(carrier, payload)
            assert lsb_oracle_extract(stego.data, room) == payload
            assert extract(stego, room) == payload

    def test_two_phase_read_equals_one_phase(self):
        rng = random.Random(4)
        for _ in range(30):
            p = rng.choice([8, 12, 16, 24])
            data = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 40)))
            payload = BlockPayload(next_counter=rng.randrange(2 ** p), data=data)
            raw = encode_payload(payload, p)
            carrier = CarrierObject.bitmap(16, 16)
            stego = embed(carrier, raw)
            assert read_payload(stego, p) == payload
            assert decode_payload(extract(stego, len(raw)), p) == payload

    def test_read_payload_truncated_capacity(self):
        # carrier too small to even hold a header
        tiny = CarrierObject.bitmap(2, 2)
        with pytest.raises(TruncatedPayload):
            read_payload(tiny, 8)


class TestPool:
    def test_synthetic_bitmap_pool(self):
        pool = CarrierPool(synth="bitmap", width=16, height=16, disc_id="x")
        assert pool.min_capacity() == 16 * 16 * 3 // 8
        carrier = pool.next_carrier(1)
        assert carrier.kind == "bitmap"
        assert carrier.data == pool.next_carrier(1).data  # same counter, same carrier

    def test_opaque_pool(self):
        pool = CarrierPool(synth="opaque", opaque_size=64)
        assert pool.min_capacity() == 64
        assert pool.next_carrier(3).kind == "opaque"

    def test_directory_pool_consumed_in_order(self, tmp_path):
        big = make_bitmap(32, 32)
        small = make_bitmap(16, 16)
        (tmp_path / "a.bmp").write_bytes(big)
        (tmp_path / "b.bmp").write_bytes(small)
        pool = CarrierPool(directory=tmp_path, synth="bitmap", width=8, height=8, disc_id="x")
        assert pool.min_capacity() == 8 * 8 * 3 // 8  # synthetic fallback floor
        assert pool.next_carrier(1).data == big
        assert pool.next_carrier(2).data == small
        # directory exhausted: falls back to synthetics
        assert len(pool.next_carrier(3).data) == len(make_bitmap(8, 8))

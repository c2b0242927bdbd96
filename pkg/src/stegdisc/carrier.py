"""Block payloads and the multimedia carriers that hide them.

A block payload is laid out bit-exactly as

    version (1) | flags (1) | next_counter (ceil(p/8), big-endian)
    | data_len (4, big-endian) | data

and embedded one bit per color channel into the least significant bits of
an uncompressed 24-bit BMP, or copied verbatim into an "opaque" blob
carrier (fast path for tests and benchmarks).  Carriers come from a pool:
a directory of cover files, then deterministic synthetic bitmaps derived
from (disc id, block counter) once the directory is exhausted.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import (
    BadVersion,
    CapacityExceeded,
    CounterTooWide,
    DataTooLong,
    TruncatedPayload,
    UnsupportedCarrier,
)

PAYLOAD_VERSION = 1
FLAG_SUPERBLOCK = 0x01


def counter_bytes(p: int) -> int:
    return (p + 7) // 8


def header_size(p: int) -> int:
    """Fixed header bytes preceding the data for a p-bit counter."""
    return 6 + counter_bytes(p)


@dataclass
class BlockPayload:
    """Hidden content of one posted object."""

    next_counter: int
    data: bytes = b""
    flags: int = 0
    version: int = PAYLOAD_VERSION

    @property
    def is_superblock(self) -> bool:
        return bool(self.flags & FLAG_SUPERBLOCK)


def encode_payload(payload: BlockPayload, p: int, m: Optional[int] = None) -> bytes:
    """Serialize a payload for a disc with p-bit counters.

    When m is given the data length is checked against it; the genesis
    superblock is encoded with m=None since its data is the config echo,
    not file content.
    """
    if not 0 <= payload.next_counter < (1 << p):
        raise CounterTooWide(f"counter {payload.next_counter} needs more than {p} bits")
    if m is not None and len(payload.data) > m:
        raise DataTooLong(f"{len(payload.data)} data bytes > block size {m}")
    return (
        bytes((payload.version, payload.flags))
        + payload.next_counter.to_bytes(counter_bytes(p), "big")
        + struct.pack(">I", len(payload.data))
        + payload.data
    )


def decode_payload(raw: bytes, p: int) -> BlockPayload:
    """Exact inverse of encode_payload; trailing bytes beyond data_len are ignored."""
    hsize = header_size(p)
    if len(raw) < hsize:
        raise TruncatedPayload(f"{len(raw)} bytes < header size {hsize}")
    version, flags = raw[0], raw[1]
    if version != PAYLOAD_VERSION:
        raise BadVersion(f"unknown payload version {version}")
    nbytes = counter_bytes(p)
    next_counter = int.from_bytes(raw[2:2 + nbytes], "big")
    (data_len,) = struct.unpack(">I", raw[2 + nbytes:hsize])
    if len(raw) < hsize + data_len:
        raise TruncatedPayload(f"declared {data_len} data bytes, {len(raw) - hsize} present")
    return BlockPayload(
        next_counter=next_counter,
        data=bytes(raw[hsize:hsize + data_len]),
        flags=flags,
        version=version,
    )


# -- BMP container -------------------------------------------------------------
# Plain BITMAPINFOHEADER, 24 bits per pixel, no compression, bottom-up rows
# padded to 4 bytes.  Channel bytes (pixel data minus padding) are the hidden
# capacity, one LSB each.

_BMP_FILE_HEADER = struct.Struct("<2sIHHI")
_BMP_INFO_HEADER = struct.Struct("<IiiHHIIiiII")


def _row_stride(width: int) -> int:
    return (width * 3 + 3) & ~3


def make_bitmap(width: int, height: int, channel_bytes: Optional[bytes] = None) -> bytes:
    """Build a 24-bit BMP file from raw channel bytes (len = width*height*3)."""
    if width < 1 or height < 1:
        raise UnsupportedCarrier("bitmap dimensions must be positive")
    n_chan = width * height * 3
    if channel_bytes is None:
        channel_bytes = bytes(n_chan)
    if len(channel_bytes) != n_chan:
        raise UnsupportedCarrier(
            f"{len(channel_bytes)} channel bytes for {width}x{height} (need {n_chan})"
        )
    stride = _row_stride(width)
    pad = b"\x00" * (stride - width * 3)
    rows = []
    for y in range(height):
        rows.append(channel_bytes[y * width * 3:(y + 1) * width * 3])
        rows.append(pad)
    pixel_data = b"".join(rows)
    offset = _BMP_FILE_HEADER.size + _BMP_INFO_HEADER.size
    file_header = _BMP_FILE_HEADER.pack(b"BM", offset + len(pixel_data), 0, 0, offset)
    info_header = _BMP_INFO_HEADER.pack(
        _BMP_INFO_HEADER.size, width, height, 1, 24, 0, len(pixel_data), 2835, 2835, 0, 0
    )
    return file_header + info_header + pixel_data


def _parse_bmp(data: bytes) -> tuple[int, int, int, int]:
    """Return (width, height, pixel_offset, stride); UnsupportedCarrier if not
    a plain bottom-up 24-bit uncompressed BMP."""
    if len(data) < _BMP_FILE_HEADER.size + _BMP_INFO_HEADER.size:
        raise UnsupportedCarrier("too short for a BMP header")
    magic, _size, _r1, _r2, offset = _BMP_FILE_HEADER.unpack_from(data, 0)
    if magic != b"BM":
        raise UnsupportedCarrier("missing BM magic")
    (hdr_size, width, height, planes, bpp, compression,
     _img_size, _xppm, _yppm, _colors, _important) = _BMP_INFO_HEADER.unpack_from(
        data, _BMP_FILE_HEADER.size)
    if hdr_size < _BMP_INFO_HEADER.size or planes != 1:
        raise UnsupportedCarrier(f"unsupported BMP header (size {hdr_size})")
    if bpp != 24 or compression != 0:
        raise UnsupportedCarrier(f"only uncompressed 24bpp supported (bpp={bpp})")
    if width < 1 or height < 1:
        raise UnsupportedCarrier(f"bad dimensions {width}x{height}")
    stride = _row_stride(width)
    if offset + stride * height > len(data):
        raise UnsupportedCarrier("pixel data shorter than declared dimensions")
    return width, height, offset, stride


def is_bitmap(data: bytes) -> bool:
    try:
        _parse_bmp(data)
        return True
    except UnsupportedCarrier:
        return False


# -- carrier objects -----------------------------------------------------------

@dataclass(frozen=True)
class CarrierObject:
    """A multimedia object: kind "bitmap" (24-bit BMP bytes) or "opaque" blob."""

    kind: str
    data: bytes

    @classmethod
    def from_bytes(cls, data: bytes) -> "CarrierObject":
        return cls("bitmap" if is_bitmap(data) else "opaque", bytes(data))

    @classmethod
    def bitmap(cls, width: int, height: int, channel_bytes: Optional[bytes] = None) -> "CarrierObject":
        return cls("bitmap", make_bitmap(width, height, channel_bytes))

    @classmethod
    def opaque(cls, data: bytes) -> "CarrierObject":
        return cls("opaque", bytes(data))


# Embedding does not change an object's shape, so a stego object is just a
# carrier with payload bits in its LSBs.
StegoObject = CarrierObject


def capacity(carrier: CarrierObject) -> int:
    """Bytes of hidden payload the carrier can hold."""
    if carrier.kind == "bitmap":
        width, height, _, _ = _parse_bmp(carrier.data)
        return width * height * 3 // 8
    if carrier.kind == "opaque":
        return len(carrier.data)
    raise UnsupportedCarrier(f"unknown carrier kind {carrier.kind!r}")


def embed(carrier: CarrierObject, payload: bytes) -> StegoObject:
    """Hide payload bytes in the carrier.

    Bitmap: payload bits, most significant first, go into the LSB of
    successive channel bytes; everything else is untouched.  Opaque:
    payload replaces the leading bytes verbatim.
    """
    if len(payload) > capacity(carrier):
        raise CapacityExceeded(f"{len(payload)} bytes > capacity {capacity(carrier)}")
    if carrier.kind == "opaque":
        out = bytearray(carrier.data)
        out[:len(payload)] = payload
        return CarrierObject("opaque", bytes(out))
    width, height, offset, stride = _parse_bmp(carrier.data)
    buf = np.frombuffer(carrier.data, dtype=np.uint8).copy()
    rows = buf[offset:offset + stride * height].reshape(height, stride)
    chan = rows[:, :width * 3].copy().reshape(-1)
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8))
    chan[:bits.size] = (chan[:bits.size] & 0xFE) | bits
    rows[:, :width * 3] = chan.reshape(height, width * 3)
    return CarrierObject("bitmap", buf.tobytes())


def extract(stego: StegoObject, expected_len: int) -> bytes:
    """Recover the first expected_len hidden bytes (inverse of embed)."""
    if expected_len > capacity(stego):
        raise CapacityExceeded(f"{expected_len} bytes > capacity {capacity(stego)}")
    if expected_len <= 0:
        return b""
    if stego.kind == "opaque":
        return bytes(stego.data[:expected_len])
    width, height, offset, stride = _parse_bmp(stego.data)
    buf = np.frombuffer(stego.data, dtype=np.uint8)
    rows = buf[offset:offset + stride * height].reshape(height, stride)
    chan = rows[:, :width * 3].reshape(-1)  # reshape copies when not contiguous
    bits = chan[:expected_len * 8] & 1
    return np.packbits(bits).tobytes()


def read_payload(stego: StegoObject, p: int) -> BlockPayload:
    """Two-phase payload read: extract the header, then exactly the bytes the
    header's data_len declares."""
    hsize = header_size(p)
    cap = capacity(stego)
    if hsize > cap:
        raise TruncatedPayload(f"capacity {cap} below header size {hsize}")
    head = extract(stego, hsize)
    (data_len,) = struct.unpack(">I", head[hsize - 4:hsize])
    if hsize + data_len > cap:
        raise TruncatedPayload(f"declared {data_len} data bytes exceed capacity {cap}")
    return decode_payload(extract(stego, hsize + data_len), p)


# -- carrier pool --------------------------------------------------------------

def synthetic_bitmap(disc_id: str, counter: int, width: int, height: int) -> CarrierObject:
    """Pseudo-random cover bitmap, deterministic in (disc_id, counter)."""
    seed = int.from_bytes(
        hashlib.sha256(f"{disc_id}/{counter}".encode("utf-8")).digest()[:8], "big")
    rng = np.random.default_rng(seed)
    pixels = rng.integers(0, 256, size=width * height * 3, dtype=np.uint8).tobytes()
    return CarrierObject.bitmap(width, height, pixels)


class CarrierPool:
    """Source of cover objects for new posts.

    Files in `directory` (sorted, each used once) come first; after that,
    synthetic carriers: deterministic bitmaps of width x height, or opaque
    blobs of opaque_size when synth="opaque".
    """

    def __init__(
        self,
        directory: Optional[Path] = None,
        synth: str = "bitmap",
        width: int = 64,
        height: int = 64,
        opaque_size: int = 4096,
        disc_id: str = "",
    ):
        if synth not in ("bitmap", "opaque"):
            raise UnsupportedCarrier(f"unknown synthetic kind {synth!r}")
        self.synth = synth
        self.width = width
        self.height = height
        self.opaque_size = opaque_size
        self.disc_id = disc_id
        self._files: list[Path] = []
        if directory is not None:
            self._files = sorted(q for q in Path(directory).iterdir() if q.is_file())
        self._next_file = 0

    def _synth_capacity(self) -> int:
        if self.synth == "opaque":
            return self.opaque_size
        return self.width * self.height * 3 // 8

    def min_capacity(self) -> int:
        """Smallest capacity any carrier this pool may serve can have."""
        caps = [self._synth_capacity()]
        for path in self._files:
            caps.append(capacity(CarrierObject.from_bytes(path.read_bytes())))
        return min(caps)

    def next_carrier(self, counter: int) -> CarrierObject:
        if self._next_file < len(self._files):
            path = self._files[self._next_file]
            self._next_file += 1
            return CarrierObject.from_bytes(path.read_bytes())
        if self.synth == "opaque":
            return CarrierObject.opaque(bytes(self.opaque_size))
        return synthetic_bitmap(self.disc_id, counter, self.width, self.height)

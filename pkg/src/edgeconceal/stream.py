"""Packet stream container (``.esl`` files).

Layout, all integers little-endian::

    magic        4s   b"ESL1"
    width        u16  padded width (multiple of 8)
    height       u16  padded height
    orig_width   u16
    orig_height  u16
    column_off   u8   edge column within each block, 0..7
    scheme       u8   carrier assignment scheme (0 = half-grid shift)
    threshold    f32  relative edge threshold used at the transmitter
    n_packets    u32
    n_packets x (block_index u32, length u32, payload bytes)

A stream straight from the encoder holds one packet per block; after the
channel it holds the survivors, still in ascending block order.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import StreamFormatError
from .image_io import BLOCK

MAGIC = b"ESL1"
_HEADER = struct.Struct("<4sHHHHBBfI")
_PACKET = struct.Struct("<II")


@dataclass(frozen=True)
class Packet:
    block_index: int
    payload: bytes


@dataclass(frozen=True)
class PacketStream:
    width: int
    height: int
    original_width: int
    original_height: int
    column_offset: int
    scheme_id: int
    edge_threshold: float
    packets: tuple[Packet, ...]

    @property
    def blocks_x(self) -> int:
        return self.width // BLOCK

    @property
    def blocks_y(self) -> int:
        return self.height // BLOCK

    @property
    def block_count(self) -> int:
        return self.blocks_x * self.blocks_y

    @property
    def is_complete(self) -> bool:
        return len(self.packets) == self.block_count

    def with_packets(self, packets) -> PacketStream:
        return PacketStream(self.width, self.height, self.original_width, self.original_height,
                            self.column_offset, self.scheme_id, self.edge_threshold,
                            tuple(packets))


def float32(x: float) -> float:
    """Round to the nearest value representable in the header's f32 field."""
    return float(np.float32(x))


def validate(stream: PacketStream) -> None:
    if stream.width % BLOCK or stream.height % BLOCK or not stream.width or not stream.height:
        raise StreamFormatError(f"padded size {stream.width}x{stream.height} is not a "
                                f"positive multiple of {BLOCK}")
    if not (0 < stream.original_width <= stream.width
            and 0 < stream.original_height <= stream.height):
        raise StreamFormatError("original size exceeds padded size")
    if not 0 <= stream.column_offset < BLOCK:
        raise StreamFormatError(f"column offset {stream.column_offset} outside 0..7")
    if stream.scheme_id != 0:
        raise StreamFormatError(f"unknown assignment scheme {stream.scheme_id}")
    if len(stream.packets) > stream.block_count:
        raise StreamFormatError(f"{len(stream.packets)} packets for "
                                f"{stream.block_count} blocks")
    prev = -1
    for p in stream.packets:
        if not prev < p.block_index < stream.block_count:
            raise StreamFormatError(f"packet block index {p.block_index} out of order "
                                    f"or out of range")
        prev = p.block_index


def serialize_stream(stream: PacketStream) -> bytes:
    validate(stream)
    parts = [_HEADER.pack(MAGIC, stream.width, stream.height, stream.original_width,
                          stream.original_height, stream.column_offset, stream.scheme_id,
                          stream.edge_threshold, len(stream.packets))]
    for p in stream.packets:
        parts.append(_PACKET.pack(p.block_index, len(p.payload)))
        parts.append(p.payload)
    return b"".join(parts)


def deserialize_stream(data: bytes) -> PacketStream:
    if len(data) < _HEADER.size:
        raise StreamFormatError("truncated header")
    magic, w, h, ow, oh, col, scheme, thr, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise StreamFormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    pos = _HEADER.size
    packets = []
    for _ in range(count):
        if pos + _PACKET.size > len(data):
            raise StreamFormatError(f"truncated packet header at byte {pos}")
        index, length = _PACKET.unpack_from(data, pos)
        pos += _PACKET.size
        if pos + length > len(data):
            raise StreamFormatError(f"truncated payload for block {index}")
        packets.append(Packet(index, bytes(data[pos:pos + length])))
        pos += length
    if pos != len(data):
        raise StreamFormatError(f"{len(data) - pos} trailing bytes after last packet")
    stream = PacketStream(w, h, ow, oh, col, scheme, float(thr), tuple(packets))
    validate(stream)
    return stream


def write_stream(stream: PacketStream, path) -> None:
    with open(path, "wb") as f:
        f.write(serialize_stream(stream))


def read_stream(path) -> PacketStream:
    with open(path, "rb") as f:
        return deserialize_stream(f.read())

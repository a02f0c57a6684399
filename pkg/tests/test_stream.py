import struct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from edgeconceal.errors import StreamFormatError
from edgeconceal.stream import (MAGIC, Packet, PacketStream, deserialize_stream, float32,
                                serialize_stream)


def make_stream(bx=2, by=2, payloads=None, **kw):
    n = bx * by
    payloads = payloads or [bytes([i]) * (i + 1) for i in range(n)]
    fields = dict(width=8 * bx, height=8 * by, original_width=8 * bx - 3,
                  original_height=8 * by, column_offset=4, scheme_id=0,
                  edge_threshold=float32(0.25))
    fields.update(kw)
    return PacketStream(**fields, packets=tuple(Packet(i, p) for i, p in enumerate(payloads)))


def test_header_layout():
    data = serialize_stream(make_stream())
    assert data[:4] == MAGIC
    w, h, ow, oh, col, scheme, thr, count = struct.unpack_from("<HHHHBBfI", data, 4)
    assert (w, h, ow, oh, col, scheme, count) == (16, 16, 13, 16, 4, 0, 4)
    assert thr == 0.25
    index, length = struct.unpack_from("<II", data, 22)
    assert (index, length) == (0, 1)
    assert data[30:31] == b"\x00"


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_round_trip(bx, by, data):
    payloads = [data.draw(st.binary(max_size=20)) for _ in range(bx * by)]
    s = make_stream(bx, by, payloads,
                    edge_threshold=float32(data.draw(st.floats(0.01, 1.0))),
                    column_offset=data.draw(st.integers(0, 7)))
    raw = serialize_stream(s)
    assert deserialize_stream(raw) == s
    assert serialize_stream(deserialize_stream(raw)) == raw


def test_partial_stream_round_trips():
    s = make_stream(2, 2)
    partial = s.with_packets([s.packets[1], s.packets[3]])
    assert deserialize_stream(serialize_stream(partial)) == partial


def test_wrong_magic():
    raw = bytearray(serialize_stream(make_stream()))
    raw[:4] = b"JPEG"
    with pytest.raises(StreamFormatError, match="magic"):
        deserialize_stream(bytes(raw))


def test_packet_count_exceeding_blocks():
    raw = bytearray(serialize_stream(make_stream(2, 2)))
    struct.pack_into("<HH", raw, 4, 8, 16)  # header now claims 1x2 blocks
    struct.pack_into("<HH", raw, 8, 8, 16)
    with pytest.raises(StreamFormatError):
        deserialize_stream(bytes(raw))


@pytest.mark.parametrize("mutate", [
    lambda b: b[:-1],
    lambda b: b + b"\x00",
    lambda b: b[:10],
])
def test_truncation_and_trailing_bytes(mutate):
    with pytest.raises(StreamFormatError):
        deserialize_stream(mutate(serialize_stream(make_stream())))


def test_out_of_order_packets_rejected():
    s = make_stream()
    with pytest.raises(StreamFormatError):
        serialize_stream(s.with_packets([s.packets[2], s.packets[1]]))

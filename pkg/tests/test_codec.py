import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from edgeconceal import codec
from edgeconceal.codec import (QUANT_MATRIX, ZIGZAG, decode_block, dequantize, encode_block,
                               forward_dct, inverse_dct, inverse_zigzag, quantize, zigzag)
from edgeconceal.errors import DecodeError, EncodeError
from edgeconceal.huffman import AC_LUMA, DC_LUMA, EOB, ZRL


def dct_oracle(block):
    """2-D DCT-II straight from the definition sum."""
    out = np.zeros((8, 8))
    for u in range(8):
        for v in range(8):
            cu = math.sqrt(1 / 8) if u == 0 else math.sqrt(2 / 8)
            cv = math.sqrt(1 / 8) if v == 0 else math.sqrt(2 / 8)
            s = 0.0
            for x in range(8):
                for y in range(8):
                    s += (block[x, y] * math.cos((2 * x + 1) * u * math.pi / 16)
                          * math.cos((2 * y + 1) * v * math.pi / 16))
            out[u, v] = cu * cv * s
    return out


levels_strategy = arrays(np.int64, (8, 8), elements=st.integers(-1023, 1023)).map(
    lambda a: a * (np.random.default_rng(int(a[0, 0]) & 0xFFFF).random((8, 8)) < 0.3))


def test_dct_of_zero_and_constant():
    assert np.allclose(forward_dct(np.zeros((8, 8))), 0)
    c = forward_dct(np.full((8, 8), 5.0))
    assert c[0, 0] == pytest.approx(40.0, abs=1e-12)
    c[0, 0] = 0
    assert np.abs(c).max() < 1e-12
    assert np.allclose(inverse_dct(np.pad([[40.0]], ((0, 7), (0, 7)))), 5.0, atol=1e-12)


def test_dct_matches_definition_on_random_blocks():
    rng = np.random.default_rng(1)
    for _ in range(20):
        b = rng.integers(-128, 128, (8, 8)).astype(float)
        assert np.abs(forward_dct(b) - dct_oracle(b)).max() < 1e-9


@given(arrays(np.float64, (8, 8), elements=st.floats(-128, 127)))
def test_dct_preserves_energy_and_inverts(b):
    c = forward_dct(b)
    assert np.sum(c * c) == pytest.approx(np.sum(b * b), rel=1e-6, abs=1e-9)
    assert np.abs(inverse_dct(c) - b).max() < 1e-9


def test_batched_dct_matches_single():
    rng = np.random.default_rng(2)
    stack = rng.normal(size=(5, 8, 8))
    batched = forward_dct(stack)
    for i in range(5):
        assert np.allclose(batched[i], forward_dct(stack[i]), atol=1e-13)


def test_quantize_and_dequantize():
    c = np.zeros((8, 8))
    c[0, 0] = 32
    c[0, 1] = -33
    r = quantize(c)
    assert r[0, 0] == 2.0
    assert r[0, 1] == pytest.approx(-33 / 11)
    assert quantize(np.full((8, 8), -33.0))[0, 0] == -2.0625
    lv = np.zeros((8, 8), dtype=np.int64)
    lv[0, 0] = 2
    assert dequantize(lv)[0, 0] == 32
    assert not dequantize(np.zeros((8, 8))).any()


@given(arrays(np.float64, (8, 8), elements=st.floats(-1000, 1000)))
def test_quantization_error_bound(x):
    back = dequantize(np.sign(quantize(x)) * np.floor(np.abs(quantize(x)) + 0.5))
    assert np.all(np.abs(back - x) <= QUANT_MATRIX / 2 + 1e-9)


def test_quant_matrix_is_standard_luminance():
    assert QUANT_MATRIX[0].tolist() == [16, 11, 10, 16, 24, 40, 51, 61]
    assert QUANT_MATRIX[7].tolist() == [72, 92, 95, 98, 112, 100, 103, 99]
    assert QUANT_MATRIX.min() >= 1


def test_zigzag_order():
    assert ZIGZAG[:6] == ((0, 0), (0, 1), (1, 0), (2, 0), (1, 1), (0, 2))
    assert ZIGZAG[63] == (7, 7)
    assert sorted(ZIGZAG) == [(r, c) for r in range(8) for c in range(8)]
    b = np.zeros((8, 8), dtype=np.int64)
    b[7, 7] = 9
    seq = zigzag(b)
    assert seq[63] == 9 and np.count_nonzero(seq) == 1


@given(arrays(np.int64, (8, 8), elements=st.integers(-50, 50)))
def test_zigzag_inverse(x):
    assert np.array_equal(inverse_zigzag(zigzag(x)), x)


def test_standard_table_codewords():
    assert DC_LUMA.encode[0] == (0b00, 2)
    assert DC_LUMA.encode[1] == (0b010, 3)
    assert DC_LUMA.encode[6] == (0b1110, 4)
    assert DC_LUMA.encode[11] == (0b111111110, 9)
    assert AC_LUMA.encode[EOB] == (0b1010, 4)
    assert AC_LUMA.encode[ZRL] == (0b11111111001, 11)
    assert AC_LUMA.encode[0x01] == (0b00, 2)
    assert AC_LUMA.encode[0x03] == (0b100, 3)
    assert AC_LUMA.encode[0xFA] == (0xFFFE, 16)


def test_all_zero_block_encoding():
    # DC size 0 "00", EOB "1010", pad "11"
    assert encode_block(np.zeros((8, 8), dtype=np.int64)) == bytes([0b00101011])


def test_dc_is_absolute_not_differential():
    a = np.zeros((8, 8), dtype=np.int64)
    a[0, 0] = -64
    payload = encode_block(a)
    assert decode_block(payload)[0, 0] == -64
    # same bits whatever came before: encoding is a pure function of the block
    assert encode_block(a) == payload


@settings(max_examples=300)
@given(levels_strategy)
def test_encode_decode_round_trip(levels):
    assert np.array_equal(decode_block(encode_block(levels)), levels)


def test_extreme_magnitudes_round_trip():
    for dc in (-2047, 2047):
        for ac in (-1023, 1023):
            b = np.full((8, 8), ac, dtype=np.int64)
            b[0, 0] = dc
            assert np.array_equal(decode_block(encode_block(b)), b)
    b = np.zeros((8, 8), dtype=np.int64)
    b[7, 7] = -1023  # 62 zeros then one coefficient: three ZRLs
    assert np.array_equal(decode_block(encode_block(b)), b)


def test_magnitude_overflow_names_position():
    b = np.zeros((8, 8), dtype=np.int64)
    b[0, 0] = 2048
    with pytest.raises(EncodeError, match=r"\(0, 0\)"):
        encode_block(b)
    b[0, 0] = 0
    b[2, 1] = -1024
    with pytest.raises(EncodeError, match=r"\(2, 1\)"):
        encode_block(b)


def test_truncated_payload_fails():
    rng = np.random.default_rng(3)
    b = rng.integers(-20, 20, (8, 8))
    payload = encode_block(b)
    for cut in range(len(payload)):
        with pytest.raises(DecodeError):
            decode_block(payload[:cut])


def test_undefined_prefix_fails():
    with pytest.raises(DecodeError, match="undefined"):
        decode_block(b"\xff\xff")


def test_trailing_garbage_fails():
    with pytest.raises(DecodeError):
        decode_block(encode_block(np.zeros((8, 8), dtype=np.int64)) + b"\x00")
    with pytest.raises(DecodeError):
        decode_block(bytes([0b00101000]))  # padding bits must be ones


def test_decode_does_not_share_state():
    b = np.ones((8, 8), dtype=np.int64)
    out = decode_block(encode_block(b))
    out[0, 0] = 99
    assert decode_block(encode_block(b))[0, 0] == 1
    assert codec.decode_block(encode_block(b)).dtype == np.int64

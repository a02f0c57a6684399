"""8x8 transform coding: orthonormal DCT, luminance quantization, zigzag scan
and per-block Huffman coding with an absolute (non-differential) DC term.

Every function accepting a block also accepts a stack of shape (n, 8, 8)
where noted, so whole images can be transformed in one call.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DecodeError, EncodeError
from .huffman import AC_LUMA, DC_LUMA, EOB, ZRL, BitReader, BitWriter

N = 8

QUANT_MATRIX = np.array([
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99],
], dtype=np.int64)
QUANT_MATRIX.setflags(write=False)

DC_LIMIT = 2048
AC_LIMIT = 1024


def _dct_matrix() -> np.ndarray:
    k = np.arange(N)[:, None]
    n = np.arange(N)[None, :]
    c = np.sqrt(2.0 / N) * np.cos((2 * n + 1) * k * np.pi / (2 * N))
    c[0] /= np.sqrt(2.0)
    return c


DCT_MATRIX = _dct_matrix()


def _zigzag_order() -> list[tuple[int, int]]:
    # walk anti-diagonals, alternating direction
    order = []
    for s in range(2 * N - 1):
        diag = [(i, s - i) for i in range(N) if 0 <= s - i < N]
        order.extend(diag if s % 2 else diag[::-1])
    return order


ZIGZAG = tuple(_zigzag_order())
_ZZ_FLAT = np.array([r * N + c for r, c in ZIGZAG])


def forward_dct(block: np.ndarray) -> np.ndarray:
    """Orthonormal 2-D DCT-II; accepts (8, 8) or (n, 8, 8)."""
    return DCT_MATRIX @ np.asarray(block, dtype=np.float64) @ DCT_MATRIX.T


def inverse_dct(coeffs: np.ndarray) -> np.ndarray:
    return DCT_MATRIX.T @ np.asarray(coeffs, dtype=np.float64) @ DCT_MATRIX


def quantize(coeffs: np.ndarray, q: np.ndarray = QUANT_MATRIX) -> np.ndarray:
    """Coefficient / step, left unrounded (rounding is the watermark's job)."""
    return np.asarray(coeffs, dtype=np.float64) / q


def dequantize(levels: np.ndarray, q: np.ndarray = QUANT_MATRIX) -> np.ndarray:
    return np.asarray(levels, dtype=np.float64) * q


def zigzag(levels: np.ndarray) -> np.ndarray:
    a = np.asarray(levels)
    return a.reshape(*a.shape[:-2], N * N)[..., _ZZ_FLAT]


def inverse_zigzag(seq) -> np.ndarray:
    seq = np.asarray(seq)
    out = np.empty(seq.shape[:-1] + (N * N,), dtype=seq.dtype)
    out[..., _ZZ_FLAT] = seq
    return out.reshape(*seq.shape[:-1], N, N)


def _category(value: int) -> int:
    return abs(value).bit_length()


def _magnitude_bits(value: int, size: int) -> int:
    # negative values use the one's complement of |value|
    return value if value >= 0 else value + (1 << size) - 1


def _extend(bits: int, size: int) -> int:
    if size == 0:
        return 0
    return bits if bits >= 1 << (size - 1) else bits - (1 << size) + 1


def encode_block(levels: np.ndarray) -> bytes:
    """Huffman-code one quantized block into a self-contained, byte-aligned payload."""
    levels = np.asarray(levels)
    if levels.shape != (N, N):
        raise EncodeError(f"expected an 8x8 block, got shape {levels.shape}")
    seq = [int(v) for v in zigzag(levels)]
    if abs(seq[0]) >= DC_LIMIT:
        raise EncodeError(f"DC level {seq[0]} at (0, 0) exceeds |DC| < {DC_LIMIT}")

    w = BitWriter()
    size = _category(seq[0])
    w.write(*DC_LUMA.encode[size])
    w.write(_magnitude_bits(seq[0], size), size)

    run = 0
    for k in range(1, N * N):
        v = seq[k]
        if v == 0:
            run += 1
            continue
        if abs(v) >= AC_LIMIT:
            raise EncodeError(f"AC level {v} at {ZIGZAG[k]} exceeds |AC| < {AC_LIMIT}")
        while run > 15:
            w.write(*AC_LUMA.encode[ZRL])
            run -= 16
        size = _category(v)
        w.write(*AC_LUMA.encode[(run << 4) | size])
        w.write(_magnitude_bits(v, size), size)
        run = 0
    if run:
        w.write(*AC_LUMA.encode[EOB])
    return w.getvalue()


@lru_cache(maxsize=1 << 16)
def _decode_cached(payload: bytes) -> tuple[int, ...]:
    r = BitReader(payload)
    seq = [0] * (N * N)
    size = r.read_symbol(DC_LUMA)
    seq[0] = _extend(r.read(size), size)
    k = 1
    while k < N * N:
        symbol = r.read_symbol(AC_LUMA)
        if symbol == EOB:
            break
        if symbol == ZRL:
            k += 16
            if k >= N * N:
                raise DecodeError("zero run past the end of the block")
            continue
        run, size = symbol >> 4, symbol & 0x0F
        k += run
        if k >= N * N:
            raise DecodeError("coefficient run past the end of the block")
        seq[k] = _extend(r.read(size), size)
        k += 1
    if r.remaining >= 8 or r.rest() != (1 << r.remaining) - 1:
        raise DecodeError("trailing data after end of block")
    return tuple(seq)


def decode_block(payload: bytes) -> np.ndarray:
    """Inverse of :func:`encode_block`. Raises DecodeError on malformed input."""
    return inverse_zigzag(np.array(_decode_cached(bytes(payload)), dtype=np.int64))

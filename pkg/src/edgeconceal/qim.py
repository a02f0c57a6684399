"""Parity (even/odd) quantization index modulation on quantized DCT levels.

A watermark bit of 0 rounds the quantized coefficient to the nearest even
integer and a 1 to the nearest odd integer; every other coefficient gets
ordinary rounding. Extraction reads the parity back.
"""

from __future__ import annotations

import numpy as np

from .image_io import round_half_away

# 1-based (row, col), bit k of the payload goes to the k-th entry
WATERMARK_POSITIONS = ((1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1))
_ROWS = np.array([r - 1 for r, _ in WATERMARK_POSITIONS])
_COLS = np.array([c - 1 for _, c in WATERMARK_POSITIONS])


def standard_round(ratio):
    """Nearest integer, halves away from zero."""
    out = round_half_away(ratio)
    return int(out) if out.ndim == 0 else out


def parity_round(ratio, bit):
    """Nearest integer whose parity equals ``bit``.

    Equidistant candidates resolve to the smaller magnitude, and the remaining
    -1/+1 tie (ratio 0 with bit 1) resolves to +1. Works elementwise.
    """
    r = np.asarray(ratio, dtype=np.float64)
    b = np.asarray(bit, dtype=np.int64) & 1
    lo = 2.0 * np.floor((r - b) / 2.0) + b
    hi = lo + 2.0
    d_lo = r - lo
    d_hi = hi - r
    # on a distance tie |hi| <= |lo| exactly when hi <= -lo
    take_hi = (d_hi < d_lo) | ((d_hi == d_lo) & (hi <= -lo))
    out = np.where(take_hi, hi, lo).astype(np.int64)
    return int(out) if out.ndim == 0 else out


def embed_block(ratios: np.ndarray, payload) -> np.ndarray:
    """Round an 8x8 block of quantizer ratios, hiding 8 payload bits."""
    return embed_blocks(np.asarray(ratios)[None], np.asarray(payload)[None])[0]


def embed_blocks(ratios: np.ndarray, payloads: np.ndarray) -> np.ndarray:
    """Vectorized :func:`embed_block` over shape (n, 8, 8) / (n, 8)."""
    ratios = np.asarray(ratios, dtype=np.float64)
    payloads = np.asarray(payloads, dtype=np.int64)
    if ratios.shape[1:] != (8, 8) or payloads.shape != (ratios.shape[0], 8):
        raise ValueError(f"shape mismatch: ratios {ratios.shape}, payloads {payloads.shape}")
    if np.any((payloads != 0) & (payloads != 1)):
        raise ValueError("payload bits must be 0 or 1")
    levels = round_half_away(ratios)
    levels[:, _ROWS, _COLS] = parity_round(ratios[:, _ROWS, _COLS], payloads)
    return levels


def extract_block(levels: np.ndarray) -> np.ndarray:
    return extract_blocks(np.asarray(levels)[None])[0]


def extract_blocks(levels: np.ndarray) -> np.ndarray:
    return (np.abs(np.asarray(levels, dtype=np.int64)[:, _ROWS, _COLS]) % 2).astype(np.uint8)

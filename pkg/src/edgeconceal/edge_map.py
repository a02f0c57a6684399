"""Binary edge map, per-block edge columns, and the carrier assignment.

Each block contributes one vertical slice of 8 edge bits. The slice is hidden
in a *different* block (its carrier) so that losing a block does not also
lose the edge information needed to conceal it.
"""

from __future__ import annotations

import numpy as np

from .errors import UnsupportedError
from .image_io import BLOCK, BlockGrid, Image, write_pgm

DEFAULT_THRESHOLD = 0.25
DEFAULT_COLUMN_OFFSET = 4

# assignment scheme ids stored in the stream header
HALF_GRID_SHIFT = 0

_SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
_SOBEL_Y = _SOBEL_X.T


def sobel_magnitude(raster: np.ndarray) -> np.ndarray:
    """Sobel gradient magnitude with half-sample symmetric (reflected) borders."""
    a = np.pad(np.asarray(raster, dtype=np.float64), 1, mode="symmetric")
    h, w = a.shape[0] - 2, a.shape[1] - 2
    gx = np.zeros((h, w))
    gy = np.zeros((h, w))
    for dy in range(3):
        for dx in range(3):
            window = a[dy:dy + h, dx:dx + w]
            gx += _SOBEL_X[dy, dx] * window
            gy += _SOBEL_Y[dy, dx] * window
    return np.hypot(gx, gy)


def detect_edges(image, threshold: float = DEFAULT_THRESHOLD) -> np.ndarray:
    """Binary edge map (uint8, 1 = edge) of an image or raster.

    A pixel is an edge when its Sobel magnitude reaches ``threshold`` times the
    largest magnitude in the image. A flat image has no edges.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must lie in (0, 1], got {threshold}")
    raster = image.pixels if isinstance(image, Image) else image
    mag = sobel_magnitude(raster)
    peak = mag.max()
    if peak == 0:
        return np.zeros(mag.shape, dtype=np.uint8)
    return (mag >= threshold * peak).astype(np.uint8)


def extract_column(edge_map: np.ndarray, block_index: int,
                   column_offset: int = DEFAULT_COLUMN_OFFSET) -> np.ndarray:
    """The 8 edge bits, top to bottom, of one column inside a block."""
    if not 0 <= column_offset < BLOCK:
        raise ValueError(f"column offset must be in 0..7, got {column_offset}")
    grid = BlockGrid.for_shape(*edge_map.shape)
    if not 0 <= block_index < grid.count:
        raise ValueError(f"block index {block_index} outside 0..{grid.count - 1}")
    br, bc = grid.origin(block_index)
    return edge_map[br * BLOCK:(br + 1) * BLOCK, bc * BLOCK + column_offset].astype(np.uint8)


def extract_all_columns(edge_map: np.ndarray,
                        column_offset: int = DEFAULT_COLUMN_OFFSET) -> np.ndarray:
    """Edge columns of every block, shape (count, 8)."""
    if not 0 <= column_offset < BLOCK:
        raise ValueError(f"column offset must be in 0..7, got {column_offset}")
    grid = BlockGrid.for_shape(*edge_map.shape)
    cols = edge_map[:, column_offset::BLOCK]  # (H, blocks_x)
    return (cols.reshape(grid.blocks_y, BLOCK, grid.blocks_x)
                .transpose(0, 2, 1)
                .reshape(grid.count, BLOCK)
                .astype(np.uint8))


def build_assignment(block_count: int) -> np.ndarray:
    """Carrier of each block: ``(i + block_count // 2) % block_count``.

    Fixed-point free for any ``block_count >= 2``.
    """
    if block_count < 2:
        raise UnsupportedError(
            f"carrier assignment requires at least 2 blocks, got {block_count}")
    return (np.arange(block_count) + block_count // 2) % block_count


def invert_assignment(assignment: np.ndarray) -> np.ndarray:
    """Source block for each carrier."""
    inverse = np.empty_like(assignment)
    inverse[assignment] = np.arange(len(assignment))
    return inverse


def payload_for_block(edge_map: np.ndarray, assignment: np.ndarray, carrier_index: int,
                      column_offset: int = DEFAULT_COLUMN_OFFSET) -> np.ndarray:
    if not 0 <= carrier_index < len(assignment):
        raise ValueError(f"carrier index {carrier_index} outside 0..{len(assignment) - 1}")
    (source,) = np.flatnonzero(assignment == carrier_index)
    return extract_column(edge_map, int(source), column_offset)


def payloads(edge_map: np.ndarray, assignment: np.ndarray,
             column_offset: int = DEFAULT_COLUMN_OFFSET) -> np.ndarray:
    """Payload carried by every block, shape (count, 8)."""
    return extract_all_columns(edge_map, column_offset)[invert_assignment(assignment)]


def write_edge_map(edge_map: np.ndarray, path, original_size=None) -> None:
    write_pgm(Image(edge_map.astype(np.uint8) * 255, original_size), path)

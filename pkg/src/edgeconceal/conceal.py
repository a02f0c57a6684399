"""Receiver: decode surviving packets, recover edge columns of lost blocks from
their carriers, and fill lost blocks by edge-stopped horizontal smoothing.

Each lost block gets two passes. The right pass starts from the right
neighbour's first column and sweeps leftwards; each new pixel is the rounded
mean of the (up to) three pixels beside it in the previous column. In rows
whose recovered edge bit is set the sweep stops at the edge column: the right
pass fills the edge column itself, the left pass stops just before it. The
two partial fills are then merged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import codec, qim
from .edge_map import build_assignment, invert_assignment
from .errors import DecodeError, StreamFormatError
from .image_io import BLOCK, LEVEL_OFFSET, MAXVAL, BlockGrid, Image, level_shift, round_half_away
from .stream import PacketStream

log = logging.getLogger(__name__)

Direction = Literal["from_right", "from_left"]


@dataclass
class ReceiverState:
    pixels: np.ndarray            # (H, W) int64, meaningful only where known
    known: np.ndarray             # per block
    lost: np.ndarray              # per block, as detected (channel mask + decode failures)
    edge_columns: dict[int, np.ndarray]
    grid: BlockGrid
    original_size: tuple[int, int]
    column_offset: int
    warnings: list[str] = field(default_factory=list)

    def block_view(self, index: int) -> np.ndarray:
        br, bc = self.grid.origin(index)
        return self.pixels[br * BLOCK:(br + 1) * BLOCK, bc * BLOCK:(bc + 1) * BLOCK]

    def image(self) -> Image:
        if not self.known.all():
            raise ValueError("image still has unknown blocks")
        return Image(self.pixels.astype(np.uint8), self.original_size)


def decode_received(stream: PacketStream, mask) -> ReceiverState:
    """Decode every surviving packet and collect the edge columns they carry."""
    grid = BlockGrid(stream.blocks_x, stream.blocks_y)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (grid.count,):
        raise StreamFormatError(f"mask has {mask.size} entries for {grid.count} blocks")
    survivors = {p.block_index: p for p in stream.packets}
    if any(mask[i] for i in survivors) or len(survivors) != int((~mask).sum()):
        raise StreamFormatError("loss mask does not match the packets present in the stream")

    lost = mask.copy()
    warnings = []
    indices, levels = [], []
    for i in sorted(survivors):
        try:
            levels.append(codec.decode_block(survivors[i].payload))
        except DecodeError as exc:
            msg = f"block {i}: undecodable packet treated as lost ({exc})"
            log.warning(msg)
            warnings.append(msg)
            lost[i] = True
            continue
        indices.append(i)

    pixels = np.full((stream.height, stream.width), LEVEL_OFFSET, dtype=np.int64)
    edge_columns: dict[int, np.ndarray] = {}
    if indices:
        levels = np.stack(levels)
        bits = qim.extract_blocks(levels)
        samples = level_shift(codec.inverse_dct(codec.dequantize(levels)), "inverse")
        for i, block in zip(indices, samples):
            br, bc = grid.origin(i)
            pixels[br * BLOCK:(br + 1) * BLOCK, bc * BLOCK:(bc + 1) * BLOCK] = block
        if grid.count >= 2:
            source = invert_assignment(build_assignment(grid.count))
            for i, b in zip(indices, bits):
                if lost[source[i]]:
                    edge_columns[int(source[i])] = b

    return ReceiverState(pixels, ~lost, lost, edge_columns, grid,
                         (stream.original_width, stream.original_height),
                         stream.column_offset, warnings)


def _rounded_mean(vals: list[int]) -> int:
    # exact half-away-from-zero rounding for non-negative integer samples
    return (2 * sum(vals) + len(vals)) // (2 * len(vals))


def smooth_pass(state: ReceiverState, block_index: int,
                direction: Direction) -> tuple[np.ndarray, np.ndarray]:
    """One directional smoothing sweep over a lost block.

    Returns (values, filled), both 8x8. If the source neighbour is missing or
    unknown nothing is filled.
    """
    values = np.zeros((BLOCK, BLOCK), dtype=np.int64)
    filled = np.zeros((BLOCK, BLOCK), dtype=bool)
    if direction not in ("from_right", "from_left"):
        raise ValueError(f"unknown direction {direction!r}")
    br, bc = state.grid.origin(block_index)
    step = 1 if direction == "from_right" else -1
    nc = bc + step
    if not 0 <= nc < state.grid.blocks_x or not state.known[state.grid.index(br, nc)]:
        return values, filled

    neighbour = state.block_view(state.grid.index(br, nc))
    prev = [int(v) for v in neighbour[:, 0 if step == 1 else BLOCK - 1]]
    prev_ok = [True] * BLOCK
    columns = range(BLOCK - 1, -1, -1) if step == 1 else range(BLOCK)

    edge = state.edge_columns.get(block_index)
    off = state.column_offset
    for c in columns:
        cur = [0] * BLOCK
        cur_ok = [False] * BLOCK
        for r in range(BLOCK):
            if edge is not None and edge[r]:
                # right pass owns the edge column, left pass halts before it
                if (step == 1 and c < off) or (step == -1 and c >= off):
                    continue
            if not prev_ok[r]:
                continue
            vals = [prev[rr] for rr in (r - 1, r, r + 1) if 0 <= rr < BLOCK and prev_ok[rr]]
            cur[r] = _rounded_mean(vals)
            cur_ok[r] = True
        values[:, c] = cur
        filled[:, c] = cur_ok
        prev, prev_ok = cur, cur_ok
    return values, filled


def combine_passes(right: tuple[np.ndarray, np.ndarray],
                   left: tuple[np.ndarray, np.ndarray]) -> np.ndarray:
    """Merge two sweeps: average where both filled, else whichever did.

    Pixels neither pass reached take the mean of the filled ones, or mid-gray
    if the block is entirely unfilled.
    """
    (rv, rf), (lv, lf) = right, left
    out = np.zeros((BLOCK, BLOCK), dtype=np.int64)
    both = rf & lf
    out[both] = round_half_away((rv[both] + lv[both]) / 2.0)
    out[rf & ~lf] = rv[rf & ~lf]
    out[lf & ~rf] = lv[lf & ~rf]
    any_filled = rf | lf
    if any_filled.any():
        fallback = int(round_half_away(out[any_filled].mean()))
    else:
        fallback = LEVEL_OFFSET
    out[~any_filled] = fallback
    return np.clip(out, 0, MAXVAL)


def conceal_block(state: ReceiverState, index: int) -> None:
    fill = combine_passes(smooth_pass(state, index, "from_right"),
                          smooth_pass(state, index, "from_left"))
    state.block_view(index)[:] = fill
    state.known[index] = True


def conceal_all(state: ReceiverState) -> Image:
    """Conceal every unknown block in raster order; concealed blocks then act as
    known neighbours for later ones."""
    for i in np.flatnonzero(~state.known):
        conceal_block(state, int(i))
    return state.image()


def gray_fill(state: ReceiverState) -> Image:
    """Baseline: unknown blocks set to mid-gray."""
    for i in np.flatnonzero(~state.known):
        state.block_view(int(i))[:] = LEVEL_OFFSET
        state.known[i] = True
    return state.image()

"""Grayscale raster type, PGM I/O, level shifting and 8x8 block partitioning."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import PgmFormatError, UnsupportedFormatError

BLOCK = 8
BIT_DEPTH = 8
LEVEL_OFFSET = 1 << (BIT_DEPTH - 1)
MAXVAL = (1 << BIT_DEPTH) - 1


@dataclass(frozen=True)
class Image:
    """8-bit grayscale raster.

    ``pixels`` has shape (height, width) and dtype uint8. ``original_size`` is
    the (width, height) before edge-replication padding; writers crop to it.
    """

    pixels: np.ndarray
    original_size: tuple[int, int] | None = field(default=None)

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.size == 0:
            raise ValueError(f"pixels must be a non-empty 2-D array, got shape {px.shape}")
        if px.dtype != np.uint8:
            if np.any(px < 0) or np.any(px > MAXVAL):
                raise ValueError("pixel values must lie in [0, 255]")
            px = px.astype(np.uint8)
        px = px.copy()
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)
        if self.original_size is None:
            object.__setattr__(self, "original_size", (px.shape[1], px.shape[0]))
        ow, oh = self.original_size
        if not (0 < ow <= px.shape[1] and 0 < oh <= px.shape[0]):
            raise ValueError(f"original size {self.original_size} exceeds raster {px.shape[::-1]}")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def bit_depth(self) -> int:
        return BIT_DEPTH

    def cropped(self) -> np.ndarray:
        ow, oh = self.original_size
        return self.pixels[:oh, :ow]


@dataclass(frozen=True)
class BlockGrid:
    """Raster ordering of 8x8 blocks: index = block_row * blocks_x + block_col."""

    blocks_x: int
    blocks_y: int

    @classmethod
    def for_shape(cls, height: int, width: int) -> BlockGrid:
        if height % BLOCK or width % BLOCK:
            raise ValueError(f"dimensions {width}x{height} are not multiples of {BLOCK}")
        return cls(width // BLOCK, height // BLOCK)

    @property
    def count(self) -> int:
        return self.blocks_x * self.blocks_y

    def origin(self, index: int) -> tuple[int, int]:
        if not 0 <= index < self.count:
            raise IndexError(f"block index {index} outside 0..{self.count - 1}")
        return divmod(index, self.blocks_x)

    def index(self, block_row: int, block_col: int) -> int:
        return block_row * self.blocks_x + block_col


def pad_to_block(pixels: np.ndarray) -> np.ndarray:
    """Replicate the last row/column up to the next multiple of 8."""
    h, w = pixels.shape
    return np.pad(pixels, ((0, -h % BLOCK), (0, -w % BLOCK)), mode="edge")


def _header_tokens(data: bytes, count: int) -> tuple[list[tuple[bytes, int]], int]:
    """Read ``count`` whitespace-separated tokens, skipping ``#`` comments.

    Returns the tokens with their start offsets and the offset just past the
    single whitespace byte that terminates the last token.
    """
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= n:
            raise PgmFormatError("unexpected end of header", pos)
        if data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        tokens.append((data[start:pos], start))
    if pos >= n:
        raise PgmFormatError("missing whitespace after header", pos)
    return tokens, pos + 1


def _header_int(token: bytes, offset: int, what: str) -> int:
    if not token.isdigit():
        raise PgmFormatError(f"invalid {what} {token!r}", offset)
    value = int(token)
    if value <= 0:
        raise PgmFormatError(f"{what} must be positive", offset)
    return value


def parse_pgm(data: bytes) -> Image:
    if len(data) < 2 or data[:2] not in (b"P5", b"P2"):
        raise PgmFormatError("not a P2/P5 PGM (bad magic)", 0)
    magic = data[:2]
    tokens, body_start = _header_tokens(data[2:], 3)
    (wt, wo), (ht, ho), (mt, mo) = tokens
    body_start += 2
    width = _header_int(wt, wo + 2, "width")
    height = _header_int(ht, ho + 2, "height")
    maxval = _header_int(mt, mo + 2, "maxval")
    if maxval != MAXVAL:
        raise UnsupportedFormatError(f"maxval {maxval} not supported (only 255)")

    count = width * height
    if magic == b"P5":
        body = data[body_start:body_start + count]
        if len(body) < count:
            raise PgmFormatError(f"expected {count} raster bytes, found {len(body)}",
                                 body_start + len(body))
        pixels = np.frombuffer(body, dtype=np.uint8).reshape(height, width)
    else:
        values = []
        pos = body_start
        for tok in data[body_start:].split():
            if len(values) == count:
                break
            pos = data.index(tok, pos)
            if not tok.isdigit() or int(tok) > MAXVAL:
                raise PgmFormatError(f"invalid sample {tok!r}", pos)
            values.append(int(tok))
            pos += len(tok)
        if len(values) < count:
            raise PgmFormatError(f"expected {count} samples, found {len(values)}", len(data))
        pixels = np.array(values, dtype=np.uint8).reshape(height, width)

    return Image(pad_to_block(pixels), original_size=(width, height))


def read_pgm(path: str | os.PathLike) -> Image:
    """Read a P5 or P2 PGM with maxval 255, padding to a multiple of 8."""
    with open(path, "rb") as f:
        return parse_pgm(f.read())


def write_pgm(image: Image, path: str | os.PathLike) -> None:
    """Write ``image`` as binary P5, cropped to its original size."""
    px = np.ascontiguousarray(image.cropped())
    header = f"P5\n{px.shape[1]} {px.shape[0]}\n{MAXVAL}\n".encode("ascii")
    with open(path, "wb") as f:
        f.write(header + px.tobytes())


def round_half_away(x):
    """Round to the nearest integer, ties away from zero."""
    x = np.asarray(x, dtype=np.float64)
    return (np.sign(x) * np.floor(np.abs(x) + 0.5)).astype(np.int64)


def level_shift(raster, direction: Literal["forward", "inverse"] = "forward") -> np.ndarray:
    """Center samples around zero (forward) or restore the 0..255 range (inverse).

    The inverse rounds non-integer input half away from zero before clamping.
    """
    if isinstance(raster, Image):
        raster = raster.pixels
    a = np.asarray(raster)
    if direction == "forward":
        return a.astype(np.int16) - LEVEL_OFFSET
    if direction == "inverse":
        if not np.issubdtype(a.dtype, np.integer):
            a = round_half_away(a)
        return np.clip(a.astype(np.int64) + LEVEL_OFFSET, 0, MAXVAL).astype(np.uint8)
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def partition(raster) -> np.ndarray:
    """Split a raster into its 8x8 blocks, shape (count, 8, 8), raster order."""
    if isinstance(raster, Image):
        raster = raster.pixels
    a = np.asarray(raster)
    grid = BlockGrid.for_shape(*a.shape)
    return (a.reshape(grid.blocks_y, BLOCK, grid.blocks_x, BLOCK)
             .swapaxes(1, 2)
             .reshape(grid.count, BLOCK, BLOCK)
             .copy())


def assemble(blocks: np.ndarray, grid: BlockGrid) -> np.ndarray:
    """Inverse of :func:`partition`."""
    blocks = np.asarray(blocks)
    if blocks.shape != (grid.count, BLOCK, BLOCK):
        raise ValueError(f"expected {grid.count} blocks, got shape {blocks.shape}")
    return (blocks.reshape(grid.blocks_y, grid.blocks_x, BLOCK, BLOCK)
                  .swapaxes(1, 2)
                  .reshape(grid.blocks_y * BLOCK, grid.blocks_x * BLOCK)
                  .copy())

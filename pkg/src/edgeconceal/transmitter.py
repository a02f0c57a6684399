"""Sender side: hide each block's edge column in its carrier and entropy-code."""

from __future__ import annotations

import numpy as np

from . import codec, qim
from .edge_map import (DEFAULT_COLUMN_OFFSET, DEFAULT_THRESHOLD, HALF_GRID_SHIFT,
                       build_assignment, detect_edges, payloads)
from .image_io import BlockGrid, Image, level_shift, partition
from .stream import Packet, PacketStream, float32


def quantized_ratios(image: Image) -> np.ndarray:
    """Unrounded quantizer ratios of every block, shape (count, 8, 8)."""
    return codec.quantize(codec.forward_dct(partition(level_shift(image, "forward"))))


def embed_levels(image: Image, edge_threshold: float = DEFAULT_THRESHOLD,
                 column_offset: int = DEFAULT_COLUMN_OFFSET):
    """Watermarked quantized levels plus the edge map and per-carrier payloads."""
    grid = BlockGrid.for_shape(image.height, image.width)
    assignment = build_assignment(grid.count)
    edges = detect_edges(image, edge_threshold)
    carried = payloads(edges, assignment, column_offset)
    levels = qim.embed_blocks(quantized_ratios(image), carried)
    return levels, edges, carried


def encode_image(image: Image, edge_threshold: float = DEFAULT_THRESHOLD,
                 column_offset: int = DEFAULT_COLUMN_OFFSET) -> PacketStream:
    """Full transmitter: edge map, watermark embedding, one packet per block."""
    edge_threshold = float32(edge_threshold)
    levels, _, _ = embed_levels(image, edge_threshold, column_offset)
    packets = tuple(Packet(i, codec.encode_block(b)) for i, b in enumerate(levels))
    ow, oh = image.original_size
    return PacketStream(image.width, image.height, ow, oh, column_offset, HALF_GRID_SHIFT,
                        edge_threshold, packets)

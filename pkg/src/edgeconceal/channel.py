"""Independent (Bernoulli) packet-loss channel.

The generator is numpy's PCG64 seeded with the 64-bit ``seed``. One float64
is drawn per packet with ``Generator.random`` in ascending block order, and a
packet is dropped when its draw is below ``loss_probability``. For a given
seed the mask depends only on the block count and p.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StreamFormatError
from .stream import PacketStream


@dataclass(frozen=True)
class ChannelConfig:
    loss_probability: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.loss_probability <= 1.0:
            raise ValueError(f"loss probability must lie in [0, 1], got {self.loss_probability}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


def loss_draws(block_count: int, seed: int) -> np.ndarray:
    return np.random.Generator(np.random.PCG64(seed)).random(block_count)


def transmit(stream: PacketStream, config: ChannelConfig) -> tuple[PacketStream, np.ndarray]:
    """Drop packets; returns the surviving stream and the per-block loss mask."""
    lost = loss_draws(stream.block_count, config.seed) < config.loss_probability
    survivors = [p for p in stream.packets if not lost[p.block_index]]
    # blocks already missing from the input stay lost
    present = np.zeros(stream.block_count, dtype=bool)
    present[[p.block_index for p in stream.packets]] = True
    return stream.with_packets(survivors), lost | ~present


def loss_rate(mask) -> float:
    mask = np.asarray(mask, dtype=bool)
    if mask.size == 0:
        raise ValueError("loss mask is empty")
    return float(mask.mean())


def mask_to_bytes(mask) -> bytes:
    return np.asarray(mask, dtype=np.uint8).tobytes()


def mask_from_bytes(data: bytes) -> np.ndarray:
    a = np.frombuffer(data, dtype=np.uint8)
    if np.any(a > 1):
        raise StreamFormatError("mask bytes must be 0 or 1")
    return a.astype(bool)


def write_mask(mask, path) -> None:
    with open(path, "wb") as f:
        f.write(mask_to_bytes(mask))


def read_mask(path) -> np.ndarray:
    with open(path, "rb") as f:
        return mask_from_bytes(f.read())

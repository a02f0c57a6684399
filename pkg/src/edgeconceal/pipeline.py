"""End-to-end runs and the loss-probability sweep."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import conceal
from .channel import ChannelConfig, transmit
from .edge_map import DEFAULT_COLUMN_OFFSET, DEFAULT_THRESHOLD
from .image_io import Image, read_pgm
from .metrics import PsnrReport, mse, psnr_from_mse
from .stream import PacketStream
from .transmitter import encode_image

log = logging.getLogger(__name__)

DEFAULT_PROBABILITIES = (0.01, 0.05, 0.10, 0.20, 0.30, 0.50, 0.70)


@dataclass
class ExperimentConfig:
    images: list[Path]
    probabilities: tuple[float, ...] = DEFAULT_PROBABILITIES
    trials: int = 20
    base_seed: int = 0
    edge_threshold: float = DEFAULT_THRESHOLD
    column_offset: int = DEFAULT_COLUMN_OFFSET
    out_dir: Path = field(default_factory=lambda: Path("results"))

    def __post_init__(self):
        if not self.images:
            raise ValueError("no input images given")
        if any(not 0.0 <= p <= 1.0 for p in self.probabilities):
            raise ValueError("loss probabilities must lie in [0, 1]")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


def receive(stream: PacketStream, mask, baseline: bool = False) -> Image:
    """Decode a post-channel stream and conceal (or gray-fill) the lost blocks."""
    state = conceal.decode_received(stream, mask)
    return conceal.gray_fill(state) if baseline else conceal.conceal_all(state)


def run_trial(original: Image, stream: PacketStream, loss_probability: float, seed: int,
              baseline: bool = False) -> tuple[Image, float]:
    """Transmit, receive and score one realisation. Returns (image, mse)."""
    lossy, mask = transmit(stream, ChannelConfig(loss_probability, seed))
    out = receive(lossy, mask, baseline)
    return out, mse(original, out)


def sweep(config: ExperimentConfig) -> list[PsnrReport]:
    """Every (image, p, trial) combination; trial t uses seed base_seed + t."""
    reports = []
    for path in sorted(config.images, key=str):
        name = Path(path).stem
        try:
            original = read_pgm(path)
            stream = encode_image(original, config.edge_threshold, config.column_offset)
        except Exception as exc:  # noqa: BLE001 - recorded per row, sweep continues
            log.warning("%s: transmitter failed: %s", name, exc)
            stream = None
        for p in sorted(config.probabilities):
            for t in range(config.trials):
                seed = config.base_seed + t
                if stream is None:
                    reports.append(PsnrReport(name, p, seed, math.nan, math.nan))
                    continue
                try:
                    _, m = run_trial(original, stream, p, seed)
                    reports.append(PsnrReport(name, p, seed, m, psnr_from_mse(m)))
                except Exception as exc:  # noqa: BLE001
                    log.warning("%s p=%g seed=%d failed: %s", name, p, seed, exc)
                    reports.append(PsnrReport(name, p, seed, math.nan, math.nan))
    return reports


def summarize(reports: list[PsnrReport]) -> dict[tuple[str, float], tuple[float, float]]:
    """Mean and standard deviation of PSNR per (image, p)."""
    groups: dict[tuple[str, float], list[float]] = {}
    for r in reports:
        groups.setdefault((r.image, r.loss_probability), []).append(r.psnr_db)
    return {k: (float(np.mean(v)), float(np.std(v))) for k, v in sorted(groups.items())}


def format_summary(summary) -> str:
    """Table with one row per image and one PSNR column per loss probability."""
    images = sorted({k[0] for k in summary})
    probs = sorted({k[1] for k in summary})
    head = ["image"] + [f"p={p:.2f}" for p in probs]
    lines = ["\t".join(head)]
    for name in images:
        cells = [name] + [f"{summary[(name, p)][0]:.2f}" if (name, p) in summary else "-"
                          for p in probs]
        lines.append("\t".join(cells))
    means = ["average"]
    for p in probs:
        vals = [summary[(n, p)][0] for n in images if (n, p) in summary]
        means.append(f"{np.mean(vals):.2f}")
    lines.append("\t".join(means))
    lines.append("")
    lines.append("image\tloss_prob\tmean_psnr_db\tstd_psnr_db")
    for (name, p), (mean, std) in summary.items():
        lines.append(f"{name}\t{p:.4f}\t{mean:.4f}\t{std:.4f}")
    return "\n".join(lines) + "\n"

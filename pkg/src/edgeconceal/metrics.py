"""MSE / PSNR on the unpadded image extent, and CSV report rows."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .image_io import MAXVAL, Image

CSV_FIELDS = ("image", "loss_prob", "seed", "mse", "psnr_db")


def _raster(x) -> np.ndarray:
    return x.cropped() if isinstance(x, Image) else np.asarray(x)


def mse(a, b) -> float:
    a, b = _raster(a), _raster(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    d = a.astype(np.float64) - b.astype(np.float64)
    return float(np.mean(d * d))


def psnr_from_mse(m: float) -> float:
    if m == 0:
        return math.inf
    return 10.0 * math.log10(MAXVAL ** 2 / m)


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB; ``math.inf`` for identical images."""
    return psnr_from_mse(mse(a, b))


@dataclass(frozen=True)
class PsnrReport:
    image: str
    loss_probability: float
    seed: int
    mse: float
    psnr_db: float

    def row(self) -> list[str]:
        return [self.image, f"{self.loss_probability:.4f}", str(self.seed),
                f"{self.mse:.6f}", f"{self.psnr_db:.6f}"]


def write_csv(reports, path) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in reports:
            w.writerow(r.row())

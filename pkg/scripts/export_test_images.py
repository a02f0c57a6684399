"""Export grayscale test images bundled with scikit-image as PGM into data/."""

from pathlib import Path

import numpy as np
from skimage import color, data

from edgeconceal.image_io import Image, write_pgm

OUT = Path(__file__).resolve().parent.parent / "data"

SOURCES = {
    "camera": data.camera,
    "moon": data.moon,
    "coins": data.coins,
    "astronaut": lambda: np.round(color.rgb2gray(data.astronaut()) * 255).astype(np.uint8),
}


def main():
    OUT.mkdir(exist_ok=True)
    for name, load in SOURCES.items():
        write_pgm(Image(load()), OUT / f"{name}.pgm")
        print(OUT / f"{name}.pgm")


if __name__ == "__main__":
    main()

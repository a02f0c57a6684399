"""Lost-block concealment for block-coded image transmission.

The sender hides a one-column slice of each block's binary edge map inside a
different block by even/odd rounding of quantized DCT coefficients. The
receiver recovers the slices of lost blocks and uses them to stop a
bidirectional horizontal smoothing at edges.
"""

from .image_io import Image, read_pgm, write_pgm
from .transmitter import encode_image
from .channel import ChannelConfig, transmit
from .conceal import conceal_all, decode_received
from .metrics import mse, psnr

__all__ = ["Image", "read_pgm", "write_pgm", "encode_image", "ChannelConfig", "transmit",
           "decode_received", "conceal_all", "mse", "psnr"]

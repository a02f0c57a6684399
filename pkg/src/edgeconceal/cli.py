"""Command-line interface.

Exit codes:
    0  success
    1  unexpected internal error
    2  bad arguments
    3  malformed input (PGM, stream or mask)
    4  I/O failure
    5  unsupported input (e.g. a single-block image)
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import conceal
from .channel import ChannelConfig, read_mask, transmit, write_mask
from .edge_map import DEFAULT_COLUMN_OFFSET, DEFAULT_THRESHOLD, detect_edges, write_edge_map
from .errors import PgmFormatError, StreamFormatError, UnsupportedError, UnsupportedFormatError
from .image_io import BLOCK, Image, read_pgm, write_pgm
from .metrics import psnr, write_csv
from .pipeline import DEFAULT_PROBABILITIES, ExperimentConfig, format_summary, summarize, sweep
from .stream import read_stream, write_stream
from .transmitter import encode_image

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_FORMAT, EXIT_IO, EXIT_UNSUPPORTED = range(6)
OUT_ENV = "EDGECONCEAL_OUT"

log = logging.getLogger("edgeconceal")


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"loss probability must lie in [0, 1], got {p}")
    return p


def _threshold(text: str) -> float:
    t = float(text)
    if not 0.0 < t <= 1.0:
        raise argparse.ArgumentTypeError(f"edge threshold must lie in (0, 1], got {t}")
    return t


def _column(text: str) -> int:
    c = int(text)
    if not 0 <= c < BLOCK:
        raise argparse.ArgumentTypeError(f"column offset must be in 0..7, got {c}")
    return c


def _seed(text: str) -> int:
    s = int(text)
    if not 0 <= s < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return s


def _default_out(args_out) -> Path:
    if args_out is not None:
        return Path(args_out)
    return Path(os.environ.get(OUT_ENV, "results"))


def _decode_image(stream) -> Image:
    return conceal.conceal_all(conceal.decode_received(stream, np.zeros(stream.block_count, bool)))


def cmd_embed(args) -> int:
    image = read_pgm(args.input)
    stream = encode_image(image, args.edge_threshold, args.column_offset)
    write_stream(stream, args.out)
    if args.edge_map:
        write_edge_map(detect_edges(image, stream.edge_threshold), args.edge_map,
                       image.original_size)
    print(f"packets: {len(stream.packets)}")
    print(f"watermarked PSNR: {psnr(image, _decode_image(stream)):.4f} dB")
    return EXIT_OK


def cmd_transmit(args) -> int:
    stream = read_stream(args.stream)
    lossy, mask = transmit(stream, ChannelConfig(args.loss_prob, args.seed))
    write_stream(lossy, args.out)
    write_mask(mask, args.mask)
    print(f"lost {int(mask.sum())} of {mask.size} packets ({mask.mean():.4f})")
    return EXIT_OK


def _lost_map(state_lost, stream) -> Image:
    px = np.zeros((stream.height, stream.width), dtype=np.uint8)
    for i in np.flatnonzero(state_lost):
        br, bc = divmod(int(i), stream.blocks_x)
        px[br * BLOCK:(br + 1) * BLOCK, bc * BLOCK:(bc + 1) * BLOCK] = 255
    return Image(px, (stream.original_width, stream.original_height))


def cmd_conceal(args) -> int:
    stream = read_stream(args.stream)
    mask = read_mask(args.mask)
    state = conceal.decode_received(stream, mask)
    lost = state.lost.copy()
    out = conceal.gray_fill(state) if args.gray else conceal.conceal_all(state)
    write_pgm(out, args.out)
    if args.lost_map:
        write_pgm(_lost_map(lost, stream), args.lost_map)
    for w in state.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.reference:
        print(f"PSNR: {psnr(read_pgm(args.reference), out):.4f} dB")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    out_dir = _default_out(args.out)
    config = ExperimentConfig(
        images=[Path(p) for p in args.images],
        probabilities=tuple(args.loss_prob or DEFAULT_PROBABILITIES),
        trials=args.trials, base_seed=args.seed, edge_threshold=args.edge_threshold,
        column_offset=args.column_offset, out_dir=out_dir)
    reports = sweep(config)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_csv(reports, out_dir / "report.csv")
    text = format_summary(summarize(reports))
    (out_dir / "summary.tsv").write_text(text)
    print(text, end="")
    return EXIT_OK


def cmd_pipeline(args) -> int:
    out_dir = _default_out(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem
    image = read_pgm(args.input)
    stream = encode_image(image, args.edge_threshold, args.column_offset)
    write_stream(stream, out_dir / f"{stem}.esl")
    lossy, mask = transmit(stream, ChannelConfig(args.loss_prob, args.seed))
    write_stream(lossy, out_dir / f"{stem}.lossy.esl")
    write_mask(mask, out_dir / f"{stem}.mask")
    out = conceal.conceal_all(conceal.decode_received(lossy, mask))
    write_pgm(out, out_dir / f"{stem}.concealed.pgm")
    write_pgm(_lost_map(mask, stream), out_dir / f"{stem}.lost.pgm")
    gray = conceal.gray_fill(conceal.decode_received(lossy, mask))
    print(f"lost {int(mask.sum())} of {mask.size} packets")
    print(f"PSNR no loss:   {psnr(image, _decode_image(stream)):.4f} dB")
    print(f"PSNR gray fill: {psnr(image, gray):.4f} dB")
    print(f"PSNR concealed: {psnr(image, out):.4f} dB")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgeconceal",
        description="Edge-map watermarking and spatial smoothing for lost-block concealment.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def coding_flags(p):
        p.add_argument("--edge-threshold", type=_threshold, default=DEFAULT_THRESHOLD,
                       help="fraction of the peak Sobel magnitude marking an edge")
        p.add_argument("--column-offset", type=_column, default=DEFAULT_COLUMN_OFFSET,
                       help="edge column within each 8x8 block (0..7)")

    p = sub.add_parser("embed", help="watermark and encode a PGM into a packet stream")
    p.add_argument("input")
    p.add_argument("--out", "-o", required=True, help="output .esl stream")
    p.add_argument("--edge-map", help="also write the binary edge map as PGM")
    coding_flags(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("transmit", help="simulate independent packet loss")
    p.add_argument("stream")
    p.add_argument("--loss-prob", type=_probability, required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", "-o", required=True, help="post-channel .esl stream")
    p.add_argument("--mask", required=True, help="loss mask file (one 0/1 byte per block)")
    p.set_defaults(func=cmd_transmit)

    p = sub.add_parser("conceal", help="decode a lossy stream and conceal lost blocks")
    p.add_argument("stream")
    p.add_argument("--mask", required=True)
    p.add_argument("--out", "-o", required=True, help="output PGM")
    p.add_argument("--lost-map", help="also write a PGM marking lost blocks")
    p.add_argument("--reference", help="original PGM; prints PSNR against it")
    p.add_argument("--gray", action="store_true", help="fill lost blocks with 128 instead")
    p.set_defaults(func=cmd_conceal)

    p = sub.add_parser("evaluate", help="PSNR sweep over loss probabilities")
    p.add_argument("images", nargs="*")
    p.add_argument("--loss-prob", type=_probability, action="append",
                   help="repeatable; default 0.01 0.05 0.10 0.20 0.30 0.50 0.70")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=_seed, default=0, help="base seed; trial t uses seed + t")
    p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./results)")
    coding_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("pipeline", help="embed, transmit and conceal in one go")
    p.add_argument("input")
    p.add_argument("--loss-prob", type=_probability, default=0.10)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./results)")
    coding_flags(p)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "evaluate" and not args.images:
        print("error: no input images given", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (PgmFormatError, UnsupportedFormatError, StreamFormatError) as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except UnsupportedError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

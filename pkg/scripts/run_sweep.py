"""PSNR vs. packet-loss sweep over the bundled test images, with a plot.

    python scripts/run_sweep.py --trials 20 --out results/sweep

Writes report.csv, summary.tsv and psnr_vs_loss.png (needs matplotlib).
Also runs the gray-fill baseline so the gain from concealment is visible.
"""

import argparse
from pathlib import Path

from edgeconceal.image_io import read_pgm
from edgeconceal.metrics import PsnrReport, psnr_from_mse, write_csv
from edgeconceal.pipeline import (DEFAULT_PROBABILITIES, format_summary, run_trial, summarize)
from edgeconceal.transmitter import encode_image

DATA = Path(__file__).resolve().parent.parent / "data"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("images", nargs="*", default=sorted(DATA.glob("*.pgm")))
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("results/sweep"))
    args = ap.parse_args()

    concealed, gray = [], []
    for path in args.images:
        path = Path(path)
        im = read_pgm(path)
        stream = encode_image(im)
        for p in DEFAULT_PROBABILITIES:
            for t in range(args.trials):
                seed = args.seed + t
                for baseline, out in ((False, concealed), (True, gray)):
                    _, m = run_trial(im, stream, p, seed, baseline=baseline)
                    out.append(PsnrReport(path.stem, p, seed, m, psnr_from_mse(m)))
            print(f"{path.stem} p={p:.2f} done")

    args.out.mkdir(parents=True, exist_ok=True)
    write_csv(concealed, args.out / "report.csv")
    write_csv(gray, args.out / "report_grayfill.csv")
    summary = summarize(concealed)
    (args.out / "summary.tsv").write_text(format_summary(summary))
    print(format_summary(summary))

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed; skipping plot")
        return
    fig, ax = plt.subplots(figsize=(6, 4))
    gray_summary = summarize(gray)
    for name in sorted({k[0] for k in summary}):
        ps = sorted(p for n, p in summary if n == name)
        line, = ax.plot(ps, [summary[(name, p)][0] for p in ps], marker="o", label=name)
        ax.plot(ps, [gray_summary[(name, p)][0] for p in ps], ls=":", color=line.get_color())
    ax.set_xlabel("packet loss probability")
    ax.set_ylabel("PSNR (dB)")
    ax.set_title("concealed (solid) vs. gray fill (dotted)")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out / "psnr_vs_loss.png", dpi=120)
    print(args.out / "psnr_vs_loss.png")


if __name__ == "__main__":
    main()

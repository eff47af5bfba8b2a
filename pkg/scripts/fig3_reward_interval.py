"""Optimal reward interval against beta at alpha = 2, with the closed-form estimate."""
import argparse
from pathlib import Path

import numpy as np

from presentbias import io
from presentbias.scheduler import interval_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--T", type=int, default=1000)
    ap.add_argument("--start", type=float, default=0.40)
    ap.add_argument("--stop", type=float, default=0.49)
    ap.add_argument("--step", type=float, default=0.0025)
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    betas = np.arange(args.start, args.stop + args.step / 2, args.step)
    rows = interval_sweep(args.T, betas)
    for beta, lo, hi, approx in rows:
        print(f"beta={beta:.4f} segment length {lo}..{hi} estimate {approx if approx is not None else '-'}")
    (out / "fig3.csv").write_text(io.csv_text(["beta", "min_len", "max_len", "nearly_optimal"], rows))
    with_est = [r for r in rows if r[3] is not None]
    series = [
        ("DP min", [r[0] for r in rows], [r[1] for r in rows]),
        ("DP max", [r[0] for r in rows], [r[2] for r in rows]),
        ("estimate", [r[0] for r in with_est], [r[3] for r in with_est]),
    ]
    (out / "fig3.svg").write_text(io.svg_lines(series, f"reward interval, T={args.T}, alpha=2", "beta", "length"))


if __name__ == "__main__":
    main()

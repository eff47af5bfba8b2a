"""u_t curves: best final progress when the agent quits exactly at step t."""
import argparse
from pathlib import Path

import numpy as np

from presentbias import io
from presentbias.goal import u_curve
from presentbias.threshold import is_tai


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--T", type=int, default=100)
    ap.add_argument("--beta", type=float, default=0.2)
    ap.add_argument("--alphas", default="1.2,2,5,10")
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    series, rows = [], []
    ts = np.arange(1, args.T + 1)
    for alpha in (float(a) for a in args.alphas.split(",")):
        if not is_tai(args.beta, args.T, alpha):
            print(f"alpha={alpha:g}: beta={args.beta} is not TAI, skipped")
            continue
        u = u_curve(args.T, alpha, args.beta, 1.0)
        # normalise by u_T so the curves share a scale
        series.append((f"alpha={alpha:g}", ts, u / u[-1]))
        rows += [(alpha, int(t), float(v)) for t, v in zip(ts, u)]
        print(f"alpha={alpha:<4g} argmax u_t = {int(np.argmax(u)) + 1:<4d} max/u_T = {u.max() / u[-1]:.4f}")
    (out / "fig2.csv").write_text(io.csv_text(["alpha", "t", "u"], rows))
    (out / "fig2.svg").write_text(io.svg_lines(series, f"u_t / u_T, T={args.T}, beta={args.beta:g}", "t", "u_t/u_T"))


if __name__ == "__main__":
    main()

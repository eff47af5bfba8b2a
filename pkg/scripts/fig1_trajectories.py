"""State sequences x_t for a range of biases at fixed T, alpha, theta, R."""
import argparse
from pathlib import Path

from presentbias import io
from presentbias.model import TaskParams, trajectory


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--T", type=int, default=10)
    ap.add_argument("--alpha", type=float, default=2.0)
    ap.add_argument("--betas", default="1.0,0.9,0.6,0.3")
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    series, rows = [], []
    for beta in (float(b) for b in args.betas.split(",")):
        tr = trajectory(TaskParams(args.T, args.alpha, beta, 1.0, 1.0))
        series.append((f"beta={beta:g}", range(args.T + 1), tr.xs))
        rows += [(beta, t, x) for t, x in enumerate(tr.xs)]
        print(f"beta={beta:<5g} t*={tr.t_star:<3d} x = " + " ".join(f"{x:.3f}" for x in tr.xs))
    (out / "fig1.csv").write_text(io.csv_text(["beta", "t", "x"], rows))
    (out / "fig1.svg").write_text(io.svg_lines(series, f"x_t, T={args.T}, alpha={args.alpha:g}", "t", "x_t"))


if __name__ == "__main__":
    main()

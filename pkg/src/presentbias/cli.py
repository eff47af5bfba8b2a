"""Command-line front end.

Exit codes: 0 ok, 1 verification failed, 2 domain error, 3 resource error,
4 regime error.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import goal, io, oracle, scheduler, threshold
from .errors import DomainError, RegimeError, ResourceError
from .model import TaskParams, boundary_margins, trajectory

log = logging.getLogger("presentbias")

EXIT_OK, EXIT_FAILED, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_REGIME = 0, 1, 2, 3, 4
BOUNDARY_RTOL = 1e-9
FORMATS = ("json", "csv", "svg")


@dataclass
class SweepConfig:
    T: list = field(default_factory=lambda: [10])
    alpha: list = field(default_factory=lambda: [2.0])
    beta: list = field(default_factory=lambda: [0.5])
    theta: list = field(default_factory=lambda: [1.0])
    R: list = field(default_factory=lambda: [1.0])
    out: str = "sweep_out"
    format: str = "csv"

    def __post_init__(self):
        for name in ("T", "alpha", "beta", "theta", "R"):
            if not getattr(self, name):
                raise DomainError(f"sweep grid '{name}' is empty")
        if self.format not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}, got {self.format!r}")
        self.T = [int(v) for v in self.T]
        list(self.tuples())  # TaskParams validates every combination

    def tuples(self):
        for T, a, b, th, R in itertools.product(self.T, self.alpha, self.beta, self.theta, self.R):
            yield TaskParams(T, a, b, th, R)

    @classmethod
    def parse(cls, text: str) -> "SweepConfig":
        """Read ``key = v1, v2, ...`` lines; ``#`` starts a comment."""
        kw = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"line {lineno}: expected key=value, got {raw!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            if key in ("out", "format"):
                kw[key] = value
            elif key in ("T", "alpha", "beta", "theta", "R"):
                try:
                    kw[key] = [float(v) for v in value.split(",") if v.strip()]
                except ValueError as exc:
                    raise DomainError(f"line {lineno}: {exc}") from None
            else:
                raise DomainError(f"line {lineno}: unknown key {key!r}")
        return cls(**kw)


def _write(out: Path, name: str, text: str) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text)
    return path


def _params(args) -> TaskParams:
    return TaskParams(args.T, args.alpha, args.beta, args.theta, args.R)


def _warn_boundary(params: TaskParams):
    margins = boundary_margins(params)
    for t in np.flatnonzero(margins < BOUNDARY_RTOL):
        log.warning("q_%d is within %.0e of R/theta^alpha; the abandonment decision is numerically fragile",
                    t, BOUNDARY_RTOL)


def cmd_trajectory(args) -> int:
    params = _params(args)
    _warn_boundary(params)
    traj = trajectory(params)
    out = Path(args.out)
    _write(out, "trajectory.csv", traj.to_csv())
    if args.format == "json":
        _write(out, "trajectory.json", io.dumps(traj.to_dict()))
    series = [("closed form", range(params.T + 1), traj.xs)]
    if args.oracle:
        grid = oracle.GridConfig(n_points=args.grid, refine_rounds=args.refine)
        report = oracle.compare(params, grid)
        _write(out, "oracle_report.json", io.dumps(report.to_dict()))
        series.append(("grid oracle", range(params.T + 1), oracle.oracle_trajectory(params, grid).xs))
    if args.format == "svg":
        title = f"T={params.T} alpha={params.alpha:g} beta={params.beta:g} theta={params.theta:g} R={params.R:g}"
        _write(out, "trajectory.svg", io.svg_lines(series, title, "t", "x_t"))
    sys.stdout.write(io.dumps(traj.to_dict()))
    return EXIT_OK


def cmd_threshold(args) -> int:
    res = threshold.beta0_exact(args.T, args.alpha, args.tol)
    text = io.dumps(res.to_dict())
    _write(Path(args.out), "threshold.json", text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_goal(args) -> int:
    TaskParams(args.T, args.alpha, args.beta, 0.0, args.R)
    sol = goal.optimal_goal(args.T, args.alpha, args.beta, args.R, allow_exploitative=args.allow_exploitative)
    out = Path(args.out)
    text = io.dumps(sol.to_dict())
    _write(out, "goal.json", text)
    if args.format in ("csv", "svg"):
        u = goal.u_curve(args.T, args.alpha, args.beta, args.R)
        ts = list(range(1, args.T + 1))
        _write(out, "u_curve.csv", io.csv_text(["t", "u"], zip(ts, u)))
        if args.format == "svg":
            title = f"u_t: T={args.T} alpha={args.alpha:g} beta={args.beta:g} R={args.R:g}"
            _write(out, "u_curve.svg", io.svg_lines([(f"beta={args.beta:g}", ts, u)], title, "t", "u_t"))
    sys.stdout.write(text)
    return EXIT_OK


def _parse_range(text: str) -> list:
    try:
        start, stop, step = (float(s) for s in text.split(":"))
    except ValueError:
        raise DomainError(f"--beta-sweep expects START:STOP:STEP, got {text!r}") from None
    if step <= 0 or stop < start:
        raise DomainError(f"--beta-sweep needs STEP > 0 and STOP >= START, got {text!r}")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def cmd_schedule(args) -> int:
    out = Path(args.out)
    if args.beta_sweep:
        betas = _parse_range(args.beta_sweep)
        rows = scheduler.interval_sweep(args.T, betas, args.alpha, args.R)
        _write(out, "interval_sweep.csv", io.csv_text(["beta", "min_len", "max_len", "nearly_optimal"], rows))
        if args.format == "svg":
            bs = [r[0] for r in rows]
            series = [("shortest segment", bs, [r[1] for r in rows]), ("longest segment", bs, [r[2] for r in rows])]
            approx = [(r[0], r[3]) for r in rows if r[3] is not None]
            if approx:
                series.append(("nearly optimal", [a for a, _ in approx], [b for _, b in approx]))
            _write(out, "interval_sweep.svg",
                   io.svg_lines(series, f"optimal reward interval, T={args.T}, alpha={args.alpha:g}", "beta", "length"))
        sys.stdout.write(io.csv_text(["beta", "min_len", "max_len", "nearly_optimal"], rows))
        return EXIT_OK
    if args.beta is None:
        raise DomainError("--beta is required unless --beta-sweep is given")
    sched, table = scheduler.optimal_schedule(args.T, args.alpha, args.beta, args.R)
    text = io.dumps(sched.to_dict())
    _write(out, "schedule.json", text)
    if table is not None and args.format in ("csv", "svg"):
        _write(out, "dp_table.csv", table.to_csv())
    sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = oracle.GridConfig(n_points=args.grid, refine_rounds=args.refine)
    single = [args.T, args.alpha, args.beta]
    if any(v is not None for v in single):
        if any(v is None for v in single):
            raise DomainError("verify needs all of --T --alpha --beta for a single case (or none for the default grid)")
        cases = [TaskParams(args.T, args.alpha, args.beta, args.theta, args.R)]
    else:
        cases = list(oracle.default_grid_params())
    reports = [oracle.compare(p, grid) for p in cases]
    worst = max(reports, key=lambda r: r.max_abs_err / r.grid_spacing)
    summary = {
        "max_abs_err": worst.max_abs_err,
        "grid_spacing": worst.grid_spacing,
        "per_t": worst.per_t,
        "worst_params": worst.params.to_dict(),
        "n_cases": len(reports),
        "n_within_3h": sum(r.within_tolerance for r in reports),
        "t_star_mismatches": sum(r.t_star_oracle != r.t_star_analytic for r in reports),
    }
    if args.refine >= 1:
        summary["error_halving_ratio"] = oracle.error_halving_ratio(reports)
    if args.cases:
        summary["cases"] = [r.to_dict() for r in reports]
    text = io.dumps(summary)
    _write(Path(args.out), "verify.json", text)
    sys.stdout.write(text)
    return EXIT_OK if summary["n_within_3h"] == len(reports) else EXIT_FAILED


def cmd_sweep(args) -> int:
    cfg = SweepConfig.parse(Path(args.config).read_text())
    if args.out is not None:
        cfg.out = args.out
    if args.format is not None:
        cfg.format = args.format
    out = Path(cfg.out)
    index = []
    for p in cfg.tuples():
        _warn_boundary(p)
        traj = trajectory(p)
        stem = f"traj_T{p.T}_a{p.alpha:g}_b{p.beta:g}_th{p.theta:g}_R{p.R:g}"
        if cfg.format == "json":
            _write(out, stem + ".json", io.dumps(traj.to_dict()))
        else:
            _write(out, stem + ".csv", traj.to_csv())
        if cfg.format == "svg":
            _write(out, stem + ".svg", io.svg_lines([(stem, range(p.T + 1), traj.xs)], stem, "t", "x_t"))
        index.append((p.T, p.alpha, p.beta, p.theta, p.R, traj.t_star, traj.xs[-1]))
    _write(out, "index.csv", io.csv_text(["T", "alpha", "beta", "theta", "R", "t_star", "x_T"], index))
    sys.stdout.write(f"wrote {len(index)} trajectories to {out}\n")
    return EXIT_OK


def _bool(text: str) -> bool:
    v = text.strip().lower()
    if v in ("true", "1", "yes"):
        return True
    if v in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--format", choices=FORMATS, default="json")

    p = argparse.ArgumentParser(prog="presentbias", description="Present-biased agents on progress tasks.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("trajectory", parents=[common], help="closed-form state sequence")
    s.add_argument("--T", type=int, required=True)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--beta", type=float, required=True)
    s.add_argument("--theta", type=float, default=1.0)
    s.add_argument("--R", type=float, default=1.0)
    s.add_argument("--oracle", action="store_true", help="also compare against the grid simulator")
    s.add_argument("--grid", type=int, default=4096)
    s.add_argument("--refine", type=int, default=1)
    s.set_defaults(func=cmd_trajectory)

    s = sub.add_parser("threshold", parents=[common], help="abandonment threshold beta_0")
    s.add_argument("--T", type=int, required=True)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--tol", type=float, default=1e-12)
    s.set_defaults(func=cmd_threshold)

    s = sub.add_parser("goal", parents=[common], help="optimal goal for a fixed reward")
    s.add_argument("--T", type=int, required=True)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--beta", type=float, required=True)
    s.add_argument("--R", type=float, default=1.0)
    s.add_argument("--allow-exploitative", type=_bool, default=True, metavar="{true,false}")
    s.set_defaults(func=cmd_goal)

    s = sub.add_parser("schedule", parents=[common], help="optimal reward schedule")
    s.add_argument("--T", type=int, required=True)
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--beta", type=float)
    s.add_argument("--R", type=float, default=1.0)
    s.add_argument("--beta-sweep", metavar="START:STOP:STEP", help="segment-length range over beta")
    s.set_defaults(func=cmd_schedule)

    s = sub.add_parser("verify", parents=[common], help="closed form vs grid oracle")
    s.add_argument("--T", type=int)
    s.add_argument("--alpha", type=float)
    s.add_argument("--beta", type=float)
    s.add_argument("--theta", type=float, default=1.0)
    s.add_argument("--R", type=float, default=1.0)
    s.add_argument("--grid", type=int, default=4096)
    s.add_argument("--refine", type=int, default=1)
    s.add_argument("--cases", action="store_true", help="include every per-case report")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="trajectories over a parameter grid")
    s.add_argument("--config", required=True, help="key=value grid file")
    s.add_argument("--out", default=None)
    s.add_argument("--format", choices=FORMATS, default=None)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except RegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME


if __name__ == "__main__":
    sys.exit(main())

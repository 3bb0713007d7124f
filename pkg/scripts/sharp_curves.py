"""Curve data of G(a(n); x) for n = 12 and 13, with a plot when matplotlib is around."""
import argparse
import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from chebineq.cli import figure_data
from chebineq.inequalities import predicted_equality_points


@dataclass
class CurveConfig:
    degrees: tuple[int, ...] = (12, 13)
    points: int = 2001
    out_dir: Path = Path("out")
    plot: bool = True


def run(cfg: CurveConfig) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    curves = {}
    for n in cfg.degrees:
        xs, vals = figure_data(n, cfg.points)
        curves[n] = (xs, vals)
        path = cfg.out_dir / f"sharp_curve_n{n}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "value"])
            w.writerows((repr(float(x)), repr(float(v))) for x, v in zip(xs, vals))
        zeros = ", ".join(f"{z:.6f}" for z in predicted_equality_points(n))
        print(f"n={n}: min {vals.min():.3e} at x={xs[np.argmin(vals)]:.4f}; zeros at {zeros} -> {path}")
    if not cfg.plot:
        return
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not installed, skipping the plot")
        return
    fig, ax = plt.subplots(figsize=(7, 4))
    for n, (xs, vals) in curves.items():
        ax.plot(xs, vals, label=f"n = {n}")
    ax.axhline(0, color="k", lw=0.5)
    ax.set_xlabel("x")
    ax.set_ylabel("G(a(n); x)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(cfg.out_dir / "sharp_curves.png", dpi=150)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--out-dir", type=Path, default=Path("out"))
    p.add_argument("--no-plot", action="store_true")
    a = p.parse_args()
    run(CurveConfig(points=a.points, out_dir=a.out_dir, plot=not a.no_plot))

"""Table of a(n): closed form against F1/F3 minimisation, with the minimiser."""
import argparse
import time
from dataclasses import dataclass

from chebineq.inequalities import predicted_equality_points, ratio_minimum, sharp_constant_closed


@dataclass
class TableConfig:
    n_min: int = 4
    n_max: int = 64
    grid: int | None = None


def run(cfg: TableConfig) -> float:
    print(f"{'n':>3} {'a(n) closed':>20} {'numeric':>20} {'diff':>10} {'argmin':>12}")
    worst = 0.0
    start = time.perf_counter()
    for n in range(cfg.n_min, cfg.n_max + 1):
        closed = sharp_constant_closed(n).value
        value, x = ratio_minimum(n, cfg.grid)
        worst = max(worst, abs(value - closed))
        # the minimiser should sit on the interior equality point
        assert min(abs(x - z) for z in predicted_equality_points(n)) < 1e-6
        print(f"{n:3d} {closed:20.16f} {value:20.16f} {value - closed:10.2e} {x:12.8f}")
    print(f"max |diff| = {worst:.2e} in {time.perf_counter() - start:.1f} s")
    return worst


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=64)
    p.add_argument("--grid", type=int, default=None)
    a = p.parse_args()
    run(TableConfig(a.n_min, a.n_max, a.grid))

"""Where the finite-increment inequality first fails for lambda < 1.

For each lambda on a grid in [0, 1) reports the smallest degree n and point x
in [0, 1] with P(1) - P(x) - (1 - x) P'(x) < 0, where P = C_n^lambda (or T_n
for lambda = 0).
"""
import argparse
from dataclasses import dataclass, field

import numpy as np

from chebineq.ultraspherical import find_counterexample


@dataclass
class ScanConfig:
    lambdas: list[float] = field(default_factory=lambda: [float(v) for v in np.linspace(0, 0.99, 12)])
    n_max: int = 50
    points: int = 10_000


def run(cfg: ScanConfig) -> dict:
    found = {}
    for lam in cfg.lambdas:
        hit = find_counterexample(lam, cfg.n_max, cfg.points)
        found[lam] = hit
        if hit is None:
            print(f"lambda={lam:.4f}: none for n = 2..{cfg.n_max}")
        else:
            print(f"lambda={lam:.4f}: n={hit.n} x={hit.x:.6f} D={hit.value:.6e}")
    return found


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--lambda", dest="lambdas", type=float, nargs="*")
    p.add_argument("--n-max", type=int, default=50)
    p.add_argument("--points", type=int, default=10_000)
    a = p.parse_args()
    cfg = ScanConfig(n_max=a.n_max, points=a.points)
    if a.lambdas:
        cfg.lambdas = a.lambdas
    run(cfg)

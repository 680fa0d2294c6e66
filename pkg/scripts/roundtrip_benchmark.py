"""Root-finding cost and round-trip fidelity against the number of qubits.

    python3 scripts/roundtrip_benchmark.py --max-sites 10 --samples 20
"""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from qubitpoly.charpoly import from_state
from qubitpoly.roots import SolverConfig, find_roots, round_trip_fidelity
from qubitpoly.state import random_state


@dataclass(frozen=True)
class BenchConfig:
    min_sites: int = 2
    max_sites: int = 10
    samples: int = 20
    init: str = "newton_polygon"
    seed: int = 0


def run(cfg: BenchConfig):
    solver = SolverConfig(init=cfg.init)
    for n in range(cfg.min_sites, cfg.max_sites + 1):
        times, iters, infid, unconverged = [], [], [], 0
        for i in range(cfg.samples):
            state = random_state(n, cfg.seed + 1000 * n + i)
            t0 = time.perf_counter()
            rs = find_roots(from_state(state), solver)
            times.append(time.perf_counter() - t0)
            iters.append(rs.iterations)
            if not rs.all_converged:
                unconverged += 1
                continue
            infid.append(1 - round_trip_fidelity(state, solver))
        worst = max(infid) if infid else float("nan")
        yield n, float(np.median(times)), float(np.median(iters)), worst, unconverged


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--min-sites", type=int, default=BenchConfig.min_sites)
    p.add_argument("--max-sites", type=int, default=BenchConfig.max_sites)
    p.add_argument("--samples", type=int, default=BenchConfig.samples)
    p.add_argument("--init", choices=["newton_polygon", "cauchy"], default=BenchConfig.init)
    p.add_argument("--seed", type=int, default=BenchConfig.seed)
    a = p.parse_args()
    cfg = BenchConfig(a.min_sites, a.max_sites, a.samples, a.init, a.seed)
    print(f"{'N':>2} {'degree':>6} {'median s':>9} {'median it':>9} {'worst 1-F':>10} unconverged")
    for n, t, it, worst, bad in run(cfg):
        print(f"{n:>2} {2**n - 1:>6} {t:9.4f} {it:9.0f} {worst:10.2e} {bad}/{cfg.samples}", flush=True)


if __name__ == "__main__":
    main()

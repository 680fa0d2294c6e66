"""Polynomial verdicts against reduced density matrices on random ensembles.

    python3 scripts/oracle_agreement.py --samples 500
"""

import argparse
from dataclasses import dataclass

import numpy as np

from qubitpoly.oracle import oracle_separable, oracle_unentangled_count
from qubitpoly.separability import is_separable
from qubitpoly.state import random_partially_separable, random_product_state, random_state
from qubitpoly.unentangled import count_unentangled


@dataclass(frozen=True)
class AgreementConfig:
    samples: int = 500
    min_sites: int = 2
    max_sites: int = 6
    tol: float = 1e-8
    seed: int = 0


def draw(kind: str, n: int, seed: int):
    if kind == "product":
        return random_product_state(n, seed)[0]
    if kind == "haar":
        return random_state(n, seed)
    rng = np.random.default_rng(seed)
    free = [j for j in range(n) if rng.random() < 0.5]
    return random_partially_separable(n, free, seed)


def run(cfg: AgreementConfig) -> dict:
    out = {}
    span = cfg.max_sites - cfg.min_sites + 1
    for kind in ("product", "haar", "partial"):
        sep_bad = count_bad = score_bad = 0
        for i in range(cfg.samples):
            state = draw(kind, cfg.min_sites + i % span, cfg.seed + i)
            rep = is_separable(state, cfg.tol)
            sep_bad += rep.separable != oracle_separable(state, cfg.tol)
            score_bad += not rep.method_agreement
            count_bad += count_unentangled(state, cfg.tol).count != oracle_unentangled_count(state, cfg.tol)
        out[kind] = (sep_bad, count_bad, score_bad)
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=AgreementConfig.samples)
    p.add_argument("--min-sites", type=int, default=AgreementConfig.min_sites)
    p.add_argument("--max-sites", type=int, default=AgreementConfig.max_sites)
    p.add_argument("--tol", type=float, default=AgreementConfig.tol)
    p.add_argument("--seed", type=int, default=AgreementConfig.seed)
    a = p.parse_args()
    cfg = AgreementConfig(a.samples, a.min_sites, a.max_sites, a.tol, a.seed)
    print(f"{'ensemble':<8} {'verdict':>8} {'count':>6} {'score path':>10}  (disagreements out of {cfg.samples})")
    for kind, (s, c, sc) in run(cfg).items():
        print(f"{kind:<8} {s:>8} {c:>6} {sc:>10}")


if __name__ == "__main__":
    main()

"""Time every algorithm against the brute-force oracle on random texts.

    python scripts/run_sweep.py --count 200 --max-len 2048 --shards 1 --csv sweep.csv

Prints a per-algorithm summary; with --csv writes one row per run.
"""
import argparse
import csv
import random
import statistics
import sys
import time
from dataclasses import dataclass

from diasaca.common import oracle_suffix_sort
from diasaca.dataflow import Context
from diasaca.dcx import DCStats, dc3, dc7
from diasaca.pd import RunStats, pd_discarding, pd_isa, pd_quadrupling, pd_sorting

ALGOS = {
    "pd-sort": pd_sorting,
    "pd-isa": pd_isa,
    "pd-discard": pd_discarding,
    "pq": pd_quadrupling,
    "dc3": dc3,
    "dc7": dc7,
}


@dataclass
class SweepConfig:
    count: int = 200
    max_len: int = 2048
    alphabets: tuple = (1, 2, 4, 26, 255)
    shards: int = 1
    seed: int = 0


def sweep(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    ctx = Context(num_shards=cfg.shards)
    rows = []
    for m in range(cfg.count):
        sigma = cfg.alphabets[m % len(cfg.alphabets)]
        t = bytes(rng.randint(1, sigma) for _ in range(rng.randint(1, cfg.max_len)))
        truth = oracle_suffix_sort(t)
        for name, f in ALGOS.items():
            stats = DCStats() if name.startswith("dc") else RunStats()
            start = time.perf_counter()
            sa = f(t, ctx=ctx, stats=stats)
            elapsed = time.perf_counter() - start
            rounds = stats.levels if isinstance(stats, DCStats) else stats.iterations
            rows.append(dict(algo=name, n=len(t), sigma=sigma, seconds=elapsed,
                             rounds=rounds, ok=sa == truth))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=SweepConfig.count)
    p.add_argument("--max-len", type=int, default=SweepConfig.max_len)
    p.add_argument("--shards", type=int, default=SweepConfig.shards)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    p.add_argument("--csv", default=None)
    a = p.parse_args(argv)
    rows = sweep(SweepConfig(count=a.count, max_len=a.max_len, shards=a.shards, seed=a.seed))
    if a.csv:
        with open(a.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    print(f"{'algo':<11}{'runs':>6}{'wrong':>7}{'mean ms':>10}{'max rounds':>12}")
    for name in ALGOS:
        mine = [r for r in rows if r["algo"] == name]
        wrong = sum(not r["ok"] for r in mine)
        mean = statistics.mean(r["seconds"] for r in mine) * 1000
        print(f"{name:<11}{len(mine):>6}{wrong:>7}{mean:>10.2f}{max(r['rounds'] for r in mine):>12}")
    return 1 if any(not r["ok"] for r in rows) else 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Time the two Shapley-Shubik counting strategies on random games.

    python scripts/benchmark_shapley.py [--voters 16 32 64] [--games 20] [--seed 0]
"""

import argparse
import random
import time
from dataclasses import dataclass

from senate_power.game import new_game
from senate_power.indices import shapley_shubik


@dataclass(frozen=True)
class BenchConfig:
    voters: tuple[int, ...] = (16, 32, 64)
    games: int = 20
    max_weight: int = 20
    seed: int = 0


def bench(cfg: BenchConfig) -> None:
    rng = random.Random(cfg.seed)
    print(f"{'n':>4} {'deconvolve ms':>14} {'rebuild ms':>11}")
    for n in cfg.voters:
        games = []
        for _ in range(cfg.games):
            w = [rng.randint(1, cfg.max_weight) for _ in range(n)]
            games.append(new_game(rng.randint(1, sum(w)), w))
        times = {}
        for method in ("deconvolve", "rebuild"):
            start = time.perf_counter()
            results = [shapley_shubik(g, method) for g in games]
            times[method] = (time.perf_counter() - start) / len(games) * 1e3
            times[method + "_values"] = [r.values for r in results]
        assert times["deconvolve_values"] == times["rebuild_values"]
        print(f"{n:>4} {times['deconvolve']:>14.2f} {times['rebuild']:>11.2f}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--voters", type=int, nargs="+", default=list(BenchConfig.voters))
    p.add_argument("--games", type=int, default=BenchConfig.games)
    p.add_argument("--seed", type=int, default=BenchConfig.seed)
    a = p.parse_args()
    bench(BenchConfig(tuple(a.voters), a.games, seed=a.seed))


if __name__ == "__main__":
    main()

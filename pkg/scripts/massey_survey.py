"""Classical and ABC triple Massey products on the nilmanifold fixtures:
how many seeded triples are nontrivial, and stability under resampling."""
import argparse
import random
from dataclasses import dataclass
from pathlib import Path

from dblcomplex.ce import invariant_bicomplex, parse_cdga
from dblcomplex.massey import random_defined_triples

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    count: int = 20
    resamples: int = 50
    seed: int = 0


def run(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    for name in ("kodaira_thurston", "iwasawa"):
        A = invariant_bicomplex(parse_cdga((ROOT / "fixtures" / f"{name}.cdga").read_text()))
        for kind in ("classical", "abc"):
            probs = random_defined_triples(A, kind, seed=cfg.seed, count=cfg.count)
            nontrivial = unstable = 0
            for p in probs:
                base = p.evaluate().is_trivial
                nontrivial += not base
                unstable += any(p.evaluate(*p.resample(rng)).is_trivial != base for _ in range(cfg.resamples))
            print(f"{name:<18} {kind:<10} {len(probs):>3} triples, {nontrivial:>3} nontrivial, {unstable} unstable")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    run(Config(count=args.count, seed=args.seed))

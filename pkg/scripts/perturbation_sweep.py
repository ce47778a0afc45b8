"""Randomly perturb one structure constant of a fixture and record where verification catches it."""
from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from pqg import zoo
from pqg.pipeline import run_pipeline


@dataclass
class Sweep:
    fixture: str = "P2"
    trials: int = 200
    seed: int = 0


def first_failure(report: dict) -> str:
    for name, sec in report["stages"].items():
        if sec["status"] == "fail":
            where = sec.get("first_failure") or sec.get("failed_at") or sec.get("error", "").split(":")[0]
            return f"{name}:{where}" if where else name
    return "undetected"


def run(cfg: Sweep) -> Counter:
    base = zoo.get(cfg.fixture)
    counts: Counter = Counter()
    for k in range(cfg.trials):
        qg = zoo.perturb(base, random.Random(cfg.seed + k))
        counts[first_failure(run_pipeline(qg))] += 1
    return counts


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--fixture", default=Sweep.fixture)
    p.add_argument("--trials", type=int, default=Sweep.trials)
    p.add_argument("--seed", type=int, default=Sweep.seed)
    a = p.parse_args()
    counts = run(Sweep(a.fixture, a.trials, a.seed))
    for where, n in counts.most_common():
        print(f"{n:5d}  {where}")
    missed = counts.get("undetected", 0)
    print(f"\n{missed} of {a.trials} perturbations passed every stage")
    raise SystemExit(1 if missed else 0)


if __name__ == "__main__":
    main()

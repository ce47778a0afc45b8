"""Run the verification pipeline over zoo fixtures and print a status table."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from pqg import zoo
from pqg.pipeline import STAGES, dumps, run_pipeline


@dataclass
class ZooRun:
    fixtures: list[str] = field(default_factory=zoo.names)
    stages: list[str] = field(default_factory=lambda: list(STAGES))
    json_dir: Path | None = None


def run(cfg: ZooRun) -> int:
    width = max(len(n) for n in cfg.fixtures)
    print(f"{'fixture':{width}s}  " + " ".join(f"{s:8s}" for s in cfg.stages) + "  time")
    failures = 0
    for name in cfg.fixtures:
        t0 = time.perf_counter()
        report = run_pipeline(zoo.get(name), cfg.stages)
        dt = time.perf_counter() - t0
        cells = [report["stages"].get(s, {}).get("status", "-") for s in cfg.stages]
        print(f"{name:{width}s}  " + " ".join(f"{c:8s}" for c in cells) + f"  {dt:.2f}s")
        failures += not report["passed"]
        if cfg.json_dir is not None:
            cfg.json_dir.mkdir(parents=True, exist_ok=True)
            (cfg.json_dir / f"{name.replace('+', '_')}.json").write_text(dumps(report))
    return failures


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("fixtures", nargs="*", help="fixture names (default: all)")
    p.add_argument("--stages", help="comma-separated stages (default: all)")
    p.add_argument("--json-dir", type=Path, help="write one JSON report per fixture here")
    a = p.parse_args()
    cfg = ZooRun(json_dir=a.json_dir)
    if a.fixtures:
        cfg.fixtures = a.fixtures
    if a.stages:
        cfg.stages = a.stages.split(",")
    failing = run(cfg)
    print(f"\n{failing} fixture(s) did not pass every stage (negative fixtures are expected to fail)")


if __name__ == "__main__":
    main()

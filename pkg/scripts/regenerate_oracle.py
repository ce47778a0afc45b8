"""Recompute the dense Sweedler oracle and compare it with (or overwrite) the frozen copy."""
from __future__ import annotations

import argparse
import subprocess
import sys
from pathlib import Path

ORACLE = Path(__file__).resolve().parents[1] / "tests" / "oracles" / "sweedler_oracle.py"


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--write", action="store_true", help="overwrite the frozen JSON instead of checking it")
    a = p.parse_args()
    args = [sys.executable, str(ORACLE)] + ([] if a.write else ["--check"])
    code = subprocess.call(args, stdout=subprocess.DEVNULL if not a.write else None)
    if not a.write:
        print("oracle matches frozen data" if code == 0 else "oracle differs from frozen data")
    raise SystemExit(code)


if __name__ == "__main__":
    main()

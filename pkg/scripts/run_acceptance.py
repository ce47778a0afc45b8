"""Print one PASS/FAIL line per acceptance criterion; exit status 1 if any fails."""
from __future__ import annotations

import runpy
import sys
from pathlib import Path

if __name__ == "__main__":
    path = Path(__file__).resolve().parents[1] / "tests" / "test_acceptance.py"
    sys.argv = [str(path)]
    runpy.run_path(str(path), run_name="__main__")

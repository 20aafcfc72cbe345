#!/usr/bin/env python3
"""Run project tests.

Runs pytest; with --examples it also replays the three tabulated deformation
windows through the CLI and prints their summaries.

Usage:
    python scripts/run_tests.py
    python scripts/run_tests.py --examples
"""
from __future__ import annotations

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[1]
SRC = ROOT / "src"

sys.path.insert(0, str(SRC))


def run_pytest(extra: list[str]) -> bool:
    print("Running tests with pytest...")
    return subprocess.call([sys.executable, "-m", "pytest", "-q", *extra], cwd=ROOT) == 0


def run_examples() -> bool:
    from cli import main
    from reference import EXAMPLES

    ok = True
    with tempfile.TemporaryDirectory() as tmp:
        for ex in EXAMPLES:
            out = pathlib.Path(tmp) / f"{ex.name}.json"
            code = main(["deform", "--n", str(ex.n), "--delta", ex.delta, "--out", str(out)])
            summary = json.loads(out.read_text(encoding="utf-8"))["summary"] if out.exists() else {}
            print(f"{ex.name}: exit {code}, parameters {summary.get('parameters')} "
                  f"(displayed {ex.parameters}), L2 blocks {summary.get('l2_blocks')} "
                  f"(displayed {ex.l2_blocks}), generators {summary.get('generators')}")
            ok = ok and code == 0
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--examples", action="store_true", help="Also replay the tabulated example windows")
    args, rest = ap.parse_known_args()
    ok = run_pytest(rest)
    if args.examples:
        ok = run_examples() and ok
    sys.exit(0 if ok else 1)

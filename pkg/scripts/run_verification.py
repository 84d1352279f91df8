"""Run every verification sweep and print a summary line per suite.

    python3 scripts/run_verification.py --samples 2000 --seed 3
    python3 scripts/run_verification.py --acceptance
"""
from __future__ import annotations

import argparse
import subprocess
import sys
import time
from pathlib import Path

from modflow.sweeps import SUITES, SweepConfig, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite", action="append", choices=SUITES, help="repeatable; default all")
    ap.add_argument("--acceptance", action="store_true", help="also run the acceptance criteria")
    args = ap.parse_args()

    all_ok = True
    for suite in args.suite or SUITES:
        start = time.perf_counter()
        res = run_suite(SweepConfig(suite, args.samples, args.seed))
        all_ok &= res.ok
        line = f"{suite:9s} {'ok  ' if res.ok else 'FAIL'} {res.passed}/{res.total} [{time.perf_counter() - start:.1f}s]"
        if not res.ok:
            line += f" first counterexample: {res.counterexample}"
        print(line, flush=True)

    if args.acceptance:
        script = Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"
        all_ok &= subprocess.run([sys.executable, str(script)]).returncode == 0
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())

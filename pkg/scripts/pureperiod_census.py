"""Census of quadratic irrationals in (1, 2): pure periodicity of the Lehner
expansion against the reduced condition conj(x) < 1, and the Farey dual.

    python3 scripts/pureperiod_census.py --bound 12 --show 10
"""
from __future__ import annotations

import argparse
import sys
from collections import Counter

from modflow.cf_core import DigitSequence, value_of_periodic
from modflow.lehner import dual_of_period, lehner_expand
from modflow.numeric import compare, conjugate, format_exact
from modflow.sweeps import quadratic_census


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--bound", type=int, default=20, help="max |coefficient| of the minimal polynomial")
    ap.add_argument("--show", type=int, default=0, help="print this many purely periodic examples")
    args = ap.parse_args()

    values = quadratic_census(args.bound)
    failures, dual_failures, shown = [], [], 0
    lengths = Counter()
    for x in values:
        seq = lehner_expand(x)
        reduced = compare(conjugate(x), 1) < 0
        if reduced != (not seq.preperiod):
            failures.append(x)
        if seq.preperiod:
            continue
        lengths[len(seq.period)] += 1
        dual = DigitSequence("farey", (), dual_of_period(seq.period))
        if -value_of_periodic(dual) != conjugate(x):
            dual_failures.append(x)
        if shown < args.show:
            shown += 1
            digits = " ".join(f"({d.value[0]},{d.value[1]:+d})" for d in seq.period)
            print(f"  {format_exact(x):>24s}  period {digits}")

    pure = sum(lengths.values())
    print(f"bound {args.bound}: {len(values)} surds, {pure} purely periodic, {len(values) - pure} with a preperiod")
    print("period lengths:", dict(sorted(lengths.items())))
    print(f"reduced <=> purely periodic: {len(failures)} failures")
    print(f"dual period gives -conj(x): {len(dual_failures)} failures")
    for x in (failures + dual_failures)[:5]:
        print("  counterexample:", format_exact(x))
    return 0 if not failures and not dual_failures else 1


if __name__ == "__main__":
    sys.exit(main())

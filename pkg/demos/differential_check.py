"""Differential testing in miniature: race the and-or graph engine against
the naive backtracking tableau on a stream of random knowledge bases.

Run with:  python3 demos/differential_check.py [count]
"""

import sys
import time

from alcm import oracle
from alcm.engine import check_consistency
from alcm.errors import BudgetExceededError
from alcm.parser import print_kb
from alcm.randomkb import corpus


def main(count=200):
    kbs = corpus(seed=2718, size=count)
    t0 = time.time()
    agree = disagree = skipped = inconsistent = 0
    for kb in kbs:
        try:
            fast = check_consistency(kb, node_budget=100_000).consistent
            slow = oracle.decide(kb, step_budget=100_000).consistent
        except BudgetExceededError:
            skipped += 1
            continue
        if fast == slow:
            agree += 1
            inconsistent += not fast
        else:
            disagree += 1
            print("DISAGREEMENT on:")
            print(print_kb(kb))
    print(f"{count} KBs in {time.time() - t0:.1f}s: "
          f"{agree} agree ({inconsistent} inconsistent), "
          f"{disagree} disagree, {skipped} over budget")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 200)

#!/usr/bin/env python3
"""Fuzz harness: solve random instances through the decomposition pipeline
and cross-check every value against the independent oracle.

    python scripts/fuzz_cross_check.py --rounds 100 --max-n 60
    MINORFLOW_SEED=9 python scripts/fuzz_cross_check.py --rounds 20 --decomposer
"""

import argparse
import os
import random
import time

from minorflow.external import verify_flow
from minorflow.network import TerminalSet
from minorflow.solver import max_flow_decomposed, max_flow_family
from minorflow.testkit import GenConfig, gen_instance, oracle_max_flow


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rounds", type=int, default=50)
    ap.add_argument("--max-n", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument(
        "--decomposer",
        action="store_true",
        help="run the family decomposer instead of the ground-truth tree",
    )
    args = ap.parse_args()
    seed = int(os.environ.get("MINORFLOW_SEED", args.seed))
    rng = random.Random(seed)
    started = time.monotonic()
    for round_no in range(args.rounds):
        family = rng.choice(("planar", "k33free", "k5free"))
        n = rng.randint(8, args.max_n)
        graph, tree = gen_instance(GenConfig(family, n, seed=rng.getrandbits(32)))
        s, t = rng.sample(sorted(graph.vertices), 2)
        if args.decomposer and family != "planar":
            key = "k33" if family == "k33free" else "k5"
            value, flow = max_flow_family(graph, key, s, t)
        else:
            value, flow = max_flow_decomposed(graph, tree, s, t)
        want = oracle_max_flow(graph, s, t)
        ok = verify_flow(graph, TerminalSet.of(s, t), (value, -value), flow)
        if value != want or not ok:
            print(f"round {round_no}: MISMATCH family={family} n={n} s={s} t={t} "
                  f"got {value} want {want} feasible={bool(ok)}")
            raise SystemExit(1)
        if (round_no + 1) % 10 == 0:
            print(f"{round_no + 1}/{args.rounds} ok ({time.monotonic() - started:.1f}s)")
    print(f"all {args.rounds} rounds agree with the oracle")


if __name__ == "__main__":
    main()

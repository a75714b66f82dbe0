#!/usr/bin/env python3
"""Scale experiment: generate a large clique-sum instance and solve it
end to end, reporting where the time goes.

    python scripts/scale_smoke.py --n 100000 --family k5free --seed 11
"""

import argparse
import random
import time

from minorflow.external import verify_flow
from minorflow.network import TerminalSet
from minorflow.solver import max_flow_decomposed
from minorflow.testkit import GenConfig, gen_instance


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--family", default="k5free", choices=("planar", "k33free", "k5free"))
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--skip-validate", action="store_true")
    args = ap.parse_args()

    t0 = time.monotonic()
    graph, tree = gen_instance(GenConfig(args.family, args.n, seed=args.seed))
    t1 = time.monotonic()
    print(
        f"generated n={len(graph.vertices)} m={len(graph.edges)} "
        f"components={len(tree.components)} in {t1 - t0:.1f}s"
    )

    rng = random.Random(args.seed + 1)
    s, t = rng.sample(sorted(graph.vertices), 2)
    value, flow = max_flow_decomposed(
        graph, tree, s, t, validate_input=not args.skip_validate
    )
    t2 = time.monotonic()
    print(f"max flow {s} -> {t}: value={value} in {t2 - t1:.1f}s")

    result = verify_flow(graph, TerminalSet.of(s, t), (value, -value), flow)
    t3 = time.monotonic()
    print(f"verify: {'ok' if result.ok else 'FAILED'} in {t3 - t2:.1f}s")
    print(f"total {t3 - t0:.1f}s")
    if not result.ok:
        raise SystemExit(1)


if __name__ == "__main__":
    main()

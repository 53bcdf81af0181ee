"""Tabulate tensor decompositions of cyclic permutative representations.

Every pair of cycle words (up to rotation) over every pair of contexts is
decomposed; with verification on, each line also reports whether the
depth-limited isomorphism check succeeded.

    python scripts/decomposition_table.py --contexts F2 "[[1,1],[1,0]]" --max-period 3
"""

import argparse
import random
import time

from ckstar.config import SweepConfig
from ckstar.matrix_monoid import load_matrix, random_matrix
from ckstar.permutative_reps import cycle_words, decompose, verify_decomposition


def contexts(cfg: SweepConfig):
    mats = [load_matrix(c) for c in cfg.contexts]
    rng = random.Random(cfg.seed)
    mats += [random_matrix(rng.randint(2, cfg.max_random_dim), rng) for _ in range(cfg.random_samples)]
    return mats


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--contexts", nargs="+")
    ap.add_argument("--max-period", type=int)
    ap.add_argument("--depth", type=int)
    ap.add_argument("--random-samples", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--no-verify", action="store_true")
    args = ap.parse_args()
    cfg = SweepConfig().with_overrides(
        contexts=tuple(args.contexts) if args.contexts else None,
        max_period=args.max_period,
        depth=args.depth,
        random_samples=args.random_samples,
        seed=args.seed,
    )
    if args.no_verify:
        cfg = cfg.with_overrides(verify=False)

    mats = contexts(cfg)
    failures = total = 0
    start = time.perf_counter()
    for a in mats:
        for b in mats:
            for j in cycle_words(a, cfg.max_period):
                for k in cycle_words(b, cfg.max_period):
                    dec = decompose(j, k)
                    status = ""
                    if cfg.verify:
                        ok = verify_decomposition(j, k, dec, cfg.depth)
                        failures += not ok
                        status = "  ok" if ok else "  MISMATCH"
                    total += 1
                    comps = ", ".join(str(w) for w in dec.words())
                    print(f"{j} (x) {k} over {a.label()},{b.label()} -> {comps}{status}")
    elapsed = time.perf_counter() - start
    print(f"# {total} pairs, {failures} verification failures, {elapsed:.1f} s")


if __name__ == "__main__":
    main()

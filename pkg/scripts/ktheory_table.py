"""Print K0 and K1 for full matrices and a few Kronecker products.

    python scripts/ktheory_table.py [--max-n 12] [--json]
"""

import argparse
import json

from ckstar.config import KTheoryTableConfig
from ckstar.integer_ktheory import k_groups, verify_kernel_inclusion
from ckstar.matrix_monoid import full, kronecker, load_matrix


def rows(cfg: KTheoryTableConfig):
    lo, hi = cfg.full_range
    for n in range(lo, hi + 1):
        yield f"F{n}", full(n), None
    for left, right in cfg.products:
        a, b = load_matrix(left), load_matrix(right)
        yield f"{a.label()} (x) {b.label()}", kronecker(a, b), (a, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=None)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    cfg = KTheoryTableConfig()
    if args.max_n:
        cfg = KTheoryTableConfig(full_range=(2, args.max_n), products=cfg.products)

    out = []
    for name, a, factors in rows(cfg):
        k0, k1, diag = k_groups(a)
        entry = {"matrix": name, "K0": str(k0), "K1": str(k1), "smith": list(diag)}
        if factors and cfg.show_kernel_inclusion:
            entry["kernel_inclusion"] = verify_kernel_inclusion(*factors)
        out.append(entry)

    if args.json:
        print(json.dumps(out, indent=2))
        return
    width = max(len(e["matrix"]) for e in out)
    for e in out:
        extra = f"  inclusion={'ok' if e['kernel_inclusion'] else 'FAILS'}" if "kernel_inclusion" in e else ""
        print(f"{e['matrix']:<{width}}  K0 = {e['K0']:<12} K1 = {e['K1']}{extra}")


if __name__ == "__main__":
    main()

"""Orders of truncated Burnside presentations, level by level."""

import argparse
import time

from burnext.coset import Overflow, Unstable, stabilized_order
from burnext.presentation import build_burnside


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", default="2:2,2:3,3:2,2:4", help="comma list of m:n")
    ap.add_argument("--Lmax", type=int, default=6)
    ap.add_argument("--max-cosets", type=int, default=10**5)
    args = ap.parse_args()
    for case in args.cases.split(","):
        m, n = map(int, case.split(":"))
        start = time.perf_counter()
        try:
            res = stabilized_order(m, n, build_burnside, args.Lmax, args.max_cosets)
            line = f"order {res.order} at L={res.L}, levels {list(res.orders)}"
        except (Overflow, Unstable) as exc:
            line = f"no answer: {type(exc).__name__}"
        print(f"B({m},{n}): {line} ({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    main()

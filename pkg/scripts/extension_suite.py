"""Seeded sweep of central extensions A_D: random psi, suggested sigma, report."""

import argparse
import random

from burnext import abelian as ab
from burnext.homology import relation_module
from burnext.verify import suggest_assignment, verify_theorem1_suite


def random_psi(rng, V, D):
    while True:
        M = [[rng.randint(0, 8) for _ in range(V.dim)] for _ in range(D.dim)]
        try:
            return ab.hom_check(M, V, D)
        except ab.IllDefined:
            continue


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=20261016)
    ap.add_argument("--trials", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    targets = {2: ["C_2", "C_4", "C_2 x C_2"], 3: ["C_3", "C_9", "C_3 x C_3"]}
    for n, specs in targets.items():
        rm = relation_module(2, n)
        for spec in specs:
            D = ab.parse_abelian_spec(spec)
            for _ in range(args.trials):
                psi = random_psi(rng, rm.V, D)
                rep = verify_theorem1_suite(2, n, rm.L, D, suggest_assignment(rm, D, psi), rm=rm)
                status = "".join(rep.items[k][0][0] for k in sorted(rep.items))
                print(f"n={n} D={spec:<10} psi={psi.matrix} |A|={rep.order} "
                      f"items={status} embeds={rep.embeds}")


if __name__ == "__main__":
    main()

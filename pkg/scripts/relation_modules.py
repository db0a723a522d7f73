"""Relation modules V = N/[F,N], Schur multipliers and cocycle cross-checks."""

import argparse

from burnext.coset import group_from_presentation
from burnext.homology import cocycle_h2_dim, relation_module, schur_multiplier
from burnext.presentation import build_burnside


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-m", type=int, default=2)
    ap.add_argument("--exponents", default="2,3")
    args = ap.parse_args()
    for n in map(int, args.exponents.split(",")):
        rm = relation_module(args.m, n)
        M = schur_multiplier(args.m, n, rm)
        G = group_from_presentation(build_burnside(args.m, n, rm.L))
        print(f"m={args.m} n={n} L={rm.L}: |B|={G.order}, "
              f"Schreier generators {len(rm.system.generators)}")
        print(f"  V = {rm.V}")
        print(f"  M = {M}")
        if G.order <= 200:
            print(f"  dim H^2(B, F_{n}) by cocycles = {cocycle_h2_dim(G, n)}")


if __name__ == "__main__":
    main()

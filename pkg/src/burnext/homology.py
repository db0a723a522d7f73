"""Relation module N/[F,N] and Schur multiplier of a finite Burnside group.

N is the kernel of F_m -> B(m,n).  The Reidemeister-Schreier rewriting
over a Schreier transversal gives a free basis of N; abelianizing and
then killing the conjugation action of F gives N/[F,N].  The torsion
part of that group is the Schur multiplier (Hopf), because its image
in F/[F,F] = Z^m is a finite-index subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .abelian import AbelianElement, FgAbelianGroup, from_relators
from .coset import CosetTable, GroupTable, stabilized_order, todd_coxeter
from .matrix import rank_mod_p
from .presentation import build_burnside
from .words import Word, a


class NotInSubgroup(ValueError):
    pass


@dataclass(frozen=True)
class SchreierSystem:
    table: CosetTable
    edges: tuple[tuple[int, int], ...]  # (coset, generator column) of each Schreier generator
    rank: int
    L: int

    @property
    def index(self) -> int:
        return self.table.index

    @property
    def generators(self) -> list[Word]:
        t = self.table
        return [t.transversal(c) * Word.gen(t.gens[x // 2]) * ~t.transversal(t.table[c][x])
                for c, x in self.edges]

    def _edge_lookup(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def rewrite(self, w: Word) -> list[tuple[int, int]]:
        """``w`` (in N) as a sequence of (Schreier generator, +-1)."""
        lookup = self._edge_lookup()
        tab = self.table.table
        out: list[tuple[int, int]] = []
        c = 0
        for x in self.table.codes(w):
            nxt = tab[c][x]
            edge = (c, x) if x % 2 == 0 else (nxt, x ^ 1)
            i = lookup.get(edge)
            if i is not None:
                s = 1 if x % 2 == 0 else -1
                if out and out[-1] == (i, -s):
                    out.pop()
                else:
                    out.append((i, s))
            c = nxt
        if c != 0:
            raise NotInSubgroup(f"{w} is not in the subgroup")
        return out

    def rewrite_abelian(self, w: Word) -> list[int]:
        vec = [0] * len(self.edges)
        for i, s in self.rewrite(w):
            vec[i] += s
        return vec


def schreier_system(m: int, n: int, L: int | None = None, max_cosets: int = 10**6) -> SchreierSystem:
    """Schreier generators of the kernel of F_m -> B(m,n) (truncated at L).

    Without ``L`` the truncation level is found by ``stabilized_order``.
    """
    if L is None:
        L = stabilized_order(m, n, build_burnside, 8, max_cosets).L
    table = todd_coxeter(build_burnside(m, n, L), (), max_cosets)
    tree = set()
    for c in range(1, table.index):
        pc, x = table.parent[c]
        tree.add((pc, x) if x % 2 == 0 else (c, x ^ 1))
    edges = tuple((c, 2 * g) for c in range(table.index) for g in range(m)
                  if (c, 2 * g) not in tree)
    return SchreierSystem(table, edges, m, L)


@dataclass(frozen=True)
class RelationModule:
    V: FgAbelianGroup
    system: SchreierSystem = field(repr=False)
    m: int
    n: int

    @property
    def L(self) -> int:
        return self.system.L

    def class_of(self, w: Word) -> AbelianElement:
        return self.V.from_presenting(self.system.rewrite_abelian(w))


def relation_module(m: int, n: int, L: int | None = None, max_cosets: int = 10**6) -> RelationModule:
    system = schreier_system(m, n, L, max_cosets)
    gens = system.generators
    rels = []
    for i, s in enumerate(gens):
        for k in range(1, m + 1):
            x = Word.gen(a(k))
            vec = system.rewrite_abelian(x * s * ~x)
            vec[i] -= 1
            if any(vec):
                rels.append(vec)
    return RelationModule(from_relators(len(gens), rels), system, m, n)


def class_in_V(w: Word, rm: RelationModule) -> AbelianElement:
    return rm.class_of(w)


class ConsistencyError(ArithmeticError):
    pass


def schur_multiplier(m: int, n: int, rm: RelationModule | None = None) -> FgAbelianGroup:
    rm = rm or relation_module(m, n)
    if rm.V.free_rank != m:
        raise ConsistencyError(f"N/[F,N] has free rank {rm.V.free_rank}, expected {m}")
    k = len(rm.V.torsion)
    return from_relators(k, [[t if i == j else 0 for j in range(k)] for i, t in enumerate(rm.V.torsion)])


def cocycle_h2_dim(G: GroupTable, p: int, max_order: int = 200) -> int:
    """dim over F_p of H^2(G, F_p) with trivial action, from normalized cochains."""
    N = G.order
    if N > max_order:
        raise ValueError(f"group of order {N} exceeds the limit {max_order}")
    if N == 1:
        return 0
    M = np.array(G.mult, dtype=np.int64)
    k = N - 1
    nonid = np.arange(1, N)

    def col(x, y):
        return (x - 1) * k + (y - 1)

    # cocycle condition f(g,h) + f(gh,k) - f(h,k) - f(g,hk) = 0 over g, h, k != 1
    g, h, t = (c.ravel() for c in np.meshgrid(nonid, nonid, nonid, indexing="ij"))
    gh, ht = M[g, h], M[h, t]
    rows = np.arange(len(g))
    Z = np.zeros((len(g), k * k), dtype=np.int8)
    np.add.at(Z, (rows, col(g, h)), 1)
    np.add.at(Z, (rows, col(h, t)), -1)
    sel = gh != 0
    np.add.at(Z, (rows[sel], col(gh[sel], t[sel])), 1)
    sel = ht != 0
    np.add.at(Z, (rows[sel], col(g[sel], ht[sel])), -1)
    cocycles = k * k - rank_mod_p(Z, p)

    # coboundaries (d phi)(g,h) = phi(g) + phi(h) - phi(gh)
    g2, h2 = (c.ravel() for c in np.meshgrid(nonid, nonid, indexing="ij"))
    gh2 = M[g2, h2]
    rows = np.arange(len(g2))
    B = np.zeros((len(g2), k), dtype=np.int8)
    np.add.at(B, (rows, g2 - 1), 1)
    np.add.at(B, (rows, h2 - 1), 1)
    sel = gh2 != 0
    np.add.at(B, (rows[sel], gh2[sel] - 1), -1)
    return cocycles - rank_mod_p(B, p)

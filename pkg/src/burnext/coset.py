"""Todd-Coxeter coset enumeration and finite groups as multiplication tables."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .presentation import Presentation
from .words import Gen, Word


class Overflow(RuntimeError):
    """The coset table would exceed the coset limit."""


class Unstable(RuntimeError):
    """No two consecutive truncation levels gave the same order."""


def _letter_codes(word: Word, position: dict[Gen, int]) -> list[int]:
    out = []
    for g, e in word.syllables:
        code = 2 * position[g] + (0 if e > 0 else 1)
        out.extend([code] * abs(e))
    return out


@dataclass(frozen=True)
class CosetTable:
    """Closed coset table; column ``2i`` is generator ``i``, ``2i+1`` its inverse.

    Cosets are numbered in breadth-first order from coset 0 (the
    subgroup), so ``parent`` describes a shortlex-minimal transversal.
    """

    gens: tuple[Gen, ...]
    table: tuple[tuple[int, ...], ...]
    parent: tuple[tuple[int, int], ...]  # (previous coset, column); (-1, -1) for coset 0
    subgroup_gens: tuple[Word, ...] = ()

    @property
    def index(self) -> int:
        return len(self.table)

    def column(self, g: Gen, sign: int = 1) -> int:
        return 2 * self.gens.index(g) + (0 if sign > 0 else 1)

    def codes(self, w: Word) -> list[int]:
        return _letter_codes(w, {g: i for i, g in enumerate(self.gens)})

    def trace(self, coset: int, w: Word) -> int:
        c = coset
        tab = self.table
        for x in self.codes(w):
            c = tab[c][x]
        return c

    def transversal_codes(self, coset: int) -> list[int]:
        out = []
        while coset:
            coset, x = self.parent[coset]
            out.append(x)
        return out[::-1]

    def transversal(self, coset: int) -> Word:
        return Word.from_letters(
            (self.gens[x // 2], -1 if x & 1 else 1) for x in self.transversal_codes(coset)
        )

    def is_closed_under(self, relators: Iterable[Word]) -> bool:
        for r in relators:
            codes = self.codes(r)
            for c in range(self.index):
                e = c
                for x in codes:
                    e = self.table[e][x]
                if e != c:
                    return False
        return True


class _Enumerator:
    def __init__(self, ncols: int, max_cosets: int):
        self.ncols = ncols
        self.max = max_cosets
        self.tab: list[list[int]] = [[-1] * ncols]
        self.p = [0]

    def rep(self, c: int) -> int:
        p = self.p
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def define(self, c: int, x: int) -> None:
        if len(self.tab) >= self.max:
            raise Overflow(f"more than {self.max} cosets needed")
        n = len(self.tab)
        self.tab.append([-1] * self.ncols)
        self.p.append(n)
        self.tab[c][x] = n
        self.tab[n][x ^ 1] = c

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        self.p[l] = k
        queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        tab = self.tab
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = tab[e]
            for x in range(self.ncols):
                f = row[x]
                if f < 0:
                    continue
                tab[f][x ^ 1] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if tab[e1][x] >= 0:
                    self._merge(f1, tab[e1][x], queue)
                elif tab[f1][x ^ 1] >= 0:
                    self._merge(e1, tab[f1][x ^ 1], queue)
                else:
                    tab[e1][x] = f1
                    tab[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, w: Sequence[int]) -> None:
        tab = self.tab
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and tab[f][w[i]] >= 0:
                f = tab[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and tab[b][w[j] ^ 1] >= 0:
                b = tab[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                tab[f][w[i]] = b
                tab[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def run(self, relators: list[list[int]], subgroup: list[list[int]]) -> None:
        for w in subgroup:
            if self.p[0] == 0:
                self.scan_and_fill(0, w)
        c = 0
        while c < len(self.tab):
            for r in relators:
                if self.p[c] != c:
                    break
                self.scan_and_fill(c, r)
            if self.p[c] == c:
                for x in range(self.ncols):
                    if self.tab[c][x] < 0:
                        self.define(c, x)
            c += 1

    def standardize(self) -> tuple[list[tuple[int, ...]], list[tuple[int, int]]]:
        label = {0: 0}
        order = [0]
        parent = [(-1, -1)]
        q = deque([0])
        while q:
            c = q.popleft()
            for x in range(self.ncols):
                t = self.rep(self.tab[c][x])
                if t not in label:
                    label[t] = len(order)
                    order.append(t)
                    parent.append((label[c], x))
                    q.append(t)
        table = [tuple(label[self.rep(self.tab[c][x])] for x in range(self.ncols)) for c in order]
        return table, parent


def todd_coxeter(P: Presentation, subgroup_gens: Sequence[Word] = (),
                 max_cosets: int = 10**6) -> CosetTable:
    """Enumerate the cosets of <subgroup_gens> in the group presented by ``P``.

    HLT strategy: every relator is traced from every live coset in turn,
    filling gaps by new definitions; coincidences are collapsed with a
    union-find queue.  Raises ``Overflow`` past ``max_cosets``.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    gens = P.generators()
    position = {g: i for i, g in enumerate(gens)}
    rels = [_letter_codes(r, position) for r in P.relators]
    sub = [_letter_codes(w, position) for w in subgroup_gens]
    en = _Enumerator(2 * len(gens), max_cosets)
    en.run([r for r in rels if r], [w for w in sub if w])
    table, parent = en.standardize()
    return CosetTable(tuple(gens), tuple(table), tuple(parent), tuple(subgroup_gens))


def enumerate_order(P: Presentation, max_cosets: int = 10**6) -> int:
    return todd_coxeter(P, (), max_cosets).index


@dataclass(frozen=True)
class StabilizedOrder:
    order: int
    L: int
    orders: tuple  # order per level 1..; None where the enumeration overflowed


def stabilized_order(m: int, n: int, builder: Callable[[int, int, int], Presentation],
                     L_max: int, max_cosets: int = 10**6) -> StabilizedOrder:
    """First order reached at two consecutive truncation levels L, L+1.

    Levels whose enumeration overflows count as "no value"; the overflow
    propagates only if it happens at ``L_max`` itself.  Agreement of two
    levels is a heuristic, not a certificate.
    """
    orders: list = []
    for L in range(1, L_max + 1):
        try:
            orders.append(enumerate_order(builder(m, n, L), max_cosets))
        except Overflow:
            if L == L_max:
                raise
            orders.append(None)
        if len(orders) >= 2 and orders[-1] is not None and orders[-1] == orders[-2]:
            return StabilizedOrder(orders[-1], L - 1, tuple(orders))
    raise Unstable(f"orders did not stabilize by L={L_max}: {orders}")


@dataclass(frozen=True)
class GroupTable:
    """A finite group as a multiplication table; element 0 is the identity."""

    mult: tuple[tuple[int, ...], ...]
    gen_images: tuple[tuple[Gen, int], ...] = ()
    names: tuple[Word, ...] = ()

    @property
    def order(self) -> int:
        return len(self.mult)

    identity = 0

    @property
    def inverse(self) -> tuple[int, ...]:
        return _inverses(self.mult)

    def image(self, g: Gen) -> int:
        return dict(self.gen_images)[g]

    def evaluate(self, w: Word) -> int:
        images = dict(self.gen_images)
        inv = self.inverse
        x = 0
        for g, e in w.syllables:
            y = images[g] if e > 0 else inv[images[g]]
            for _ in range(abs(e)):
                x = self.mult[x][y]
        return x

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        x = 0
        base = g
        while k:
            if k & 1:
                x = self.mult[x][base]
            base = self.mult[base][base]
            k >>= 1
        return x

    def subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        """Closure of ``gens`` under multiplication (finite, so a subgroup)."""
        gens = [g for g in set(gens)]
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mult[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)


def _inverses(mult) -> tuple[int, ...]:
    return tuple(row.index(0) for row in mult)


def realize(table: CosetTable) -> GroupTable:
    """Multiplication table of the group acting regularly on its own cosets."""
    if any(w for w in table.subgroup_gens):
        raise ValueError("table enumerates a nontrivial subgroup; cannot realize")
    n = table.index
    tab = table.table
    parent = table.parent
    mult = [[0] * n for _ in range(n)]
    for c1 in range(n):
        row = mult[c1]
        row[0] = c1
        for c2 in range(1, n):  # BFS order: parent of c2 precedes c2
            pc, x = parent[c2]
            row[c2] = tab[row[pc]][x]
    gen_images = tuple((g, tab[0][2 * i]) for i, g in enumerate(table.gens))
    names = tuple(table.transversal(c) for c in range(n))
    return GroupTable(tuple(tuple(r) for r in mult), gen_images, names)


def element_order(G: GroupTable, g: int) -> int:
    k, x = 1, g
    while x != 0:
        x = G.mult[x][g]
        k += 1
    return k


def exponent(G: GroupTable) -> int:
    return math.lcm(*(element_order(G, g) for g in range(G.order)))


def group_from_presentation(P: Presentation, max_cosets: int = 10**6) -> GroupTable:
    return realize(todd_coxeter(P, (), max_cosets))

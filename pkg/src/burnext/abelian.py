"""Finitely generated abelian groups in invariant-factor form, and an exact
model of the rationals presented as <d_1, d_2, ... | d_i^i = d_{i-1}>.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod
from typing import Iterator, Sequence

from gmpy2 import fac

from .matrix import IntMatrix, snf
from .words import CENTRAL, Word, d


@dataclass(frozen=True, eq=False)
class FgAbelianGroup:
    """``Z^free_rank + C_t1 + ... + C_tk`` with ``t1 | t2 | ...``.

    ``coordinate_map`` (dim x gen_count) sends an exponent vector on the
    presenting generators to canonical coordinates; ``basis`` holds, for
    each canonical generator, an exponent vector on the presenting
    generators that represents it.
    """

    free_rank: int
    torsion: tuple[int, ...]
    gen_count: int
    relators: tuple[tuple[int, ...], ...] = ()
    coordinate_map: tuple[tuple[int, ...], ...] = ()
    basis: tuple[tuple[int, ...], ...] = ()

    @property
    def dim(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def moduli(self) -> tuple[int, ...]:
        """0 for free coordinates, the invariant factor otherwise."""
        return (0,) * self.free_rank + self.torsion

    @property
    def order(self) -> int | None:
        return None if self.free_rank else prod(self.torsion)

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def element(self, coords: Sequence[int]) -> "AbelianElement":
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AbelianElement(self, tuple(c % m if m else c for c, m in zip(coords, self.moduli)))

    def zero(self) -> "AbelianElement":
        return self.element([0] * self.dim)

    def generator(self, i: int) -> "AbelianElement":
        return self.element([int(i == j) for j in range(self.dim)])

    def from_presenting(self, vector: Sequence[int]) -> "AbelianElement":
        if len(vector) != self.gen_count:
            raise ValueError(f"expected {self.gen_count} exponents, got {len(vector)}")
        return self.element([sum(a * b for a, b in zip(row, vector)) for row in self.coordinate_map])

    def from_word(self, w: Word) -> "AbelianElement":
        """Abelianized value of a word over d1..d_gen_count."""
        vec = [0] * self.gen_count
        for g, e in w.syllables:
            if g.kind != CENTRAL or g.index > self.gen_count:
                raise ValueError(f"generator {g.name} is not a generator of this group")
            vec[g.index - 1] += e
        return self.from_presenting(vec)

    def to_word(self, x: "AbelianElement") -> Word:
        """A word over d1..d_gen_count representing ``x``."""
        vec = [0] * self.gen_count
        for c, b in zip(x.coords, self.basis):
            for i, v in enumerate(b):
                vec[i] += c * v
        return Word.from_syllables((d(i + 1), e) for i, e in enumerate(vec))

    def elements(self) -> Iterator["AbelianElement"]:
        if not self.is_finite():
            raise ValueError("group is infinite")
        for coords in product(*(range(t) for t in self.torsion)):
            yield AbelianElement(self, coords)

    def same_structure(self, other: "FgAbelianGroup") -> bool:
        return self.free_rank == other.free_rank and self.torsion == other.torsion

    def __str__(self) -> str:
        return structure_string(self.free_rank, self.torsion)


def structure_string(free_rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts += [f"C_{t}" for t in torsion]
    return " x ".join(parts) if parts else "1"


def from_relators(gen_count: int, relator_vectors: Sequence[Sequence[int]]) -> FgAbelianGroup:
    rels = [tuple(int(x) for x in r) for r in relator_vectors]
    for r in rels:
        if len(r) != gen_count:
            raise ValueError(f"relator {r} does not have length {gen_count}")
    dec = snf([list(r) for r in rels], gen_count)
    diag = dec.diagonal + [0] * (gen_count - len(dec.diagonal))
    free = [j for j in range(gen_count) if diag[j] == 0]
    tors = [j for j in range(gen_count) if diag[j] > 1]
    keep = free + tors
    # rows of A span the relations; with y = x V they become y_j in diag_j Z
    coordinate_map = tuple(tuple(dec.V[i][j] for i in range(gen_count)) for j in keep)
    basis = tuple(tuple(dec.V_inv[j]) for j in keep)
    return FgAbelianGroup(
        free_rank=len(free),
        torsion=tuple(diag[j] for j in tors),
        gen_count=gen_count,
        relators=tuple(rels),
        coordinate_map=coordinate_map,
        basis=basis,
    )


def cyclic(n: int) -> FgAbelianGroup:
    return from_relators(1, [[n]])


_SPEC_PART = re.compile(r"^(?:Z(?:\^([0-9]+))?|C_([0-9]+)|1)$")


def parse_abelian_spec(text: str) -> FgAbelianGroup:
    """Parse ``"Z^2 x C_3 x C_3"``; ``1`` is the trivial group.

    Presenting generators are d1.. in the order written, one relator
    ``d_i^t`` per cyclic factor.
    """
    free = 0
    cyc = []
    for part in (p.strip() for p in text.split(" x ")):
        match = _SPEC_PART.match(part)
        if not match:
            raise ValueError(f"bad abelian group factor {part!r}")
        if part == "1":
            continue
        if part.startswith("Z"):
            free += int(match.group(1) or 1)
        else:
            t = int(match.group(2))
            if t < 1:
                raise ValueError("cyclic factor order must be positive")
            cyc.append(t)
    n = free + len(cyc)
    rels = [[t if j == free + i else 0 for j in range(n)] for i, t in enumerate(cyc)]
    return from_relators(n, rels)


def presentation_relator_words(D: FgAbelianGroup) -> list[Word]:
    return [Word.from_syllables((d(i + 1), e) for i, e in enumerate(r)) for r in D.relators]


@dataclass(frozen=True)
class AbelianElement:
    group: FgAbelianGroup = field(repr=False)
    coords: tuple[int, ...]

    def _check(self, other: "AbelianElement") -> None:
        if other.group is not self.group:
            raise ValueError("elements belong to different groups")

    def __add__(self, other: "AbelianElement") -> "AbelianElement":
        self._check(other)
        return self.group.element([x + y for x, y in zip(self.coords, other.coords)])

    def __neg__(self) -> "AbelianElement":
        return self.group.element([-x for x in self.coords])

    def __sub__(self, other: "AbelianElement") -> "AbelianElement":
        return self + (-other)

    def scale(self, k: int) -> "AbelianElement":
        return self.group.element([k * x for x in self.coords])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_torsion(self) -> bool:
        return not any(self.coords[: self.group.free_rank])

    def order(self) -> int | None:
        if not self.is_torsion():
            return None
        k = 1
        x = self
        while not x.is_zero():
            x = x + self
            k += 1
        return k


class IllDefined(ValueError):
    """A proposed matrix does not respect a source torsion relation."""

    def __init__(self, index: int):
        super().__init__(f"image of canonical generator {index} is not killed by its order")
        self.index = index


@dataclass(frozen=True)
class AbelianHom:
    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix  # target.dim x source.dim

    def __call__(self, x: AbelianElement) -> AbelianElement:
        if x.group is not self.source:
            raise ValueError("element is not in the source group")
        return self.target.element(
            [sum(a * b for a, b in zip(row, x.coords)) for row in self.matrix]
        )


def hom_check(matrix: IntMatrix, source: FgAbelianGroup, target: FgAbelianGroup) -> AbelianHom:
    """Validate a matrix on canonical coordinates as a homomorphism."""
    if len(matrix) != target.dim or any(len(row) != source.dim for row in matrix):
        raise ValueError(f"matrix must be {target.dim} x {source.dim}")
    for i, t in enumerate(source.moduli):
        if t == 0:
            continue
        image = target.element([t * row[i] for row in matrix])
        if not image.is_zero():
            raise IllDefined(i)
    return AbelianHom(source, target, [list(r) for r in matrix])


def zero_hom(source: FgAbelianGroup, target: FgAbelianGroup) -> AbelianHom:
    return AbelianHom(source, target, [[0] * source.dim for _ in range(target.dim)])


# --- the rationals ---------------------------------------------------------
# d_i is interpreted as 1/i!, so every relator d_i^-i d_{i-1} evaluates to 0.

@lru_cache(maxsize=4)
def _factorial(k: int) -> int:
    # k! runs to millions of bits for denominators near 10^6; GMP is far faster here
    return int(fac(k))


def q_word_to_rational(w: Word) -> Fraction:
    total = Fraction(0)
    for g, e in w.syllables:
        if g.kind != CENTRAL:
            raise ValueError(f"ordinary generator {g.name} in a word over d1, d2, ...")
        total += Fraction(e, _factorial(g.index))
    return total


def _legendre(k: int, p: int) -> int:
    # exponent of p in k!
    e = 0
    while k:
        k //= p
        e += k
    return e


def q_level(den: int) -> int:
    """Least k with ``den | k!``."""
    k = 1
    p = 2
    while den > 1:
        if p * p > den:
            p = den
        e = 0
        while den % p == 0:
            den //= p
            e += 1
        if e:
            lo = p  # the least such k is a multiple of p
            while _legendre(lo, p) < e:
                lo += p
            k = max(k, lo)
        p += 1
    return k


def q_rational_to_word(q: Fraction) -> Word:
    """The normal form d_k^t with the least level k; note t = q * k! grows fast."""
    q = Fraction(q)
    if q == 0:
        return Word()
    k = q_level(q.denominator)
    return Word.gen(d(k), q.numerator * (_factorial(k) // q.denominator))


def q_verify_relator(w: Word) -> bool:
    return q_word_to_rational(w) == 0


def q_relator(i: int) -> Word:
    """d_i^-i d_{i-1}, the i-th defining relator (i >= 2)."""
    return Word.from_syllables([(d(i), -i), (d(i - 1), 1)])

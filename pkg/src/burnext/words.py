"""Free-group words in syllable (run-length) form.

A generator is a pair ``(kind, index)`` with ``kind`` either ``ORDINARY``
(the a-type generators a_1..a_m) or ``CENTRAL`` (the d-type generators
d_1, d_2, ...).  Words are immutable and always freely reduced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, NamedTuple

ORDINARY = 0
CENTRAL = 1


class Gen(NamedTuple):
    kind: int
    index: int

    @property
    def name(self) -> str:
        if self.kind == CENTRAL:
            return f"d{self.index}"
        if self.index <= 26:
            return chr(ord("a") + self.index - 1)
        return f"g{self.index}"

    def __repr__(self) -> str:
        return self.name


def a(i: int) -> Gen:
    return Gen(ORDINARY, i)


def d(i: int) -> Gen:
    return Gen(CENTRAL, i)


def letter_key(gen: Gen, sign: int) -> tuple:
    # a < a^-1 < b < b^-1 < ... , ordinary letters before central ones
    return (gen.kind, gen.index, 0 if sign > 0 else 1)


def reduce_syllables(syllables: Iterable[tuple[Gen, int]]) -> tuple:
    out: list[list] = []
    for g, e in syllables:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class Word:
    syllables: tuple = ()

    @classmethod
    def from_syllables(cls, syllables: Iterable[tuple[Gen, int]]) -> "Word":
        return cls(reduce_syllables(syllables))

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[Gen, int]]) -> "Word":
        return cls(reduce_syllables(letters))

    @classmethod
    def gen(cls, g: Gen, e: int = 1) -> "Word":
        return cls(reduce_syllables([(g, e)]))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def __invert__(self) -> "Word":
        return invert(self)

    def inverse(self) -> "Word":
        return invert(self)

    def letters(self) -> list[tuple[Gen, int]]:
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def generators(self) -> set[Gen]:
        return {g for g, _ in self.syllables}

    def is_ordinary(self) -> bool:
        return all(g.kind == ORDINARY for g, _ in self.syllables)

    def is_central(self) -> bool:
        return all(g.kind == CENTRAL for g, _ in self.syllables)

    def exponent_sum(self, g: Gen) -> int:
        return sum(e for h, e in self.syllables if h == g)

    def shortlex_key(self) -> tuple:
        return (len(self), tuple(letter_key(g, s) for g, s in self.letters()))

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


IDENTITY = Word()


def multiply(u: Word, v: Word) -> Word:
    return Word(reduce_syllables(u.syllables + v.syllables))


def invert(w: Word) -> Word:
    return Word(tuple((g, -e) for g, e in reversed(w.syllables)))


def power(w: Word, k: int) -> Word:
    if k == 0 or not w:
        return IDENTITY
    if k < 0:
        return power(invert(w), -k)
    core, conj = cyclic_reduce(w)
    body = Word(reduce_syllables(core.syllables * k))
    return conj * body * invert(conj)


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x^-1 y^-1 x y."""
    return invert(x) * invert(y) * x * y


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1`` with ``core`` cyclically reduced."""
    syl = list(w.syllables)
    left: list = []
    while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
        g, e0 = syl[0]
        e1 = syl[-1][1]
        if (e0 > 0) == (e1 > 0):
            break
        # syl[0] = g^e0, syl[-1] = g^e1 with opposite signs
        if abs(e0) == abs(e1):
            left.append((g, e0))
            syl = syl[1:-1]
        elif abs(e0) < abs(e1):
            left.append((g, e0))
            syl = syl[1:-1] + [(g, e1 + e0)]
        else:
            left.append((g, -e1))
            syl = [(g, e0 + e1)] + syl[1:-1]
    return Word(tuple(syl)), Word(reduce_syllables(left))


def is_cyclically_reduced(w: Word) -> bool:
    return cyclic_reduce(w)[1] == IDENTITY


# --- period schema -------------------------------------------------------

def _codes_to_word(codes: tuple[int, ...]) -> Word:
    return Word.from_letters((a(c // 2 + 1), -1 if c & 1 else 1) for c in codes)


def _is_proper_power(codes: tuple[int, ...]) -> bool:
    n = len(codes)
    for p in range(1, n):
        if n % p == 0 and codes[:p] * (n // p) == codes:
            return True
    return False


def _class_min(codes: tuple[int, ...]) -> tuple[int, ...]:
    inv = tuple(c ^ 1 for c in reversed(codes))
    n = len(codes)
    return min(min(w[i:] + w[:i] for i in range(n)) for w in (codes, inv))


def enumerate_periods(m: int, max_len: int) -> list[Word]:
    """Primitive cyclically reduced words over a_1..a_m of length 1..max_len.

    One shortlex-minimal representative is kept per class under cyclic
    shift and inversion; the result is in shortlex order.
    """
    if m < 1 or max_len < 0:
        raise ValueError("need m >= 1 and max_len >= 0")
    out = []
    for n in range(1, max_len + 1):
        for codes in product(range(2 * m), repeat=n):
            if any(codes[i] ^ 1 == codes[i + 1] for i in range(n - 1)):
                continue
            if n > 1 and codes[0] ^ 1 == codes[-1]:
                continue
            if _is_proper_power(codes):
                continue
            if _class_min(codes) == codes:
                out.append(_codes_to_word(codes))
    return out


# --- text syntax ---------------------------------------------------------

_TOKEN = re.compile(r"^([a-z]|g[0-9]+|d[0-9]+)(?:\^(-?[0-9]+))?$")


class WordSyntaxError(ValueError):
    pass


def parse_gen(name: str) -> Gen:
    if len(name) == 1 and "a" <= name <= "z":
        return a(ord(name) - ord("a") + 1)
    if name[0] == "g" and name[1:].isdigit() and int(name[1:]) >= 1:
        return a(int(name[1:]))
    if name[0] == "d" and name[1:].isdigit() and int(name[1:]) >= 1:
        return d(int(name[1:]))
    raise WordSyntaxError(f"bad generator name {name!r}")


def parse_word(text: str) -> Word:
    """Parse ``"a b^-1 a^2"``; ``1`` or an empty string is the identity."""
    syl = []
    for tok in text.split():
        if tok == "1":
            continue
        match = _TOKEN.match(tok)
        if not match:
            raise WordSyntaxError(f"bad token {tok!r}")
        name, exp = match.groups()
        e = 1 if exp is None else int(exp)
        if e == 0:
            raise WordSyntaxError(f"zero exponent in {tok!r}")
        syl.append((parse_gen(name), e))
    return Word.from_syllables(syl)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(g.name if e == 1 else f"{g.name}^{e}" for g, e in w.syllables)

"""Group presentations and builders for the central-extension groups.

Every infinite relator family is truncated to the period schema of
length <= L (see ``words.enumerate_periods``).  Central generators are
always named d1, d2, ...
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .abelian import FgAbelianGroup, presentation_relator_words
from .words import (
    CENTRAL,
    ORDINARY,
    Gen,
    Word,
    WordSyntaxError,
    a,
    commutator,
    d,
    enumerate_periods,
    format_word,
    parse_word,
)

Assignment = Mapping[int, Word]  # period number j (1-based) -> word over d's


@dataclass(frozen=True)
class Presentation:
    rank: int
    central: tuple[int, ...]
    relators: tuple[Word, ...]
    metadata: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        declared = self.generators()
        for r in self.relators:
            extra = r.generators() - set(declared)
            if extra:
                names = ", ".join(sorted(g.name for g in extra))
                raise ValueError(f"relator {r} uses undeclared generators {names}")

    def generators(self) -> list[Gen]:
        return [a(i) for i in range(1, self.rank + 1)] + [d(k) for k in self.central]

    @property
    def builder(self) -> str:
        return dict(self.metadata).get("builder", "")

    def with_relators(self, extra, builder: str | None = None) -> "Presentation":
        meta = dict(self.metadata)
        if builder:
            meta["builder"] = builder
        return make(self.rank, self.central, list(self.relators) + list(extra), meta)


def make(rank: int, central, relators, metadata: Mapping[str, object] | None = None) -> Presentation:
    seen = set()
    rels = []
    for r in relators:
        if r and r not in seen:
            seen.add(r)
            rels.append(r)
    meta = tuple((k, str(v)) for k, v in (metadata or {}).items())
    return Presentation(rank, tuple(central), tuple(rels), meta)


def period_powers(m: int, n: int, L: int) -> list[Word]:
    return [P ** n for P in enumerate_periods(m, L)]


def build_burnside(m: int, n: int, L: int) -> Presentation:
    if m < 1 or n < 2 or L < 0:
        raise ValueError("need m >= 1, n >= 2, L >= 0")
    return make(m, (), period_powers(m, n, L), {"builder": "burnside", "m": m, "n": n, "L": L})


def _commutators(m: int, central) -> list[Word]:
    return [commutator(Word.gen(a(i)), Word.gen(d(k))) for i in range(1, m + 1) for k in central]


def _absorbed(central, powers_sigma, d_relators) -> set[int]:
    """Central generators provably in the subgroup generated by the a's."""
    absorbed = set()
    for _, s in powers_sigma:
        if len(s.syllables) == 1 and abs(s.syllables[0][1]) == 1:
            absorbed.add(s.syllables[0][0].index)
    changed = True
    while changed:
        changed = False
        for r in d_relators:
            unit = [g.index for g, e in r.syllables if abs(e) == 1 and g.index not in absorbed]
            rest = [g.index for g, _ in r.syllables if g.index not in absorbed]
            if len(rest) == 1 and unit == rest:
                absorbed.add(rest[0])
                changed = True
    return absorbed & set(central)


def build_a_d(m: int, n: int, L: int, D: FgAbelianGroup, sigma: Assignment,
              periods: int | None = None) -> Presentation:
    """Relators of D, [a_i, d_k] for all i, k, and P_j^n sigma(j)^-1.

    ``periods`` keeps only the first that many periods of the schema
    (the truncated groups indexed by a rank bound are exactly such
    prefixes).
    """
    schema = enumerate_periods(m, L)
    if periods is not None:
        schema = schema[:periods]
    central = tuple(range(1, D.gen_count + 1))
    missing = [j for j in range(1, len(schema) + 1) if j not in sigma]
    if missing:
        raise ValueError(f"assignment undefined on periods {missing}")
    for j, w in sigma.items():
        bad = [g for g in w.generators() if g.kind != CENTRAL or g.index not in central]
        if bad:
            raise ValueError(f"assignment of period {j} uses undeclared generator {bad[0].name}")
    d_rels = presentation_relator_words(D)
    powers_sigma = [(P ** n, sigma[j]) for j, P in enumerate(schema, 1)]
    free = sorted(set(central) - _absorbed(central, powers_sigma, d_rels))
    d_comms = [commutator(Word.gen(d(i)), Word.gen(d(k)))
               for x, i in enumerate(free) for k in free[x + 1:]]
    rels = d_rels + d_comms + _commutators(m, central) + [p * ~s for p, s in powers_sigma]
    meta = {"builder": "a-d", "m": m, "n": n, "L": L, "D": str(D)}
    if periods is not None:
        meta["periods"] = periods
    meta["sigma"] = "; ".join(f"{j}->{format_word(sigma[j])}" for j in range(1, len(schema) + 1))
    return make(m, central, rels, meta)


def bijective_assignment(s: int) -> dict[int, Word]:
    return {j: Word.gen(d(j)) for j in range(1, s + 1)}


def build_a_q(m: int, n: int, L: int, imax: int) -> Presentation:
    schema = enumerate_periods(m, L)
    if len(schema) > imax:
        raise ValueError(f"schema has {len(schema)} periods but imax is {imax}")
    central = tuple(range(1, imax + 1))
    d_rels = [Word.from_syllables([(d(i), -i), (d(i - 1), 1)]) for i in range(2, imax + 1)]
    rels = d_rels + _commutators(m, central)
    rels += [P ** n * Word.gen(d(j), -1) for j, P in enumerate(schema, 1)]
    return make(m, central, rels, {"builder": "a-q", "m": m, "n": n, "L": L, "imax": imax})


def build_a_classic(m: int, n: int, L: int) -> Presentation:
    rels = _commutators(m, (1,)) + [p * Word.gen(d(1), -1) for p in period_powers(m, n, L)]
    return make(m, (1,), rels, {"builder": "a-classic", "m": m, "n": n, "L": L})


def build_a_prime(m: int, n: int, L: int) -> Presentation:
    rels = _commutators(m, (1,)) + [p * Word.gen(d(1), -1) for p in period_powers(m, n, L)]
    rels.append(Word.gen(d(1), n))
    return make(m, (1,), rels, {"builder": "a-prime", "m": m, "n": n, "L": L})


def build_a_c(m: int, n: int, L: int) -> Presentation:
    powers = period_powers(m, n, L)
    central = tuple(range(1, len(powers) + 1))
    rels = _commutators(m, central) + [p * Word.gen(d(j), -1) for j, p in enumerate(powers, 1)]
    return make(m, central, rels, {"builder": "a-c", "m": m, "n": n, "L": L})


def _substitute(w: Word, values: Mapping[int, Word]) -> Word:
    out = Word()
    for g, e in w.syllables:
        out = out * (values[g.index] ** e if g.kind == CENTRAL else Word(((g, e),)))
    return out


def _as_commutator(r: Word):
    # recognises a^-1 d^-1 a d, as emitted by the builders
    s = r.syllables
    if (len(s) == 4 and [e for _, e in s] == [-1, -1, 1, 1] and s[0][0] == s[2][0]
            and s[1][0] == s[3][0] and s[0][0].kind == ORDINARY and s[1][0].kind == CENTRAL):
        return s[0][0], s[1][0].index
    return None


def eliminate_central_generators(P: Presentation) -> Presentation:
    """Remove every central generator d_j using a relator ``W d_j^-1`` with
    ``W`` over the a's, substituting ``W`` for ``d_j`` everywhere else.

    Commutators [a_k, d_j] become [W, a_k]; relators that reduce to the
    identity are dropped.
    """
    if not P.central:
        return P
    values: dict[int, Word] = {}
    defining = set()
    for r in P.relators:
        s = r.syllables
        if not s:
            continue
        g, e = s[-1]
        head = Word(s[:-1])
        if g.kind == CENTRAL and e == -1 and head.is_ordinary() and g.index not in values:
            values[g.index] = head
            defining.add(r)
    missing = [k for k in P.central if k not in values]
    if missing:
        raise ValueError(f"central generator d{missing[0]} has no defining relator")
    rels = []
    for r in P.relators:
        if r in defining and _substitute(r, values) == Word():
            continue
        comm = _as_commutator(r)
        if comm is not None:
            rels.append(commutator(values[comm[1]], Word.gen(comm[0])))
        else:
            rels.append(_substitute(r, values))
    meta = dict(P.metadata)
    meta["builder"] = f"eliminated {meta.get('builder', '')}".strip()
    return make(P.rank, (), rels, meta)


# --- text format -----------------------------------------------------------

class PresentationSyntaxError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def serialize(P: Presentation) -> str:
    lines = []
    for k, v in P.metadata:
        lines.append(f"# {k}: {v}")
    lines.append(f"gens {P.rank}")
    if P.central:
        lines.append("cgens " + " ".join(f"d{k}" for k in P.central))
    lines += [f"rel {format_word(r)}" for r in P.relators]
    return "\n".join(lines) + "\n"


def parse(text: str) -> Presentation:
    rank = None
    central: list[int] = []
    rels: list[Word] = []
    meta: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body and rank is None:
                key, _, value = body.partition(":")
                if key.strip().isidentifier():
                    meta[key.strip()] = value.strip()
            continue
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "gens":
            if rank is not None:
                raise PresentationSyntaxError(lineno, "duplicate gens line")
            if not rest.strip().isdigit():
                raise PresentationSyntaxError(lineno, "gens expects a nonnegative integer")
            rank = int(rest)
        elif head == "cgens":
            for tok in rest.split():
                if not (tok[0] == "d" and tok[1:].isdigit() and int(tok[1:]) >= 1):
                    raise PresentationSyntaxError(lineno, f"bad central generator {tok!r}")
                central.append(int(tok[1:]))
        elif head == "rel":
            if rank is None:
                raise PresentationSyntaxError(lineno, "rel before gens")
            try:
                w = parse_word(rest)
            except WordSyntaxError as exc:
                raise PresentationSyntaxError(lineno, str(exc)) from None
            for g in w.generators():
                ok = g.index <= rank if g.kind == ORDINARY else g.index in central
                if not ok:
                    raise PresentationSyntaxError(lineno, f"undeclared generator {g.name}")
            rels.append(w)
        else:
            raise PresentationSyntaxError(lineno, f"unknown directive {head!r}")
    if rank is None:
        raise PresentationSyntaxError(0, "missing gens line")
    return make(rank, central, rels, meta)


def parse_assignment(text: str) -> dict[int, Word]:
    """Lines ``period <j> -> <word over d's>``; ``#`` starts a comment."""
    sigma = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, arrow, rhs = line.partition("->")
        parts = lhs.split()
        if not arrow or len(parts) != 2 or parts[0] != "period" or not parts[1].isdigit():
            raise PresentationSyntaxError(lineno, "expected 'period <index> -> <word>'")
        try:
            w = parse_word(rhs)
        except WordSyntaxError as exc:
            raise PresentationSyntaxError(lineno, str(exc)) from None
        if not w.is_central():
            raise PresentationSyntaxError(lineno, "assignment words must use d-generators only")
        sigma[int(parts[1])] = w
    return sigma


def serialize_assignment(sigma: Assignment) -> str:
    return "".join(f"period {j} -> {format_word(sigma[j])}\n" for j in sorted(sigma))

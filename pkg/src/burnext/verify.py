"""Exhaustive checks of the central-extension properties on finite tables.

Small-exponent Burnside groups have nontrivial centres, so "centre = D"
is checked as the two inclusions D <= Z(A) and pi(Z(A)) <= Z(A/D); the
equality itself is only reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .abelian import AbelianHom, FgAbelianGroup, hom_check
from .coset import GroupTable, element_order, exponent, group_from_presentation
from .homology import RelationModule, relation_module
from .matrix import integer_kernel, solve_integer
from .presentation import Assignment, build_a_d, build_burnside
from .words import Word, d, enumerate_periods


def center(G: GroupTable) -> frozenset[int]:
    M = G.mult
    return frozenset(z for z in range(G.order) if all(M[z][g] == M[g][z] for g in range(G.order)))


def verbal_nth_power_subgroup(G: GroupTable, n: int) -> frozenset[int]:
    return G.subgroup({G.power(g, n) for g in range(G.order)})


def check_identity_xn_y(G: GroupTable, n: int) -> tuple[bool, tuple[int, int] | None]:
    """Does [x^n, y] = 1 hold for all x, y?  Returns the first failing pair."""
    M = G.mult
    for x in range(G.order):
        xn = G.power(x, n)
        for y in range(G.order):
            if M[xn][y] != M[y][xn]:
                return False, (x, y)
    return True, None


def derived_subgroup(G: GroupTable) -> frozenset[int]:
    M, inv = G.mult, G.inverse
    comms = {M[M[inv[x]][inv[y]]][M[x][y]] for x in range(G.order) for y in range(G.order)}
    return G.subgroup(comms)


def quotient_map(G: GroupTable, K: frozenset[int]) -> tuple[GroupTable, list[int]]:
    """G/K for a normal subgroup K, with the projection as a list."""
    label = [-1] * G.order
    reps = []
    for g in range(G.order):
        if label[g] < 0:
            for k in K:
                label[G.mult[g][k]] = len(reps)
            reps.append(g)
    mult = tuple(tuple(label[G.mult[x][y]] for y in reps) for x in reps)
    images = tuple((g, label[x]) for g, x in G.gen_images)
    return GroupTable(mult, images), label


def quotient_by_central(G: GroupTable, Z0) -> GroupTable:
    Z0 = frozenset(Z0)
    if 0 not in Z0 or any(G.mult[x][y] not in Z0 for x in Z0 for y in Z0):
        raise ValueError("not a subgroup")
    if not Z0 <= center(G):
        raise ValueError("subgroup is not central")
    return quotient_map(G, Z0)[0]


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(A: GroupTable) -> tuple[int, ...]:
    """Invariant factors of a finite abelian table, from counts of p^j-torsion."""
    if any(A.mult[x][y] != A.mult[y][x] for x in range(A.order) for y in range(x)):
        raise ValueError("table is not abelian")
    orders = [element_order(A, g) for g in range(A.order)]
    elementary = []
    for p in _prime_factors(A.order):
        counts = [1]
        while True:
            c = sum(1 for o in orders if p ** len(counts) % o == 0)
            if c == counts[-1]:
                break
            counts.append(c)
        # at_least[j] = number of cyclic p-factors of exponent > j
        at_least = [round(math.log(counts[j + 1] // counts[j], p)) for j in range(len(counts) - 1)]
        width = at_least[0] if at_least else 0
        elementary.append([p ** sum(1 for x in at_least if x > i) for i in range(width)])
    width = max((len(v) for v in elementary), default=0)
    return tuple(sorted(math.prod(v[i] for v in elementary if i < len(v)) for i in range(width)))


def conjugacy_class_sizes(G: GroupTable) -> tuple[int, ...]:
    M, inv = G.mult, G.inverse
    seen = [False] * G.order
    sizes = []
    for x in range(G.order):
        if not seen[x]:
            cls = {M[M[g][x]][inv[g]] for g in range(G.order)}
            for y in cls:
                seen[y] = True
            sizes.append(len(cls))
    return tuple(sorted(sizes))


def iso_fingerprint(G: GroupTable) -> tuple:
    orders = tuple(sorted(element_order(G, g) for g in range(G.order)))
    ab, _ = quotient_map(G, derived_subgroup(G))
    return (G.order, exponent(G), abelian_invariants(ab), len(center(G)), orders,
            conjugacy_class_sizes(G))


def generating_set(G: GroupTable) -> list[int]:
    by_order = sorted(range(1, G.order), key=lambda g: (-element_order(G, g), g))
    gens: list[int] = []
    span = frozenset({0})
    for g in by_order:
        if g not in span:
            gens.append(g)
            span = G.subgroup(gens)
            if len(span) == G.order:
                break
    return gens


def _extend(G: GroupTable, H: GroupTable, gens, images) -> dict[int, int] | None:
    phi = {0: 0}
    queue = [0]
    for x in queue:
        for g, h in zip(gens, images):
            y = G.mult[x][g]
            v = H.mult[phi[x]][h]
            if y in phi:
                if phi[y] != v:
                    return None
            else:
                phi[y] = v
                queue.append(y)
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def find_isomorphism(G: GroupTable, H: GroupTable, max_order: int = 128) -> dict[int, int] | None:
    if G.order != H.order:
        return None
    if G.order > max_order:
        raise ValueError(f"order {G.order} exceeds the limit {max_order}")
    gens = generating_set(G)
    h_orders = [element_order(H, h) for h in range(H.order)]
    candidates = [[h for h in range(H.order) if h_orders[h] == element_order(G, g)] for g in gens]

    def search(i, images):
        phi = _extend(G, H, gens[:i], images)
        if phi is None:
            return None
        if i == len(gens):
            return phi
        for h in candidates[i]:
            found = search(i + 1, images + [h])
            if found is not None:
                return found
        return None

    return search(0, [])


def brute_isomorphic(G: GroupTable, H: GroupTable, max_order: int = 128) -> bool:
    if G.order != H.order:
        return False
    if G.order > max_order:
        raise ValueError(f"order {G.order} exceeds the limit {max_order}")
    if iso_fingerprint(G) != iso_fingerprint(H):
        return False
    return find_isomorphism(G, H, max_order) is not None


# --- assignments -------------------------------------------------------------

def _period_classes(rm: RelationModule, n: int, L: int):
    return [rm.class_of(P ** n) for P in enumerate_periods(rm.m, L)]


def suggest_assignment(rm: RelationModule, D: FgAbelianGroup, psi: AbelianHom,
                       L: int | None = None) -> dict[int, Word]:
    """sigma(j) = psi(class of P_j^n), written over D's presenting generators."""
    if psi.source is not rm.V or psi.target is not D:
        raise ValueError("psi must map the relation module to D")
    L = rm.L if L is None else L
    return {j: D.to_word(psi(c)) for j, c in enumerate(_period_classes(rm, rm.n, L), 1)}


@dataclass(frozen=True)
class Consistency:
    consistent: bool
    psi: AbelianHom | None = None
    obstruction: tuple[int, ...] | None = None  # integer relation among period classes
    collapsed: tuple[int, ...] | None = None  # its nonzero value in D

    def __bool__(self) -> bool:
        return self.consistent


def assignment_consistency(sigma: Assignment, rm: RelationModule, D: FgAbelianGroup,
                           L: int | None = None) -> Consistency:
    """Does ``sigma`` factor as psi(class(P_j^n)) for a homomorphism psi: V -> D?"""
    L = rm.L if L is None else L
    classes = _period_classes(rm, rm.n, L)
    s = len(classes)
    if s == 0:
        return Consistency(True, hom_check([[0] * rm.V.dim for _ in range(D.dim)], rm.V, D))
    values = [D.from_word(sigma[j]) for j in range(1, s + 1)]
    V = rm.V
    tors = [i for i, t in enumerate(V.moduli) if t]
    # columns: period coefficients r_j, then one slack per torsion coordinate
    A = [[c.coords[i] for c in classes] + [-V.moduli[i] if i == k else 0 for k in tors]
         for i in range(V.dim)]
    for vec in integer_kernel(A, s + len(tors)):
        r = vec[:s]
        total = D.zero()
        for coeff, v in zip(r, values):
            total = total + v.scale(coeff)
        if not total.is_zero():
            return Consistency(False, obstruction=tuple(r), collapsed=total.coords)
    columns = []
    for i in range(V.dim):
        x = solve_integer(A, [int(i == k) for k in range(V.dim)], s + len(tors))
        if x is None:
            raise ValueError("period classes do not generate the relation module")
        img = D.zero()
        for coeff, v in zip(x[:s], values):
            img = img + v.scale(coeff)
        columns.append(img.coords)
    matrix = [[col[r] for col in columns] for r in range(D.dim)]
    return Consistency(True, hom_check(matrix, V, D))


# --- finite-subgroup check -------------------------------------------------

@dataclass(frozen=True)
class TransversalReport:
    subgroups: int
    meeting_trivially: int
    injective: int
    failures: tuple[frozenset, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


def subgroup_transversal_check(G: GroupTable, D_image, max_order: int = 200) -> TransversalReport:
    """Every subgroup H with H meeting D trivially maps injectively to G/D."""
    if G.order > max_order:
        raise ValueError(f"order {G.order} exceeds the limit {max_order}")
    D_image = frozenset(D_image)
    subs = {G.subgroup([g]) for g in range(G.order)}
    subs |= {G.subgroup([g, h]) for g, h in combinations(range(G.order), 2)}
    subs |= {derived_subgroup(G), center(G)}
    _, label = quotient_map(G, D_image)
    meeting = injective = 0
    failures = []
    for H in sorted(subs, key=lambda h: (len(h), sorted(h))):
        if H & D_image != {0}:
            continue
        meeting += 1
        if len({label[h] for h in H}) == len(H):
            injective += 1
        else:
            failures.append(H)
    return TransversalReport(len(subs), meeting, injective, tuple(failures))


# --- the full suite ----------------------------------------------------------

PASS, FAIL, REPORTED = "PASS", "FAIL", "REPORTED"


@dataclass
class Theorem1Report:
    m: int
    n: int
    L: int
    order: int
    D_order: int | None
    D_image: frozenset
    center: frozenset
    verbal: frozenset
    verbal_expected: frozenset
    identity_witness: tuple[int, int] | None
    quotient_order: int
    burnside_order: int
    burnside_center_order: int
    quotient_isomorphic: bool
    consistency: Consistency | None = None
    items: dict = field(default_factory=dict)

    @property
    def identity_holds(self) -> bool:
        return self.identity_witness is None

    @property
    def embeds(self) -> bool:
        return self.D_order is not None and len(self.D_image) == self.D_order

    @property
    def passed(self) -> bool:
        return all(status != FAIL for status, _ in self.items.values())

    def format(self) -> str:
        lines = [f"A_D({self.m},{self.n}) truncated at L={self.L}: order {self.order}"]
        for k in sorted(self.items):
            status, detail = self.items[k]
            lines.append(f"ITEM {k}: {status} — {detail}")
        d_order = "inf" if self.D_order is None else self.D_order
        verdict = "yes" if self.embeds else "no"
        lines.append(f"EMBEDDING: {verdict} (|D_image|={len(self.D_image)}, |D|={d_order})")
        if self.consistency is not None and not self.consistency:
            lines.append(f"ASSIGNMENT: inconsistent, obstruction {list(self.consistency.obstruction)}")
        return "\n".join(lines)


def verify_theorem1_suite(m: int, n: int, L: int, D: FgAbelianGroup, sigma: Assignment,
                          max_cosets: int = 10**6, rm: RelationModule | None = None) -> Theorem1Report:
    A = group_from_presentation(build_a_d(m, n, L, D, sigma), max_cosets)
    B = group_from_presentation(build_burnside(m, n, L), max_cosets)
    d_images = [A.image(d(k)) for k in range(1, D.gen_count + 1)]
    D_image = A.subgroup(d_images)
    Z = center(A)
    verbal = verbal_nth_power_subgroup(A, n)
    sigma_images = [A.evaluate(sigma[j]) for j in sorted(sigma)]
    expected = A.subgroup(sigma_images + [A.power(x, n) for x in d_images])
    ok, witness = check_identity_xn_y(A, n)

    consistency = None
    try:
        rm = rm or relation_module(m, n, max_cosets=max_cosets)
        consistency = assignment_consistency(sigma, rm, D, L)
    except (ValueError, KeyError):
        pass

    items = {}
    items[1] = (PASS, f"[x^{n},y]=1 on all {A.order ** 2} pairs") if ok else \
        (FAIL, f"[x^{n},y] != 1 at elements {witness}")

    if verbal == D_image:
        items[2] = (PASS, f"verbal x^{n}-subgroup = D-image (order {len(D_image)})")
    elif verbal <= D_image and verbal == expected:
        items[2] = (REPORTED, f"verbal x^{n}-subgroup (order {len(verbal)}) = <sigma-images, n*D> "
                              f"strictly inside D-image (order {len(D_image)})")
    else:
        items[2] = (FAIL, f"verbal x^{n}-subgroup (order {len(verbal)}) not inside D-image "
                          f"(order {len(D_image)})")

    Q, label = quotient_map(A, D_image) if D_image <= Z else (None, None)
    if Q is None:
        items[3] = (FAIL, "D-image is not central")
        iso = False
    else:
        ZQ = center(Q)
        maps_in = {label[z] for z in Z} <= ZQ
        ZB = center(B)
        detail = (f"D-image <= Z(A), pi(Z(A)) <= Z(B); |Z(A)|={len(Z)}, "
                  f"|D-image|={len(D_image)}, |Z(B)|={len(ZB)}")
        if not maps_in:
            items[3] = (FAIL, f"pi(Z(A)) not inside Z(A/D); |Z(A)|={len(Z)}")
        elif Z == D_image:
            items[3] = (PASS, detail + "; Z(A) = D-image")
        else:
            items[3] = (REPORTED, detail + "; Z(A) != D-image since Z(B) is nontrivial at this exponent")
        if Q.order == B.order and Q.order <= 128:
            iso = brute_isomorphic(Q, B)
        else:
            iso = Q.order == B.order and iso_fingerprint(Q) == iso_fingerprint(B)
        how = "brute-force" if Q.order <= 128 else "fingerprint"
        items[4] = (PASS if iso else FAIL,
                    f"A/D-image (order {Q.order}) vs B({m},{n}) truncation (order {B.order}): "
                    f"{'isomorphic' if iso else 'not isomorphic'} ({how})")

    return Theorem1Report(
        m=m, n=n, L=L, order=A.order, D_order=D.order, D_image=D_image, center=Z,
        verbal=verbal, verbal_expected=expected, identity_witness=witness,
        quotient_order=Q.order if Q else 0, burnside_order=B.order,
        burnside_center_order=len(center(B)), quotient_isomorphic=iso,
        consistency=consistency, items=items,
    )

"""Command-line interface.

Exit codes: 0 success, 1 a checked property failed, 2 coset limit
exceeded, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import abelian as ab
from .coset import Overflow, Unstable, exponent, realize, stabilized_order, todd_coxeter
from .homology import relation_module, schur_multiplier
from .presentation import (
    PresentationSyntaxError,
    bijective_assignment,
    build_a_c,
    build_a_classic,
    build_a_d,
    build_a_prime,
    build_a_q,
    build_burnside,
    parse,
    parse_assignment,
    serialize,
)
from .verify import (
    center,
    check_identity_xn_y,
    iso_fingerprint,
    suggest_assignment,
    verbal_nth_power_subgroup,
    verify_theorem1_suite,
)
from .words import WordSyntaxError, enumerate_periods, format_word, parse_word

EXIT_OK, EXIT_FAIL, EXIT_OVERFLOW, EXIT_USAGE = 0, 1, 2, 3
CERTIFIED_EXPONENTS = {2, 3, 4, 6}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_abelian(spec: str) -> ab.FgAbelianGroup:
    """An abelian group from ``Z^r x C_a ...`` or a presentation file over d's."""
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            P = parse(fh.read())
        if P.rank:
            raise UsageError("abelian group file must not declare ordinary generators")
        k = max(P.central, default=0)
        return ab.from_relators(k, [[r.exponent_sum(g) for g in _d_gens(k)] for r in P.relators])
    try:
        return ab.parse_abelian_spec(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _d_gens(k):
    from .words import d
    return [d(i) for i in range(1, k + 1)]


def parse_psi(spec: str, V: ab.FgAbelianGroup, D: ab.FgAbelianGroup) -> ab.AbelianHom:
    """``zero``, ``last``, ``proj:i`` (V coordinate i -> first generator of D)
    or ``matrix:1,0,0;0,1,0`` (rows on canonical coordinates)."""
    if spec == "zero":
        return ab.zero_hom(V, D)
    if spec == "last" or spec.startswith("proj:"):
        i = V.dim if spec == "last" else int(spec[5:])
        if not 1 <= i <= V.dim or D.dim == 0:
            raise UsageError(f"bad projection {spec!r} for V of dimension {V.dim}")
        matrix = [[int(r == 0 and c == i - 1) for c in range(V.dim)] for r in range(D.dim)]
    elif spec.startswith("matrix:"):
        matrix = [[int(x) for x in row.split(",")] for row in spec[7:].split(";")]
    else:
        raise UsageError(f"bad psi spec {spec!r}")
    return ab.hom_check(matrix, V, D)


def _assignment(args, m, n, L, D, rm=None):
    s = len(enumerate_periods(m, L))
    if args.assign:
        with open(args.assign, encoding="utf-8") as fh:
            return parse_assignment(fh.read())
    if args.auto_psi:
        rm = rm or relation_module(m, n, max_cosets=args.max_cosets)
        return suggest_assignment(rm, D, parse_psi(args.auto_psi, rm.V, D), L)
    if D.gen_count < s:
        raise UsageError(f"D has {D.gen_count} generators but the schema has {s} periods; "
                         "give --assign or --auto-psi")
    return bijective_assignment(s)


def _builder(name, args):
    simple = {"burnside": build_burnside, "a-c": build_a_c, "a-classic": build_a_classic,
              "a-prime": build_a_prime}
    if name in simple:
        return simple[name]
    if name == "a-q":
        if args.imax is None:
            raise UsageError("a-q needs --imax")
        return lambda m, n, L: build_a_q(m, n, L, args.imax)
    if name == "a-d":
        if not args.abelian:
            raise UsageError("a-d needs --abelian")
        D = load_abelian(args.abelian)
        cache = {}

        def build(m, n, L):
            if args.auto_psi and "rm" not in cache:
                cache["rm"] = relation_module(m, n, max_cosets=args.max_cosets)
            sigma = _assignment(args, m, n, L, D, cache.get("rm"))
            return build_a_d(m, n, L, D, sigma, periods=args.periods)

        return build
    raise UsageError(f"unknown builder {name!r}")


def _read_presentation(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def cmd_present(args, out):
    P = _builder(args.builder, args)(args.m, args.n, args.L)
    text = serialize(P)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_enumerate(args, out):
    P = _read_presentation(args.file)
    try:
        table = todd_coxeter(P, (), args.max_cosets)
    except Overflow:
        out.write("OVERFLOW\n")
        return EXIT_OVERFLOW
    out.write(f"order {table.index}\n")
    return EXIT_OK


def cmd_stabilize(args, out):
    name = args.builder or args.builder_pos
    if not name:
        raise UsageError("stabilize needs a builder")
    try:
        res = stabilized_order(args.m, args.n, _builder(name, args), args.Lmax, args.max_cosets)
    except Unstable as exc:
        out.write(f"UNSTABLE {exc}\n")
        return EXIT_FAIL
    note = "" if args.n in CERTIFIED_EXPONENTS else ", not certified"
    out.write(f"order {res.order}\nstabilized at L={res.L}{note}\n")
    return EXIT_OK


def cmd_analyze(args, out):
    P = _read_presentation(args.file)
    G = realize(todd_coxeter(P, (), args.max_cosets))
    out.write(f"order {G.order}\n")
    status = EXIT_OK
    if args.center:
        out.write(f"center order {len(center(G))}: {sorted(center(G))}\n")
    if args.exponent:
        out.write(f"exponent {exponent(G)}\n")
    if args.verbal is not None:
        V = verbal_nth_power_subgroup(G, args.verbal)
        whole = " (whole group)" if len(V) == G.order else ""
        out.write(f"verbal x^{args.verbal}-subgroup order {len(V)}{whole}\n")
    if args.identity is not None:
        ok, witness = check_identity_xn_y(G, args.identity)
        if ok:
            out.write(f"identity [x^{args.identity},y]=1 holds\n")
        else:
            x, y = witness
            out.write(f"identity [x^{args.identity},y]=1 fails: x={format_word(G.names[x])}, "
                      f"y={format_word(G.names[y])}\n")
            status = EXIT_FAIL
    if args.fingerprint:
        fp = iso_fingerprint(G)
        out.write(f"fingerprint {fp}\n")
    return status


def cmd_schur(args, out):
    rm = relation_module(args.m, args.n, max_cosets=args.max_cosets)
    M = schur_multiplier(args.m, args.n, rm)
    out.write(f"V({args.m},{args.n}) = {rm.V}\n")
    out.write(f"M({args.m},{args.n}) = {M}\n")
    return EXIT_OK


def cmd_verify(args, out):
    D = load_abelian(args.abelian)
    rm = None
    if args.auto_psi or not args.assign:
        rm = relation_module(args.m, args.n, max_cosets=args.max_cosets)
    sigma = _assignment(args, args.m, args.n, args.L, D, rm)
    report = verify_theorem1_suite(args.m, args.n, args.L, D, sigma, args.max_cosets, rm)
    out.write(report.format() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_q_normal(args, out):
    w = parse_word(args.word)
    try:
        q = ab.q_word_to_rational(w)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(f"{q}  =  {format_word(ab.q_rational_to_word(q))}\n")
    return EXIT_OK


def cmd_q_word(args, out):
    q = Fraction(args.value)
    out.write(f"{q}  =  {format_word(ab.q_rational_to_word(q))}\n")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="burnext", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def group_args(p, L=True):
        p.add_argument("-m", type=int, required=True)
        p.add_argument("-n", type=int, required=True)
        if L:
            p.add_argument("-L", type=int, required=True)
        p.add_argument("--max-cosets", type=int, default=10**6)

    def builder_args(p):
        p.add_argument("--abelian")
        p.add_argument("--assign")
        p.add_argument("--auto-psi")
        p.add_argument("--imax", type=int)
        p.add_argument("--periods", type=int, help="keep only the first s periods")

    p = sub.add_parser("present")
    p.add_argument("builder", choices=["burnside", "a-d", "a-c", "a-classic", "a-prime", "a-q"])
    group_args(p)
    builder_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("enumerate")
    p.add_argument("file")
    p.add_argument("--max-cosets", type=int, default=10**6)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("stabilize")
    p.add_argument("builder_pos", nargs="?", metavar="builder")
    p.add_argument("--builder")
    group_args(p, L=False)
    p.add_argument("--Lmax", type=int, default=6)
    builder_args(p)
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("analyze")
    p.add_argument("file")
    p.add_argument("--max-cosets", type=int, default=10**6)
    p.add_argument("--center", action="store_true")
    p.add_argument("--verbal", type=int)
    p.add_argument("--identity", type=int, help="check [x^n, y] = 1")
    p.add_argument("--exponent", action="store_true")
    p.add_argument("--fingerprint", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("schur")
    group_args(p, L=False)
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("verify-theorem1")
    group_args(p)
    p.add_argument("--abelian", required=True)
    how = p.add_mutually_exclusive_group()
    how.add_argument("--assign")
    how.add_argument("--auto-psi")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("q-normal")
    p.add_argument("word")
    p.set_defaults(func=cmd_q_normal)

    p = sub.add_parser("q-word")
    p.add_argument("value", help="a rational such as 5/2")
    p.set_defaults(func=cmd_q_word)
    return parser


def run(argv, out=None) -> int:
    out = out or sys.stdout
    try:
        args = make_parser().parse_args(argv)
        return args.func(args, out)
    except Overflow:
        out.write("OVERFLOW\n")
        return EXIT_OVERFLOW
    except (UsageError, PresentationSyntaxError, WordSyntaxError, ab.IllDefined,
            FileNotFoundError) as exc:
        sys.stderr.write(f"burnext: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"burnext: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

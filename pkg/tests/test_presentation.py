from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from burnext.abelian import cyclic, parse_abelian_spec
from burnext.coset import enumerate_order
from burnext.presentation import (
    PresentationSyntaxError,
    bijective_assignment,
    build_a_c,
    build_a_classic,
    build_a_d,
    build_a_prime,
    build_a_q,
    build_burnside,
    eliminate_central_generators,
    make,
    parse,
    parse_assignment,
    serialize,
    serialize_assignment,
)
from burnext.words import Word, d, format_word, parse_word

GOLDEN = Path(__file__).parent / "golden"


def rels(P):
    return [format_word(r) for r in P.relators]


def test_burnside_examples():
    assert rels(build_burnside(2, 2, 2)) == ["a^2", "b^2", "a b a b", "a b^-1 a b^-1"]
    assert rels(build_burnside(2, 3, 1)) == ["a^3", "b^3"]
    assert rels(build_burnside(1, 2, 1)) == ["a^2"]


def test_a_d_examples():
    dd = Word.gen(d(1))
    P = build_a_d(2, 3, 1, cyclic(3), {1: dd, 2: dd})
    assert rels(P) == ["d1^3", "a^-1 d1^-1 a d1", "b^-1 d1^-1 b d1", "a^3 d1^-1", "b^3 d1^-1"]
    Z = parse_abelian_spec("Z")
    assert len(build_a_d(2, 3, 1, Z, {1: dd, 2: dd}).relators) == 4
    assert rels(build_a_d(2, 3, 0, cyclic(3), {})) == ["d1^3", "a^-1 d1^-1 a d1",
                                                       "b^-1 d1^-1 b d1"]


def test_a_d_rejects_bad_assignments():
    with pytest.raises(ValueError):
        build_a_d(2, 3, 1, cyclic(3), {1: Word.gen(d(1))})
    with pytest.raises(ValueError):
        build_a_d(2, 3, 1, cyclic(3), {1: Word.gen(d(2)), 2: Word.gen(d(1))})


def test_a_d_period_prefix():
    P = build_a_d(2, 2, 2, cyclic(2), {j: Word.gen(d(1)) for j in range(1, 5)}, periods=2)
    assert rels(P)[-2:] == ["a^2 d1^-1", "b^2 d1^-1"]
    assert dict(P.metadata)["periods"] == "2"


def test_a_q_examples():
    assert rels(build_a_q(2, 3, 1, 2)) == [
        "d2^-2 d1", "a^-1 d1^-1 a d1", "a^-1 d2^-1 a d2", "b^-1 d1^-1 b d1",
        "b^-1 d2^-1 b d2", "a^3 d1^-1", "b^3 d2^-1"]
    assert rels(build_a_q(2, 7, 0, 1)) == ["a^-1 d1^-1 a d1", "b^-1 d1^-1 b d1"]
    with pytest.raises(ValueError):
        build_a_q(2, 3, 2, 2)


def test_a_q_golden_file():
    text = serialize(build_a_q(2, 665, 1, 2))
    assert text == (GOLDEN / "a_q_m2_n665_L1_imax2.txt").read_text()


def test_classic_prime_and_c():
    assert rels(build_a_classic(2, 3, 1)) == ["a^-1 d1^-1 a d1", "b^-1 d1^-1 b d1",
                                              "a^3 d1^-1", "b^3 d1^-1"]
    assert rels(build_a_prime(2, 3, 1)) == rels(build_a_classic(2, 3, 1)) + ["d1^3"]
    assert rels(build_a_classic(2, 3, 0)) == ["a^-1 d1^-1 a d1", "b^-1 d1^-1 b d1"]
    P = build_a_c(2, 2, 2)
    assert P.central == (1, 2, 3, 4) and len(P.relators) == 12
    assert build_a_c(2, 5, 0).central == ()


def test_elimination_examples():
    assert set(rels(eliminate_central_generators(build_a_c(2, 3, 1)))) == {
        "a^-3 b^-1 a^3 b", "b^-3 a^-1 b^3 a"}
    assert rels(eliminate_central_generators(build_a_classic(2, 3, 1))) == [
        "a^-3 b^-1 a^3 b", "b^3 a^-3"]
    P = build_burnside(2, 3, 2)
    assert eliminate_central_generators(P) == P
    with pytest.raises(ValueError):
        eliminate_central_generators(make(1, (1,), [parse_word("a^-1 d1^-1 a d1")]))


@pytest.mark.parametrize("builder", [build_burnside, build_a_classic, build_a_prime])
@pytest.mark.parametrize("m,n,L", [(2, 2, 2), (2, 3, 3)])
def test_elimination_preserves_finite_orders(builder, m, n, L):
    P = builder(m, n, L)
    try:
        before = enumerate_order(P, 200_000)
    except RuntimeError:
        pytest.skip("infinite or too large")
    assert enumerate_order(eliminate_central_generators(P), 200_000) == before


def test_trivial_d_elimination_matches_burnside():
    one = parse_abelian_spec("C_1")
    for m, n, L in [(2, 2, 2), (2, 3, 2)]:
        s = len(build_burnside(m, n, L).relators)
        P = build_a_d(m, n, L, one, {j: Word.gen(d(1)) for j in range(1, s + 1)})
        assert enumerate_order(eliminate_central_generators(P)) == \
            enumerate_order(build_burnside(m, n, L))


def test_builders_deterministic():
    for _ in range(2):
        assert serialize(build_a_c(2, 3, 2)) == serialize(build_a_c(2, 3, 2))
    D = parse_abelian_spec("C_2 x C_2 x C_2 x C_2")
    assert serialize(build_a_d(2, 2, 2, D, bijective_assignment(4))) == \
        serialize(build_a_d(2, 2, 2, D, bijective_assignment(4)))


def test_make_dedupes_and_drops_identity():
    P = make(2, (), [parse_word("a^2"), parse_word("a^2"), Word(), parse_word("b a b^-1 a^-1")])
    assert rels(P) == ["a^2", "b a b^-1 a^-1"]


def test_undeclared_generators_rejected():
    with pytest.raises(ValueError):
        make(1, (), [parse_word("b")])
    with pytest.raises(ValueError):
        make(1, (1,), [parse_word("d2")])


# --- text format -------------------------------------------------------------

presentations = st.sampled_from([
    build_burnside(2, 2, 2), build_a_c(2, 3, 2), build_a_q(2, 665, 1, 2),
    build_a_prime(3, 2, 1), make(2, (), []),
    build_a_d(2, 3, 1, parse_abelian_spec("Z x C_3"), {1: parse_word("d1 d2"), 2: Word()}),
])


@given(presentations)
def test_serialize_parse_round_trip(P):
    Q = parse(serialize(P))
    assert Q == P
    assert serialize(Q) == serialize(P)


def test_parse_comments_and_free_group():
    P = parse("# a comment\ngens 3\n\n# another\n")
    assert P.rank == 3 and P.relators == () and P.central == ()


@pytest.mark.parametrize("text,lineno", [
    ("gens 2\nrel a^0\n", 2),
    ("gens 1\nrel b\n", 2),
    ("rel a\ngens 1\n", 1),
    ("gens 1\ncgens x1\n", 2),
    ("gens 1\nfoo\n", 2),
    ("gens 1\ngens 1\n", 2),
    ("gens x\n", 1),
    ("# nothing\n", 0),
])
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(PresentationSyntaxError) as exc:
        parse(text)
    assert exc.value.lineno == lineno


def test_assignment_round_trip_and_errors():
    sigma = {1: parse_word("d1^2"), 2: Word(), 3: parse_word("d1 d2^-1")}
    assert parse_assignment(serialize_assignment(sigma)) == sigma
    assert parse_assignment("period 1 -> d1  # c\n\n") == {1: parse_word("d1")}
    for bad in ["period x -> d1", "period 1 d1", "period 1 -> a", "period 1 -> d1^0"]:
        with pytest.raises(PresentationSyntaxError):
            parse_assignment(bad)

import random

import pytest
from hypothesis import given, strategies as st

from finloc.dsl import (
    CategoryUniverse,
    FrameUniverse,
    dump_category,
    dump_frame,
    dump_space,
    load,
    parse_blocks,
    parse_category,
    parse_frame,
    parse_space,
    parse_universe,
)
from finloc.duality import enumerate_topologies, find_homeomorphism
from finloc.errors import NotAFrame, NotALattice, NotATopology, ParseError
from finloc.frames import Frame
from finloc.generate import all_frames, lattices_up_to_iso, random_category


def test_parse_three_chain():
    L = parse_frame("frame c3\nelements: 0 m 1\norder: 0 <= m <= 1\n")
    assert isinstance(L, Frame) and list(L.elements) == ["0", "m", "1"]
    assert L.leq[0][2]


def test_order_syntax_variants():
    a = parse_frame("frame d\nelements: 0 a b 1\norder: 0<a<1 0<b<1\n")
    b = parse_frame("frame d\nelements: 0, a, b, 1\norder:\n  1 >= a >= 0\n  1 > b > 0\n")
    assert a.is_isomorphic(b)


def test_comments_and_blank_lines():
    L = parse_frame("# top comment\n\nframe x  # trailing\nelements: 0 1\n\norder: 0 < 1\n")
    assert L.n == 2


def test_lattice_block_skips_frame_check():
    text = "lattice n5\nelements: 0 a b c 1\norder: 0<a<c<1 0<b<1\n"
    assert parse_frame(text).n == 5
    with pytest.raises(NotAFrame):
        parse_frame(text.replace("lattice", "frame"))


def test_not_a_lattice():
    with pytest.raises(NotALattice):
        parse_frame("frame v\nelements: a b\norder:\n")


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("frame x\nelements: 0 1\norder: 0 < 2\n", 3, 12),
        ("frame x\nelements: 0 1\norder: 0 < < 1\n", 3, 12),
        ("frame x\nelements: 0 1\nbogus: 0\n", 3, 1),
        ("frobnicate x\n", 1, 1),
        ("frame x\norder: 0 < 1\n", 1, 1),
        ("frame x\nelements: 0 0\n", 2, 13),
    ],
)
def test_parse_error_positions(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_frame(text)
    assert (e.value.line, e.value.col) == (line, col)
    assert str(e.value).startswith(f"{line}:{col}:")


@pytest.mark.parametrize("L", all_frames(6), ids=lambda L: L.name)
def test_frame_round_trip(L):
    M = parse_frame(dump_frame(L))
    assert list(M.elements) == list(L.elements)
    assert [list(r) for r in M.leq] == [list(r) for r in L.leq]


def test_lattice_round_trip():
    for L in lattices_up_to_iso(5):
        M = parse_frame(dump_frame(L, kind="lattice"))
        assert [list(r) for r in M.leq] == [list(r) for r in L.leq]


def test_parse_category():
    C = parse_category(
        "category par\nobjects: a b q\narrows: f: a -> b, g: a -> b, q: b -> q, h: a -> q\n"
        "compose:\n  q.f = h\n  q.g = h\n"
    )
    assert C.n_obj == 3 and C.n_mor == 7
    assert C.morphisms[C.compose[C.mor("q")][C.mor("f")]] == "h"


def test_category_errors():
    with pytest.raises(ParseError) as e:
        parse_category("category c\nobjects: a\narrows: f a -> a\n")
    assert e.value.line == 3
    with pytest.raises(ParseError):
        parse_category("category c\nobjects: a\narrows: f: a -> a\ncompose: f.f h\n")


@given(st.integers(0, 10_000))
def test_category_round_trip(seed):
    C = random_category(random.Random(seed), 4, 12)
    D = parse_category(dump_category(C))
    assert D.objects == C.objects
    perm = [D.mor(m) for m in C.morphisms]
    for g in range(C.n_mor):
        for f in range(C.n_mor):
            h = C.compose[g][f]
            if h >= 0:
                assert D.compose[perm[g]][perm[f]] == perm[h]


def test_space_round_trip():
    for X in enumerate_topologies(3):
        Y = parse_space(dump_space(X))
        assert find_homeomorphism(X, Y) is not None and Y.opens == X.opens


def test_space_errors():
    with pytest.raises(NotATopology):
        parse_space("space s\npoints: a b\nopens: {} {a}\n")
    with pytest.raises(ParseError):
        parse_space("space s\npoints: a b\nopens: {} {c} {a b}\n")
    with pytest.raises(ParseError):
        parse_space("space s\npoints: a b\nopens: a b\n")


def test_category_universe(corpus):
    U = load(corpus / "diamond.uni")
    assert isinstance(U, CategoryUniverse)
    C = U.category
    assert [C.objects[w] for w in U.W] == ["0", "a", "b", "1"]
    p = U.products[(C.obj("a"), C.obj("b"))]
    assert C.objects[p.obj] == "0"


def test_frame_universe(corpus):
    U = load(corpus / "chains.uni")
    assert isinstance(U, FrameUniverse)
    assert set(U.frames) == {"two-chain", "three-chain"}
    assert set(U.maps) == {"open-point", "closed-point", "collapse"}


def test_universe_rejects_two_universe_blocks():
    text = "frame a\nelements: 0 1\norder: 0<1\nuniverse u\nuniverse v\n"
    with pytest.raises(ParseError):
        parse_universe(text)


def test_load_rejects_unknown_extension(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("frame a\nelements: 0\n")
    with pytest.raises(ParseError):
        load(p)


def test_parse_blocks_sections():
    (b,) = parse_blocks("frame a\nelements: 0 1\norder:\n  0 < 1\n")
    assert b.kind == "frame" and b.name == "a"


def test_every_corpus_file_loads_or_is_marked_bad(corpus):
    from finloc.errors import FinlocError

    for p in sorted(corpus.iterdir()):
        bad = p.stem.startswith("bad-")
        try:
            load(p)
            assert not bad, p
        except FinlocError:
            assert bad, p

import pytest
from hypothesis import given, strategies as st

import oracles
from finloc.errors import NotALattice, NotAPoset, ShapeMismatch, SizeGuardExceeded, UnknownElement
from finloc.generate import lattices_up_to_iso, posets_up_to_iso
from finloc.lattice import (
    FinPoset,
    MonotoneMap,
    chain,
    check_adjunction,
    diamond,
    identity_map,
    is_lattice_table_sound,
    left_adjoint,
    m3,
    pentagon,
    preserves_all_joins,
    preserves_all_meets,
    right_adjoint,
    validate_lattice,
)


def test_two_chain():
    L = validate_lattice(["0", "1"], [("0", "1")])
    assert L.n == 2 and L.bottom == 0 and L.top == 1


def test_diamond_bounds_match_brute_force():
    L = validate_lattice(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    a, b = L.index("a"), L.index("b")
    assert L.elements[L.meet[a][b]] == "0"
    assert L.elements[L.join[a][b]] == "1"
    for x in range(4):
        for y in range(4):
            assert L.meet[x][y] == oracles.meet(L.leq, [x, y])
            assert L.join[x][y] == oracles.join(L.leq, [x, y])


def test_discrete_pair_is_not_a_lattice():
    with pytest.raises(NotALattice) as e:
        validate_lattice(["x", "y"], [])
    assert e.value.witness is not None


def test_order_closure_is_computed():
    L = validate_lattice(["0", "m", "1"], [("0", "m"), ("m", "1")])
    assert L.leq[L.index("0")][L.index("1")]


def test_cycle_is_not_a_poset():
    with pytest.raises(NotAPoset):
        FinPoset.from_pairs(["a", "b"], [("a", "b"), ("b", "a")])


def test_duplicate_elements_rejected():
    with pytest.raises(NotAPoset):
        FinPoset(["a", "a"], [[True, True], [True, True]])


def test_unknown_element():
    with pytest.raises(UnknownElement):
        chain(3).index("zz")


def test_empty_meet_and_join():
    L = chain(4)
    assert L.meet_all([]) == L.top
    assert L.join_all([]) == L.bottom


@pytest.mark.parametrize("n", range(1, 7))
def test_tables_sound_for_every_small_lattice(n):
    for L in lattices_up_to_iso(n):
        assert is_lattice_table_sound(L)
        for x in range(n):
            for y in range(n):
                assert L.meet[x][y] == oracles.meet(L.leq, [x, y])
                assert L.join[x][y] == oracles.join(L.leq, [x, y])


def test_lattice_counts_match_known_sequence():
    # lattices on n elements up to isomorphism: 1, 1, 1, 2, 5, 15
    assert [len(lattices_up_to_iso(n)) for n in range(1, 7)] == [1, 1, 1, 2, 5, 15]
    assert [len(posets_up_to_iso(n)) for n in range(0, 6)] == [1, 1, 2, 5, 16, 63]


def test_identity_adjoint():
    L = chain(2)
    assert left_adjoint(identity_map(L)) == identity_map(L)


def test_adjoint_two_chain_into_three_chain():
    L2, L3 = chain(2), chain(3)
    f = MonotoneMap.from_names(L2, L3, {"0": "0", "1": "1"})
    g = right_adjoint(f)
    assert g.as_names() == {"0": "0", "m": "0", "1": "1"}
    assert check_adjunction(f, g)


def test_three_chain_collapse_against_oracle():
    L3, L2 = chain(3), chain(2)
    f = MonotoneMap.from_names(L3, L2, {"0": "0", "m": "1", "1": "1"})
    g = left_adjoint(f)
    # brute force: g(b) = min {x : b <= f(x)}
    expect = oracles.left_adjoint_of(L3.leq, L2.leq, f.table)
    assert g is not None and tuple(g.table) == expect
    for b in range(2):
        for x in range(3):
            assert L2.leq[b][f(x)] == L3.leq[g(b)][x]


def test_constant_maps_on_two_chain():
    L = chain(2)
    bot = MonotoneMap(L, L, [0, 0])
    top = MonotoneMap(L, L, [1, 1])
    brute = all(L.leq[bot(a)][b] == L.leq[a][top(b)] for a in range(2) for b in range(2))
    assert check_adjunction(bot, top) == brute


def test_mismatched_adjunction():
    with pytest.raises(ShapeMismatch):
        check_adjunction(identity_map(chain(2)), identity_map(chain(3)))


def test_subset_guard():
    with pytest.raises(SizeGuardExceeded):
        chain(17).subset_joins()
    assert len(chain(17).subset_joins(override=True)) == 1 << 17


def test_isomorphism_search():
    D = diamond()
    E = validate_lattice(["bot", "p", "q", "top"], [("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top")])
    assert D.is_isomorphic(E)
    assert not D.is_isomorphic(chain(4))
    assert not pentagon().is_isomorphic(m3())


@st.composite
def monotone_maps(draw):
    Ls = lattices_up_to_iso(draw(st.integers(1, 5)))
    L = Ls[draw(st.integers(0, len(Ls) - 1))]
    Ms = lattices_up_to_iso(draw(st.integers(1, 5)))
    M = Ms[draw(st.integers(0, len(Ms) - 1))]
    table = [None] * L.n
    order = sorted(range(L.n), key=lambda i: bin(L.down[i]).count("1"))
    for x in order:
        lower = [table[y] for y in range(L.n) if L.leq[y][x] and y != x]
        cands = [v for v in range(M.n) if all(M.leq[w][v] for w in lower)]
        table[x] = draw(st.sampled_from(cands))
    return MonotoneMap(L, M, table)


@given(monotone_maps())
def test_left_adjoint_exists_iff_meets_preserved(f):
    g = left_adjoint(f)
    assert (g is not None) == preserves_all_meets(f)
    if g is not None:
        assert preserves_all_joins(g)
        L, M = f.source, f.target
        assert all(M.leq[b][f(x)] == L.leq[g(b)][x] for b in range(M.n) for x in range(L.n))


@given(monotone_maps())
def test_right_adjoint_exists_iff_joins_preserved(g):
    f = right_adjoint(g)
    assert (f is not None) == preserves_all_joins(g)

import pytest

import oracles
from finloc.errors import NotAFrame, NotALocalicMap, SizeGuardExceeded
from finloc.frames import (
    as_frame_unchecked_large,
    check_frame,
    closed_sublocale,
    coframe_law_witness,
    diagonal,
    frame_product,
    heyting,
    identity_localic,
    is_compact,
    is_continuous,
    is_regular,
    is_strongly_hausdorff,
    is_sublocale,
    localic_maps,
    LocalicMap,
    open_sublocale,
    preimage_closed,
    pseudocomplement,
    rather_below,
    sub_join,
    sub_meet,
    sublocale_lattice,
    sublocales,
    well_below,
)
from finloc.generate import all_frames, frames_up_to_iso, lattices_up_to_iso, powerset_lattice
from finloc.lattice import chain, diamond, m3, pentagon


def test_frame_counts():
    # distributive lattices on n elements up to isomorphism
    assert [len(frames_up_to_iso(n)) for n in range(1, 7)] == [1, 1, 1, 2, 3, 5]


@pytest.mark.parametrize("n", range(1, 7))
def test_frame_check_agrees_with_oracle(n):
    for L in lattices_up_to_iso(n):
        try:
            check_frame(L)
            ok = True
        except NotAFrame:
            ok = False
        assert ok == oracles.is_frame(L.leq), L


def test_non_distributive_lattices_rejected_with_witness():
    for L in (pentagon(), m3()):
        with pytest.raises(NotAFrame) as e:
            check_frame(L)
        a, B = e.value.witness
        assert a in L.elements and all(b in L.elements for b in B)
        with pytest.raises(NotAFrame):
            as_frame_unchecked_large(L)


def test_frame_guard():
    with pytest.raises(SizeGuardExceeded):
        check_frame(chain(17))
    assert check_frame(chain(17), override=True).n == 17
    assert as_frame_unchecked_large(chain(20)).n == 20


def test_heyting_on_three_chain():
    L = check_frame(chain(3))
    m = L.index("m")
    assert L.elements[heyting(L, m, L.index("0"))] == "0"
    assert L.elements[heyting(L, m, m)] == "1"
    assert L.elements[pseudocomplement(L, m)] == "0"


def test_heyting_on_diamond():
    L = check_frame(diamond())
    a, b = L.index("a"), L.index("b")
    assert heyting(L, a, b) == b
    assert pseudocomplement(L, a) == b
    assert rather_below(L, a, a)


@pytest.mark.parametrize("L", all_frames(6), ids=lambda L: L.name)
def test_heyting_matches_oracle(L):
    for a in range(L.n):
        for b in range(L.n):
            assert heyting(L, a, b) == oracles.heyting(L.leq, a, b)


@pytest.mark.parametrize("L", all_frames(6), ids=lambda L: L.name)
def test_separation_predicates(L):
    assert is_regular(L) == oracles.is_regular(L.leq)
    # every finite frame is compact and continuous, with x << y iff x <= y
    assert is_compact(L)
    assert is_continuous(L)
    assert all(well_below(L, x, y) == L.leq[x][y] for x in range(L.n) for y in range(L.n))


def test_regular_means_boolean_for_finite_frames():
    for L in all_frames(6):
        boolean = all(L.join[a][pseudocomplement(L, a)] == L.top for a in range(L.n))
        assert is_regular(L) == boolean


@pytest.mark.parametrize("L", all_frames(6), ids=lambda L: L.name)
def test_sublocales_match_nuclei(L):
    got = {S.members for S in sublocales(L)}
    assert got == oracles.nuclei_fixed_sets(L.leq)


def test_sublocale_counts_on_chains():
    # sublocales of an n-chain are the subsets containing the top
    for n in range(1, 7):
        assert len(sublocales(check_frame(chain(n)))) == 2 ** (n - 1)


def test_closed_and_open_sublocales():
    L = check_frame(chain(3))
    m = L.index("m")
    assert closed_sublocale(L, m).names() == ["m", "1"]
    assert sorted(open_sublocale(L, m).names()) == ["0", "1"]


def test_is_sublocale_reports_violation():
    L = check_frame(chain(3))
    assert is_sublocale(L, [L.top])
    assert not is_sublocale(L, [L.index("m")])  # missing the top


def test_sublocale_meet_and_join():
    L = check_frame(diamond())
    a, b = L.index("a"), L.index("b")
    ca, cb = closed_sublocale(L, a), closed_sublocale(L, b)
    assert sub_meet(L, [ca, cb]).members == closed_sublocale(L, L.join[a][b]).members
    assert sub_join(L, [ca, cb]).members == closed_sublocale(L, L.meet[a][b]).members
    assert sub_join(L, []).members == frozenset([L.top])
    assert sub_meet(L, []).members == frozenset(range(L.n))


def test_open_and_closed_are_complements():
    for L in all_frames(5):
        for a in range(L.n):
            o, c = open_sublocale(L, a), closed_sublocale(L, a)
            assert sub_meet(L, [o, c]).members == frozenset([L.top])
            assert sub_join(L, [o, c]).members == frozenset(range(L.n))


@pytest.mark.parametrize("L", all_frames(6), ids=lambda L: L.name)
def test_coframe_law(L):
    subs = sublocales(L)
    assert coframe_law_witness(L, subs) is None
    assert len(sublocale_lattice(L)) == len(subs)


def test_sublocale_guards():
    big = check_frame(chain(17), override=True)
    with pytest.raises(SizeGuardExceeded):
        sublocales(big)


def test_localic_map_validation():
    L3, L2 = check_frame(chain(3)), check_frame(chain(2))
    f = LocalicMap.from_names(L2, L3, {"0": "0", "1": "1"})
    assert f.f_star.as_names() == {"0": "0", "m": "1", "1": "1"}
    with pytest.raises(NotALocalicMap):
        LocalicMap.from_names(L2, L3, {"0": "0", "1": "m"})  # top not preserved


@pytest.mark.parametrize("pair", [(2, 3), (3, 3), (3, 2), (4, 4)])
def test_localic_map_counts_match_oracle(pair):
    for L in frames_up_to_iso(pair[0]):
        for M in frames_up_to_iso(pair[1]):
            got = sorted(tuple(f.table) for f in localic_maps(L, M))
            want = sorted(f for f, _ in oracles.localic_maps(L.leq, M.leq))
            assert got == want


def test_closed_preimage_identity_small():
    for L in all_frames(4):
        for M in all_frames(4):
            for f in localic_maps(L, M):
                for b in range(M.n):
                    assert preimage_closed(f, b).members == L.upset(f.f_star.table[b])


def test_product_of_chains():
    L2 = check_frame(chain(2))
    P, p, q = frame_product(L2, L2)
    assert P.n == 2  # the one-point locale squared
    D = check_frame(diamond())
    P, p, q = frame_product(D, D)
    assert P.is_isomorphic(powerset_lattice(4))  # two points squared
    L3 = check_frame(chain(3))
    P, p, q = frame_product(L3, L3)
    # Lc(S x S) for the Sierpinski space S has 6 opens
    assert P.n == 6


def test_product_matches_product_space():
    for L in all_frames(4):
        for M in all_frames(4):
            P, _, _ = frame_product(L, M)
            pl, pm = oracles.frame_points(L.leq), oracles.frame_points(M.leq)
            oX = {frozenset(i for i, p in enumerate(pl) if a in p) for a in range(L.n)}
            oY = {frozenset(i for i, p in enumerate(pm) if a in p) for a in range(M.n)}
            assert P.n == len(oracles.product_space(oX, len(pl), oY, len(pm)))


def test_product_guard():
    L = check_frame(chain(9))
    with pytest.raises(SizeGuardExceeded):
        frame_product(L, L)


@pytest.mark.parametrize("L", all_frames(4), ids=lambda L: L.name)
def test_strong_hausdorff_matches_oracle(L):
    assert is_strongly_hausdorff(L) == oracles.diagonal_is_closed_map(L.leq)


def test_strong_hausdorff_examples():
    assert is_strongly_hausdorff(check_frame(diamond()))
    assert not is_strongly_hausdorff(check_frame(chain(3)))
    assert is_strongly_hausdorff(check_frame(powerset_lattice(3)))


def test_identity_and_diagonal():
    L = check_frame(chain(3))
    assert identity_localic(L).is_iso()
    d = diagonal(L)
    assert d.source == L

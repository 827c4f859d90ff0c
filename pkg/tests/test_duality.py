import pytest

import oracles
from finloc.duality import (
    FinTopSpace,
    counit_frame_map,
    discrete_space,
    duality_check,
    enumerate_topologies,
    find_homeomorphism,
    is_continuous,
    open_set_frame,
    points_space,
    sierpinski,
    triangle_frame,
    unit_map,
)
from finloc.errors import NotATopology, SizeGuardExceeded
from finloc.frames import check_frame
from finloc.frames import is_compact, is_regular
from finloc.generate import all_frames
from finloc.lattice import chain, diamond


def up_to_homeomorphism(spaces):
    reps = []
    for X in spaces:
        if not any(find_homeomorphism(X, Y) for Y in reps):
            reps.append(X)
    return reps


def test_topology_counts():
    counts = [len(enumerate_topologies(n)) for n in range(4)]
    assert counts == [1, 1, 4, 29]
    assert counts == [len(oracles.topologies(n)) for n in range(4)]
    assert [len(up_to_homeomorphism(enumerate_topologies(n))) for n in range(4)] == [1, 1, 3, 9]


def test_bad_topologies():
    with pytest.raises(NotATopology):
        FinTopSpace(["a", "b"], [[], ["a"]])
    with pytest.raises(NotATopology):
        FinTopSpace(["a", "b", "c"], [[], ["a"], ["b"], ["a", "b", "c"]])
    with pytest.raises(NotATopology):
        FinTopSpace(["a"], [[], ["z"], ["a"]])


def test_sierpinski_opens_form_three_chain():
    assert open_set_frame(sierpinski()).is_isomorphic(chain(3))


def test_points_of_diamond_are_discrete():
    X = points_space(check_frame(diamond()))
    assert find_homeomorphism(X, discrete_space(2)) is not None


def test_points_of_chains():
    for n in range(1, 6):
        X = points_space(check_frame(chain(n)))
        assert X.n == n - 1
        assert X.is_t0()


@pytest.mark.parametrize("n", range(4))
def test_duality_on_all_small_topologies(n):
    for X in enumerate_topologies(n):
        rep = duality_check(X)
        assert rep, (X, rep)


def test_non_t0_unit_is_not_injective():
    X = FinTopSpace(["a", "b", "c"], [[], ["a", "b"], ["a", "b", "c"]])
    eta = unit_map(X)
    assert eta[0] == eta[1]
    assert not X.is_t0()
    assert is_continuous(eta, X, points_space(open_set_frame(X)))


@pytest.mark.parametrize("L", all_frames(6), ids=lambda L: L.name)
def test_finite_frames_are_spatial(L):
    S = points_space(L)
    assert len(S.homs) == len(oracles.frame_points(L.leq))
    assert counit_frame_map(L).is_bijective()
    assert triangle_frame(L)


def test_regular_and_compact_correspondence():
    for n in range(4):
        for X in enumerate_topologies(n):
            L = open_set_frame(X)
            assert X.is_regular() == is_regular(L)
            assert X.is_compact() and is_compact(L)


def test_points_guard():
    with pytest.raises(SizeGuardExceeded):
        points_space(check_frame(chain(17), override=True))


def test_closure_and_interior():
    X = sierpinski()
    top = X.points.index("top")
    bot = X.points.index("bot")
    assert X.closure({top}) == frozenset({bot, top})
    assert X.closure({bot}) == frozenset({bot})
    assert X.interior({bot}) == frozenset()

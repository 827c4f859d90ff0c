import random

from hypothesis import given, strategies as st

import oracles
from finloc.fincat import check_category_laws
from finloc.frames import check_frame
from finloc.generate import (
    all_frames,
    concrete_category,
    frames_up_to_iso,
    posets_up_to_iso,
    powerset_lattice,
    random_category,
    random_functor,
    random_monotone_map,
    random_moore_lattice,
    random_right_adjoint,
    random_thin_functor,
)
from finloc.fincat import thin_category


def test_poset_counts():
    # unlabelled posets: 1, 1, 2, 5, 16, 63, 318
    assert [len(posets_up_to_iso(n)) for n in range(7)] == [1, 1, 2, 5, 16, 63, 318]


def test_frame_counts():
    assert [len(frames_up_to_iso(n)) for n in range(1, 7)] == [1, 1, 1, 2, 3, 5]
    assert len(all_frames(6)) == 13


def test_representatives_are_pairwise_non_isomorphic():
    Ps = posets_up_to_iso(5)
    keys = {P.canonical_form() for P in Ps}
    assert len(keys) == len(Ps)


def test_generated_frames_satisfy_oracle():
    for L in all_frames(6):
        assert oracles.is_frame(L.leq)


@given(st.integers(0, 10_000))
def test_moore_lattice_is_closed_under_intersection(seed):
    L = random_moore_lattice(random.Random(seed), 3, 0.4)
    sets = L.sets
    for i in range(L.n):
        for j in range(L.n):
            assert sets[L.meet[i][j]] == sets[i] & sets[j]


@given(st.integers(0, 10_000))
def test_random_monotone_map(seed):
    rng = random.Random(seed)
    L = random_moore_lattice(rng, 2)
    M = random_moore_lattice(rng, 2)
    f = random_monotone_map(rng, L, M)
    assert all(M.leq[f(x)][f(y)] for x in range(L.n) for y in range(L.n) if L.leq[x][y])


@given(st.integers(0, 10_000))
def test_random_categories_and_functors(seed):
    rng = random.Random(seed)
    A = random_category(rng, 4, 12)
    B = random_category(rng, 4, 12)
    assert A.n_obj <= 4 and A.n_mor <= 12
    check_category_laws(A)
    random_functor(rng, A, B)._check()


def test_concrete_category_closure():
    # one endofunction of a 2-element set that swaps: the group Z/2
    C = concrete_category([2], [(0, 0, (1, 0))])
    assert C.n_mor == 2
    assert concrete_category([3], [(0, 0, (1, 2, 0))], max_mor=2) is None


def test_random_thin_functor_is_monotone():
    rng = random.Random(7)
    P = thin_category(posets_up_to_iso(3)[-1])
    Q = thin_category(powerset_lattice(2))
    for _ in range(20):
        F = random_thin_functor(rng, P, Q)
        assert F is not None
        F._check()


def test_random_right_adjoint_is_an_inclusion():
    for seed in range(10):
        G = random_right_adjoint(random.Random(seed))
        assert len(set(G.obj_map)) == len(G.obj_map)


def test_powerset_lattice():
    P = powerset_lattice(3)
    assert P.n == 8
    check_frame(P)

import pytest

from finloc.errors import NotStronglyHausdorff, ShapeMismatch, UniverseTooSmall
from finloc.frames import check_frame, is_strongly_hausdorff, LocalicMap
from finloc.generate import all_frames, powerset_lattice
from finloc.kgen import (
    LocaleUniverse,
    close_universe,
    compact_sublocales_closed,
    coreflector_k,
    density_counit_locale,
    enlargement_instances,
    idempotence_locale_check,
    image_reflection,
    k_diagram,
    kdiagram_join_is_top,
    missing_objects,
    product_finality_check,
    separation_implications,
)
from finloc.lattice import chain, diamond

SH_FRAMES = [L for L in all_frames(5, min_n=2) if is_strongly_hausdorff(L)]


def test_sh_frames_up_to_five():
    # the two-element and the four-element Boolean algebras
    assert sorted(L.n for L in SH_FRAMES) == [2, 4]


def test_k_diagram_of_diamond():
    K = k_diagram(check_frame(diamond()))
    # sublocales of a two-point discrete locale: its four subsets of points
    assert len(K.objects) == 4
    assert K.category.n_obj == 4


def test_k_diagram_rejects_trivial_frame():
    with pytest.raises(ShapeMismatch):
        k_diagram(check_frame(chain(1)))


@pytest.mark.parametrize("L", SH_FRAMES, ids=lambda L: L.name)
def test_counit_is_iso(L):
    res = density_counit_locale(L)
    assert res.iso
    assert res.T.is_isomorphic(L)
    assert idempotence_locale_check(L)


def test_counit_needs_strong_hausdorff():
    with pytest.raises(NotStronglyHausdorff):
        density_counit_locale(check_frame(chain(3)))


def test_counit_on_cube():
    assert idempotence_locale_check(check_frame(powerset_lattice(3)))


@pytest.mark.parametrize("L", all_frames(6), ids=lambda L: L.name)
def test_separation_implications(L):
    imp = separation_implications(L)
    assert imp["regular_implies_sh"] and imp["compact_sh_implies_regular"]


@pytest.mark.parametrize("L", SH_FRAMES, ids=lambda L: L.name)
def test_compact_sublocales_of_sh_frames_are_closed(L):
    assert compact_sublocales_closed(L) is None
    assert kdiagram_join_is_top(L)


@pytest.mark.parametrize("L", SH_FRAMES + [check_frame(powerset_lattice(3))], ids=lambda L: L.name)
def test_enlargement(L):
    seen = 0
    for P, R, premise, conclusion in enlargement_instances(L, limit=300):
        seen += 1
        if premise:
            assert conclusion, (P, R)
    assert seen > 0


def test_universe_closed_under_composition():
    L2, L3 = check_frame(chain(2)), check_frame(chain(3))
    f = LocalicMap.from_names(L2, L3, {"0": "m", "1": "1"})
    g = LocalicMap.from_names(L3, L2, {"0": "0", "m": "0", "1": "1"})
    U = LocaleUniverse({"two": L2, "three": L3}, [f, g])
    # g.f is the identity on 2, f.g is a new endomorphism of 3
    assert len(U.maps(0, 0)) == 1
    assert len(U.maps(1, 1)) == 2
    with pytest.raises(UniverseTooSmall):
        U.locate(check_frame(chain(4)))


def test_universe_enumerates_all_maps():
    L2, L3 = check_frame(chain(2)), check_frame(chain(3))
    U = LocaleUniverse([L2, L3])
    assert len(U.maps(0, 1)) == 2


def test_image_reflection_on_diamond():
    D = check_frame(diamond())
    U = LocaleUniverse({"D": D})
    assert missing_objects(U, D)
    close_universe(U, D)
    assert not missing_objects(U, D)
    R = image_reflection(U, D)
    assert R.adjunction_ok and R.final_ok


def test_coreflector_on_small_universe():
    U = LocaleUniverse([check_frame(chain(2)), check_frame(diamond()), check_frame(chain(3))])
    k = coreflector_k(U)
    assert len(k) == 2
    for T, eps, iso, ok in k.values():
        assert iso and ok


def test_product_finality_on_two_chain_and_diamond():
    D = check_frame(diamond())
    r = product_finality_check(D, check_frame(chain(2)))
    assert r and r.sizes["P"] == 4

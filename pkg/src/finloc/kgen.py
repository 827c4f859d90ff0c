"""Compact generation of finite strongly Hausdorff locales.

Finite universes of frames stand in for the large categories of locales.
The K-diagram of a frame is the thin category of its compact sublocales;
for a finite frame every sublocale is compact, which is asserted, not
assumed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import (
    NotStronglyHausdorff,
    ShapeMismatch,
    UniverseTooSmall,
)
from .fincat import (
    FinCategory,
    Functor,
    find_left_adjoint,
    is_final,
    product_category,
    thin_category_from_relation,
)
from .frames import (
    Frame,
    LocaleCocone,
    LocaleDiagram,
    LocalicMap,
    Sublocale,
    check_colimit_universal,
    closed_sublocale,
    comparison_map,
    compose_localic,
    frame_product,
    identity_localic,
    is_colimiting_cocone,
    is_compact,
    is_regular,
    is_strongly_hausdorff,
    loc_colimit,
    localic_maps,
    product_of_maps,
    sub_inclusion,
    sub_join,
    sublocale_image,
    sublocales,
)


def _sub_name(S: Sublocale) -> str:
    return "{" + ",".join(S.names()) + "}"


# --------------------------------------------------------------------------
# K-diagrams


@dataclass
class KDiagram:
    parent: Frame
    objects: list
    category: FinCategory
    diagram: LocaleDiagram = field(repr=False)

    def index(self, S: Sublocale) -> int:
        for i, T in enumerate(self.objects):
            if T.members == S.members:
                return i
        raise KeyError(S)

    @property
    def inclusion_cone(self) -> LocaleCocone:
        return LocaleCocone(self.parent, tuple(S.inclusion for S in self.objects))


def k_diagram(L: Frame, override=False) -> KDiagram:
    if L.n < 2:
        raise ShapeMismatch("the one-element frame has no K-diagram (0 = 1)")
    subs = sublocales(L, override)
    for S in subs:
        if not is_compact(S.frame, override):
            raise ShapeMismatch("sublocale is not compact", witness=S.names())
    D = LocaleDiagram.of_sublocales(L, subs)
    return KDiagram(L, subs, D.shape, D)


# --------------------------------------------------------------------------
# the density counit


@dataclass
class CounitResult:
    T: Frame
    eps: LocalicMap
    iso: bool
    alpha: LocaleCocone = field(repr=False)
    kdiagram: KDiagram = field(repr=False)


def density_counit_locale(L: Frame, override=False) -> CounitResult:
    """``T(L) = colim j_L`` and the counit ``ε_L`` factoring the inclusion cone."""
    if not override and not is_strongly_hausdorff(L):
        raise NotStronglyHausdorff("frame is not strongly Hausdorff", witness=L.name)
    K = k_diagram(L, override)
    alpha = loc_colimit(K.diagram, name="T")
    eps = comparison_map(K.diagram, alpha, K.inclusion_cone)
    return CounitResult(alpha.apex, eps, eps.is_iso(), alpha, K)


def idempotence_locale_check(L: Frame, override=False) -> bool:
    """Certify ``T²(L) = T(L)`` through the images ``Q = {α_K(K)}``."""
    res = density_counit_locale(L, override)
    T = res.T
    Q = []
    for K, leg in zip(res.kdiagram.objects, res.alpha.legs):
        img = sublocale_image(leg, Sublocale(K.frame, frozenset(range(K.frame.n))))
        if all(img.members != q.members for q in Q):
            Q.append(img)
    KT = sublocales(T, override=True)
    for q in Q:
        if all(q.members != k.members for k in KT):
            return False
    members = {q.members for q in Q}
    for q in Q:
        for k in KT:
            if q.members & k.members not in members:
                return False
    DQ = LocaleDiagram.of_sublocales(T, Q)
    cone = LocaleCocone(T, tuple(q.inclusion for q in Q))
    if not is_colimiting_cocone(DQ, cone):
        return False
    res2 = density_counit_locale(T, override)
    return res2.iso and res.iso


# --------------------------------------------------------------------------
# universes


class LocaleUniverse:
    """A finite family of frames and the localic maps among them.

    With ``maps=None`` every localic map is enumerated; supplied maps are
    closed under composition and identities.
    """

    def __init__(self, frames, maps=None):
        if isinstance(frames, dict):
            items = list(frames.items())
        else:
            items = [(F.name or f"F{i}", F) for i, F in enumerate(frames)]
        self.names = [k for k, _ in items]
        self.frames = [F for _, F in items]
        self.sh = [F.n >= 1 and is_strongly_hausdorff(F) for F in self.frames]
        self.compact = [is_compact(F, override=True) for F in self.frames]
        self._supplied = None if maps is None else list(maps)
        self._cache = {}
        if self._supplied is not None:
            self._close()

    def _close(self):
        table = {}
        for i, F in enumerate(self.frames):
            table.setdefault((i, i), []).append(identity_localic(F))
        for f in self._supplied:
            i, j = self.locate(f.source), self.locate(f.target)
            if f not in table.setdefault((i, j), []):
                table[(i, j)].append(f)
        changed = True
        while changed:
            changed = False
            for (i, j), fs in list(table.items()):
                for (j2, k), gs in list(table.items()):
                    if j2 != j:
                        continue
                    for f in list(fs):
                        for g in list(gs):
                            h = compose_localic(g, f)
                            if h not in table.setdefault((i, k), []):
                                table[(i, k)].append(h)
                                changed = True
        self._cache = table

    def locate(self, F: Frame) -> int:
        for i, G in enumerate(self.frames):
            if G is F:
                return i
        for i, G in enumerate(self.frames):
            if G == F:
                return i
        raise UniverseTooSmall("frame is not in the universe", witness=F.name)

    def maps(self, i: int, j: int) -> list:
        if (i, j) not in self._cache:
            if self._supplied is not None:
                return []
            self._cache[(i, j)] = list(localic_maps(self.frames[i], self.frames[j]))
        return self._cache[(i, j)]

    def add(self, name, F: Frame):
        self.names.append(name)
        self.frames.append(F)
        self.sh.append(is_strongly_hausdorff(F))
        self.compact.append(is_compact(F, override=True))
        if self._supplied is not None:
            self._close()


def missing_objects(universe: LocaleUniverse, L: Frame) -> list:
    """Sublocales of ``L`` with no isomorphic copy in the universe."""
    out = []
    for S in sublocales(L, override=True):
        if not any(S.frame.is_isomorphic(F) for F in universe.frames):
            out.append(S)
    return out


def close_universe(universe: LocaleUniverse, L: Frame) -> LocaleUniverse:
    for S in missing_objects(universe, L):
        universe.add(_sub_name(S), S.frame)
    return universe


@dataclass
class ReflectionData:
    over: FinCategory
    K: FinCategory
    sublocales: list
    U: Functor
    R: Functor
    adjunction_ok: bool
    final_ok: bool

    def __bool__(self):
        return self.adjunction_ok and self.final_ok


def over_category_locales(universe: LocaleUniverse, L: Frame):
    """Objects ``σ: K -> L`` with compact strongly Hausdorff ``K`` from the universe."""
    li = universe.locate(L)
    objs = []
    for i, F in enumerate(universe.frames):
        if universe.sh[i] and universe.compact[i]:
            for s in universe.maps(i, li):
                objs.append((i, s))
    mors, src, tgt, key = [], [], [], {}
    for a, (i, s) in enumerate(objs):
        for b, (j, t) in enumerate(objs):
            for f in universe.maps(i, j):
                if compose_localic(t, f) == s:
                    key[(a, b, f)] = len(mors)
                    mors.append(f)
                    src.append(a)
                    tgt.append(b)
    n = len(mors)
    comp = [[-1] * n for _ in range(n)]
    for g in range(n):
        for f in range(n):
            if tgt[f] == src[g]:
                comp[g][f] = key[(src[f], tgt[g], compose_localic(mors[g], mors[f]))]
    ident = [key[(a, a, identity_localic(universe.frames[i]))] for a, (i, _) in enumerate(objs)]
    names = [f"{universe.names[i]}#{k}" for k, (i, _) in enumerate(objs)]
    C = FinCategory(names, [f"m{k}" for k in range(n)], src, tgt, ident, comp, name="KHLoc/L", check=False)
    C.obj_data = objs
    C.mor_data = mors
    return C


def image_reflection(universe: LocaleUniverse, L: Frame) -> ReflectionData:
    over = over_category_locales(universe, L)
    ks = [S for S in sublocales(L, override=True) if is_strongly_hausdorff(S.frame)]
    Kcat = thin_category_from_relation(
        [_sub_name(S) for S in ks], lambda i, j: ks[i].members <= ks[j].members
    )
    kpos = {S.members: i for i, S in enumerate(ks)}
    # U_L: a mono σ onto each sublocale
    U_obj = []
    for S in ks:
        hit = None
        for a, (i, s) in enumerate(over.obj_data):
            if s.f.is_injective() and frozenset(s.f.table) == S.members:
                hit = a
                break
        if hit is None:
            raise UniverseTooSmall("no universe object realises a sublocale", witness=S.names())
        U_obj.append(hit)
    U_mor = []
    for u in range(Kcat.n_mor):
        hs = over.hom(U_obj[Kcat.src[u]], U_obj[Kcat.tgt[u]])
        if len(hs) != 1:
            raise UniverseTooSmall("inclusion between sublocales is missing", witness=Kcat.morphisms[u])
        U_mor.append(hs[0])
    U = Functor(Kcat, over, U_obj, U_mor)
    R_obj = []
    for i, s in over.obj_data:
        img = frozenset(s.f.table)
        if img not in kpos:
            raise NotStronglyHausdorff("image is not a strongly Hausdorff sublocale", witness=sorted(img))
        R_obj.append(kpos[img])
    R_mor = [Kcat.hom(R_obj[over.src[m]], R_obj[over.tgt[m]])[0] for m in range(over.n_mor)]
    R = Functor(over, Kcat, R_obj, R_mor)
    adj = find_left_adjoint(U)
    adjunction_ok = (
        adj is not None
        and adj.left.obj_map == R.obj_map
        and adj.hom_bijection_ok()
        and all(
            len(Kcat.hom(R_obj[a], k)) == len(over.hom(a, U_obj[k]))
            for a in range(over.n_obj)
            for k in range(Kcat.n_obj)
        )
    )
    return ReflectionData(over, Kcat, ks, U, R, adjunction_ok, is_final(U))


def coreflector_k(universe: LocaleUniverse) -> dict:
    """``k(L) = T(L)`` for each strongly Hausdorff frame, with the hom bijection checked.

    Values are ``(T(L), ε_L, iso, bijection_ok)``.
    """
    out = {}
    for li, L in enumerate(universe.frames):
        if not universe.sh[li] or L.n < 2:
            continue
        res = density_counit_locale(L)
        ok = True
        for xi, X in enumerate(universe.frames):
            if not universe.sh[xi]:
                continue
            to_T = list(localic_maps(X, res.T))
            image = [compose_localic(res.eps, phi) for phi in to_T]
            if len(set(image)) != len(image) or set(image) != set(localic_maps(X, L)):
                ok = False
        out[universe.names[li]] = (res.T, res.eps, res.iso, ok)
    return out


# --------------------------------------------------------------------------
# products


@dataclass
class ProductFinalityReport:
    adjunction_ok: bool
    final_ok: bool
    theta_ok: bool
    closed_ok: bool
    sizes: dict

    def __bool__(self):
        return self.adjunction_ok and self.final_ok and self.theta_ok and self.closed_ok


def _thin(subs, name):
    return thin_category_from_relation(
        [_sub_name(S) for S in subs], lambda i, j: subs[i].members <= subs[j].members, name=name
    )


def product_finality_check(L: Frame, L2: Frame, universe: Sequence[Frame] = (), override=False) -> ProductFinalityReport:
    """``G(K, K') = image of K × K'`` is final, with left adjoint ``F(Q) = (p(Q), p'(Q))``.

    The θ cone ``K ⊕ L' -> L ⊕ L'`` over ``K(L)`` is checked colimiting by
    comparison with the computed colimit and, for each apex in
    ``universe``, by counting factorizations of every cocone.
    """
    P, p, q = frame_product(L, L2, override)
    KL, KL2 = sublocales(L, override), sublocales(L2, override)
    KP = sublocales(P, override)
    kp_pos = {S.members: i for i, S in enumerate(KP)}
    CL, CL2, CP = _thin(KL, "K(L)"), _thin(KL2, "K(L')"), _thin(KP, "K(P)")
    Prod = product_category(CL, CL2)

    G_obj = []
    closed_ok = True
    for a, b in Prod.obj_pairs:
        K, K2 = KL[a], KL2[b]
        PK, _, _ = frame_product(K.frame, K2.frame, override)
        f = product_of_maps(K.inclusion, K2.inclusion, PK, P)
        img = sublocale_image(f, Sublocale(PK, frozenset(range(PK.n))))
        G_obj.append(kp_pos[img.members])
    for x in range(L.n):
        for y in range(L2.n):
            a = next(i for i, S in enumerate(KL) if S.members == L.upset(x))
            b = next(i for i, S in enumerate(KL2) if S.members == L2.upset(y))
            expect = closed_sublocale(P, P.join[P.basic(x, L2.top)][P.basic(L.top, y)])
            if KP[G_obj[Prod.pair_obj[(a, b)]]].members != expect.members:
                closed_ok = False
    G_mor = []
    for u in range(Prod.n_mor):
        hs = CP.hom(G_obj[Prod.src[u]], G_obj[Prod.tgt[u]])
        if not hs:
            raise ShapeMismatch("G is not monotone", witness=Prod.morphisms[u])
        G_mor.append(hs[0])
    G = Functor(Prod, CP, G_obj, G_mor)

    kl_pos = {S.members: i for i, S in enumerate(KL)}
    kl2_pos = {S.members: i for i, S in enumerate(KL2)}
    F_obj = []
    for Q in KP:
        a = kl_pos[sublocale_image(p, Q).members]
        b = kl2_pos[sublocale_image(q, Q).members]
        F_obj.append(Prod.pair_obj[(a, b)])
    adj = find_left_adjoint(G)
    adjunction_ok = adj is not None and adj.left.obj_map == tuple(F_obj) and adj.hom_bijection_ok()
    # direct Galois check: F(Q) <= (K,K') iff Q <= G(K,K')
    for qi in range(len(KP)):
        for x in range(Prod.n_obj):
            if bool(Prod.hom(F_obj[qi], x)) != bool(CP.hom(qi, G_obj[x])):
                adjunction_ok = False
    final_ok = is_final(G)

    # θ cone over K(L)
    frames, legs = [], []
    prods = []
    for K in KL:
        PK, _, _ = frame_product(K.frame, L2, override)
        prods.append(PK)
        frames.append(PK)
        legs.append(product_of_maps(K.inclusion, identity_localic(L2), PK, P))
    maps = []
    for u in range(CL.n_mor):
        s, t = CL.src[u], CL.tgt[u]
        maps.append(product_of_maps(sub_inclusion(KL[s], KL[t]), identity_localic(L2), prods[s], prods[t]))
    D = LocaleDiagram(CL, frames, maps)
    theta = LocaleCocone(P, tuple(legs))
    colim = loc_colimit(D)
    theta_ok = is_colimiting_cocone(D, theta, colim)
    if theta_ok and universe:
        theta_ok = check_colimit_universal(D, theta, universe) is None
    return ProductFinalityReport(
        adjunction_ok, final_ok, theta_ok, closed_ok,
        {"K(L)": len(KL), "K(L')": len(KL2), "K(P)": len(KP), "P": P.n},
    )


# --------------------------------------------------------------------------
# property helpers


def compact_sublocales_closed(L: Frame):
    """For strongly Hausdorff ``L``: the first compact sublocale that is not closed, else None."""
    closed = {L.upset(a) for a in range(L.n)}
    for S in sublocales(L, override=True):
        if is_compact(S.frame, override=True) and S.members not in closed:
            return S
    return None


def kdiagram_join_is_top(L: Frame) -> bool:
    K = k_diagram(L)
    return sub_join(L, K.objects).members == frozenset(range(L.n))


def enlargement_instances(L: Frame, limit: int = 2000):
    """Instances of the enlargement lemma over families of closed sublocales.

    Yields ``(P, R, premise_ok, conclusion_ok)`` where ``P ⊆ R`` are
    families of closed sublocales with ``P ∩ R ⊆ P``; the premise is that
    the inclusion cone of ``P`` is colimiting, the conclusion the same for
    ``R``.
    """
    closed = []
    for a in range(L.n):
        S = closed_sublocale(L, a)
        if all(S.members != T.members for T in closed):
            closed.append(S)
    k = len(closed)
    count = 0
    cache = {}

    def colimiting(fam):
        key = frozenset(fam)
        if key not in cache:
            subs = [closed[i] for i in sorted(fam)]
            D = LocaleDiagram.of_sublocales(L, subs)
            cache[key] = is_colimiting_cocone(D, LocaleCocone(L, tuple(S.inclusion for S in subs)))
        return cache[key]

    for rmask in range(1, 1 << k):
        R = [i for i in range(k) if rmask >> i & 1]
        for r in range(1, len(R) + 1):
            for Pf in combinations(R, r):
                Pm = {closed[i].members for i in Pf}
                if any(closed[i].members & closed[j].members not in Pm for i in Pf for j in R):
                    continue
                count += 1
                if count > limit:
                    return
                yield Pf, tuple(R), colimiting(Pf), colimiting(R)


def separation_implications(L: Frame) -> dict:
    """Regular ⇒ strongly Hausdorff and compact ∧ strongly Hausdorff ⇒ regular."""
    reg = is_regular(L)
    sh = is_strongly_hausdorff(L)
    comp = is_compact(L, override=True)
    return {
        "regular": reg,
        "strongly_hausdorff": sh,
        "compact": comp,
        "regular_implies_sh": (not reg) or sh,
        "compact_sh_implies_regular": (not (comp and sh)) or reg,
    }

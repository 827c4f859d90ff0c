"""Density comonads of full subcategories, coalgebras, exponentials and Fubini.

Every colimit here is found by :func:`finloc.fincat.find_colimit`; limits
go through the opposite category.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    InternalInvariantBroken,
    MissingColimit,
    MissingProducts,
    NotCloseable,
    NotIdempotent,
)
from .fincat import (
    Cone,
    FinCategory,
    Functor,
    discrete_category,
    factor_through,
    find_colimit,
    find_left_adjoint,
    find_limit,
    full_subcategory,
    is_colimiting,
    over_category,
)


@dataclass(frozen=True)
class Absent:
    """A missing result; falsy, with the reason and the object that caused it."""

    reason: str
    witness: object = None

    def __bool__(self):
        return False


def _unique(C: FinCategory, x: int, y: int, pred):
    hs = [h for h in C.hom(x, y) if pred(h)]
    return hs[0] if len(hs) == 1 else None


# --------------------------------------------------------------------------
# the density comonad


@dataclass
class ComonadData:
    carrier: FinCategory
    W: tuple
    T: Functor
    eta: dict  # w -> morphism w -> T(w)
    epsilon: tuple  # c -> morphism T(c) -> c
    delta: tuple  # c -> morphism T(c) -> T(T(c))
    cones: tuple = field(repr=False)  # c -> colimiting Cone over W/c
    slices: tuple = field(repr=False)

    def alpha(self, c: int, w: int, f: int) -> int:
        """Leg of the colimit at ``c`` indexed by ``(w, f: w -> c)``."""
        S = self.slices[c]
        return self.cones[c].legs[S.lookup[(w, f)]]

    @property
    def coalgebras(self) -> tuple:
        C = self.carrier
        return tuple(c for c in range(C.n_obj) if C.is_iso(self.epsilon[c]))


def density_comonad(C: FinCategory, W) -> ComonadData | Absent:
    """Pointwise left Kan extension of the inclusion ``W ⊆ C`` along itself."""
    Wsub = full_subcategory(C, W)
    inc = Wsub.inclusion
    wobj = inc.obj_map
    slices, cones = [], []
    for c in range(C.n_obj):
        S = over_category(inc, c)
        S.lookup = {(wobj[a], f): k for k, (a, f) in enumerate(S.obj_data)}
        X = S.projection.then(inc)
        lam = find_colimit(X)
        if lam is None:
            return Absent("missing colimit of W/c", witness=C.objects[c])
        slices.append(S)
        cones.append(lam)
    Tobj = [lam.apex for lam in cones]

    def leg(c, w, f):
        return cones[c].legs[slices[c].lookup[(w, f)]]

    def fact(c, d, mu):
        try:
            return factor_through(cones[c], d, mu)
        except Exception as e:  # pragma: no cover - cannot happen for a colimit
            raise InternalInvariantBroken("colimit failed to factor a cocone") from e

    eps = [fact(c, c, [f for _, f in slices[c].obj_data]) for c in range(C.n_obj)]
    Tmor = []
    for g in range(C.n_mor):
        c, c2 = C.src[g], C.tgt[g]
        mu = [leg(c2, wobj[a], C.compose[g][f]) for a, f in slices[c].obj_data]
        Tmor.append(fact(c, Tobj[c2], mu))
    T = Functor(C, C, Tobj, Tmor)  # validates functoriality
    eta = {w: leg(w, w, C.identity[w]) for w in wobj}
    delta = []
    for c in range(C.n_obj):
        Tc = Tobj[c]
        mu = [leg(Tc, wobj[a], leg(c, wobj[a], f)) for a, f in slices[c].obj_data]
        delta.append(fact(c, Tobj[Tc], mu))
    m = ComonadData(C, tuple(wobj), T, eta, tuple(eps), tuple(delta), tuple(cones), tuple(slices))
    _check_comonad(m)
    return m


def _check_comonad(m: ComonadData):
    C, T, eps, delta = m.carrier, m.T, m.epsilon, m.delta
    comp = C.compose
    Tm = T.mor_map
    To = T.obj_map
    for w, e in m.eta.items():
        if comp[eps[w]][e] != C.identity[w]:
            raise InternalInvariantBroken("counit does not split the unit", witness=C.objects[w])
        if comp[delta[w]][e] != comp[Tm[e]][e]:
            raise InternalInvariantBroken("comultiplication fails on the unit", witness=C.objects[w])
    for g in range(C.n_mor):
        c, c2 = C.src[g], C.tgt[g]
        if comp[eps[c2]][Tm[g]] != comp[g][eps[c]]:
            raise InternalInvariantBroken("counit not natural", witness=C.morphisms[g])
        if comp[delta[c2]][Tm[g]] != comp[Tm[Tm[g]]][delta[c]]:
            raise InternalInvariantBroken("comultiplication not natural", witness=C.morphisms[g])
    for c in range(C.n_obj):
        idT = C.identity[To[c]]
        d = delta[c]
        if comp[eps[To[c]]][d] != idT or comp[Tm[eps[c]]][d] != idT:
            raise InternalInvariantBroken("counit law fails", witness=C.objects[c])
        if comp[delta[To[c]]][d] != comp[Tm[d]][d]:
            raise InternalInvariantBroken("coassociativity fails", witness=C.objects[c])


def comonad_from_adjunction(adj) -> ComonadData:
    """The comonad ``F G`` of an adjunction ``F ⊣ G``, on the source of ``G``.

    The counit is the adjunction counit and ``δ = F η G``.  Useful for
    comonads that are not density comonads of a full subcategory.
    """
    F, G = adj.left, adj.right
    A, B = G.source, G.target
    T = G.then(F)
    eps = []
    for x in range(A.n_obj):
        gx = G.obj_map[x]
        u = _unique(A, F.obj_map[gx], x, lambda u: B.compose[G.mor_map[u]][adj.unit[gx]] == B.identity[gx])
        if u is None:
            raise InternalInvariantBroken("adjunction has no counit", witness=A.objects[x])
        eps.append(u)
    delta = tuple(F.mor_map[adj.unit[G.obj_map[x]]] for x in range(A.n_obj))
    m = ComonadData(A, (), T, {}, tuple(eps), delta, (), ())
    _check_comonad(m)
    return m


def is_idempotent(m: ComonadData) -> bool:
    C = m.carrier
    return all(C.is_iso(d) for d in m.delta)


@dataclass
class CoalgebraCategory:
    ambient: FinCategory
    objects: tuple
    category: FinCategory  # full subcategory; its .inclusion is the forgetful functor


def coalgebra_category(m: ComonadData) -> CoalgebraCategory:
    if not is_idempotent(m):
        raise NotIdempotent("comultiplication is not invertible")
    objs = m.coalgebras
    return CoalgebraCategory(m.carrier, objs, full_subcategory(m.carrier, objs))


def coreflector(m: ComonadData) -> Functor:
    """``F_T : C -> W_l[C]``, the corestriction of ``T``."""
    K = coalgebra_category(m)
    sub = K.category
    opos = {o: i for i, o in enumerate(sub.inclusion.obj_map)}
    mpos = {u: i for i, u in enumerate(sub.inclusion.mor_map)}
    C = m.carrier
    try:
        objs = [opos[t] for t in m.T.obj_map]
        mors = [mpos[u] for u in m.T.mor_map]
    except KeyError as e:
        raise InternalInvariantBroken("T(c) is not a coalgebra", witness=e.args[0]) from None
    return Functor(C, sub, objs, mors)


def coreflection_witness(m: ComonadData):
    """First ``(x, c)`` where ``φ ↦ ε_c ∘ φ`` fails to biject ``W_l(x, F_T c)`` onto ``C(x, c)``."""
    C = m.carrier
    objs = coalgebra_category(m).objects
    for x in objs:
        for c in range(C.n_obj):
            src = C.hom(x, m.T.obj_map[c])
            image = {C.compose[m.epsilon[c]][phi] for phi in src}
            if len(image) != len(src) or image != set(C.hom(x, c)):
                return C.objects[x], C.objects[c]
    return None


def generated_check(m: ComonadData, c: int, bound: int = 12) -> bool:
    """Whether ``c`` is a coalgebra, cross-checked by searching W-diagrams.

    Full subdiagrams of ``W/c`` are tried (all of them when the slice has at
    most ``bound`` objects, otherwise only the whole slice and singletons).
    """
    if not is_idempotent(m):
        raise NotIdempotent("comultiplication is not invertible")
    C = m.carrier
    coalg = C.is_iso(m.epsilon[c])
    S = m.slices[c]
    base = m.cones[c].diagram
    k = S.n_obj
    if k <= bound:
        subsets = (s for r in range(k, -1, -1) for s in combinations(range(k), r))
    else:
        subsets = [tuple(range(k)), ()] + [(i,) for i in range(k)]
    found = False
    for objs in subsets:
        sub = full_subcategory(S, objs)
        lam = find_colimit(sub.inclusion.then(base))
        if lam is not None and C.isomorphic_objects(lam.apex, c):
            found = True
            break
    if found != coalg:
        raise InternalInvariantBroken(
            "coalgebra test and diagram search disagree", witness=(C.objects[c], coalg)
        )
    return coalg


# --------------------------------------------------------------------------
# products and exponentials


@dataclass(frozen=True)
class Product:
    obj: int
    p1: int
    p2: int


@dataclass(frozen=True)
class Exponential:
    obj: int
    ev: int  # obj × e -> z


def _pair_diagram(C: FinCategory, a: int, b: int) -> Functor:
    J = discrete_category(["l", "r"])
    return Functor(J, C, [a, b], [C.identity[a], C.identity[b]], check=False)


def find_product(C: FinCategory, a: int, b: int) -> Product | None:
    lim = find_limit(_pair_diagram(C, a, b))
    if lim is None:
        return None
    return Product(lim.apex, lim.legs[0], lim.legs[1])


def is_product(C: FinCategory, a: int, b: int, p: Product) -> bool:
    X = _pair_diagram(C, a, b)
    c = Cone(X, p.obj, (p.p1, p.p2), "lim")
    return c.check() and is_colimiting(c)


class Products:
    """Chosen binary products: supplied entries are verified, others searched."""

    def __init__(self, C: FinCategory, supplied: dict | None = None):
        self.C = C
        self.table = {}
        for (a, b), p in (supplied or {}).items():
            if not is_product(C, a, b, p):
                raise MissingProducts("supplied product is not a product", witness=(C.objects[a], C.objects[b]))
            self.table[(a, b)] = p

    def __call__(self, a: int, b: int) -> Product:
        if (a, b) not in self.table:
            p = find_product(self.C, a, b)
            if p is None:
                raise MissingProducts(
                    "binary product does not exist", witness=(self.C.objects[a], self.C.objects[b])
                )
            self.table[(a, b)] = p
        return self.table[(a, b)]

    def pair_map(self, a, b, a2, b2, u: int, v: int) -> int:
        """``u × v : a×b -> a2×b2``."""
        C = self.C
        P, Q = self(a, b), self(a2, b2)
        comp = C.compose
        h = _unique(
            C, P.obj, Q.obj,
            lambda h: comp[Q.p1][h] == comp[u][P.p1] and comp[Q.p2][h] == comp[v][P.p2],
        )
        if h is None:
            raise InternalInvariantBroken("product map is not unique")
        return h


def product_functor(C: FinCategory, e: int, products: Products) -> Functor:
    """``- × e : C -> C``."""
    objs = [products(x, e).obj for x in range(C.n_obj)]
    ide = C.identity[e]
    mors = [products.pair_map(C.src[u], e, C.tgt[u], e, u, ide) for u in range(C.n_mor)]
    return Functor(C, C, objs, mors)


def exponentials_for(C: FinCategory, e: int, products: Products):
    """The right adjoint of ``- × e`` as ``{z: Exponential}``, or None."""
    P = product_functor(C, e, products)
    adj = find_left_adjoint(P.op())
    if adj is None:
        return None
    return {z: Exponential(adj.left.obj_map[z], adj.unit[z]) for z in range(C.n_obj)}


def is_exponentiable(C: FinCategory, e: int, products: Products | dict | None = None) -> bool:
    if not isinstance(products, Products):
        products = Products(C, products)
    return exponentials_for(C, e, products) is not None


def is_exponential(C: FinCategory, e: int, z: int, E: Exponential, products: Products) -> bool:
    """Universal property: each ``f: x×e -> z`` is ``ev ∘ (g×e)`` for exactly one ``g``."""
    ide = C.identity[e]
    for x in range(C.n_obj):
        Px = products(x, e).obj
        got = {}
        for g in C.hom(x, E.obj):
            f = C.compose[E.ev][products.pair_map(x, e, E.obj, e, g, ide)]
            if f in got:
                return False
            got[f] = g
        if set(got) != set(C.hom(Px, z)):
            return False
    return True


# --------------------------------------------------------------------------
# closeable subcategories


@dataclass
class CloseableReport:
    exponentiable_ok: bool = True
    product_closure_ok: bool = True
    theta_colimiting_ok: bool = True
    s_functor_limit_ok: bool = True
    witnesses: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    @property
    def passed(self) -> bool:
        return (
            self.exponentiable_ok
            and self.product_closure_ok
            and self.theta_colimiting_ok
            and self.s_functor_limit_ok
        )


class KanUniverse:
    """A category, a full subcategory ``W`` and chosen products/exponentials."""

    def __init__(self, C: FinCategory, W, products=None, exponentials=None):
        self.C = C
        self.W = tuple(sorted(C.obj(w) for w in W))
        self.products = products if isinstance(products, Products) else Products(C, products)
        self.supplied_exp = dict(exponentials or {})
        self._exp = {}
        m = density_comonad(C, self.W)
        if not m:
            raise NotCloseable("density comonad does not exist", witness=m.witness)
        if not is_idempotent(m):
            raise NotCloseable("density comonad is not idempotent")
        self.comonad = m
        self.coalgebras = m.coalgebras

    def exponentials(self, e: int):
        if e not in self._exp:
            C = self.C
            table = exponentials_for(C, e, self.products)
            if table is not None:
                for (v, z), E in self.supplied_exp.items():
                    if v == e:
                        if not is_exponential(C, e, z, E, self.products):
                            raise NotCloseable(
                                "supplied exponential fails its universal property",
                                witness=(C.objects[z], C.objects[e]),
                            )
                        table[z] = E
            self._exp[e] = table
        return self._exp[e]

    def theta_cone(self, X: int, Y: int) -> Cone:
        """``θ: J_X × Y => X ×_{W_l} Y`` in ``C``."""
        C, m, prods = self.C, self.comonad, self.products
        S = m.slices[X]
        inc = m.cones[X].diagram
        wobj = [inc.obj_map[k] for k in range(S.n_obj)]
        objs = [prods(v, Y).obj for v in wobj]
        idY = C.identity[Y]
        mors = []
        for u in range(S.n_mor):
            a, b = S.src[u], S.tgt[u]
            mors.append(prods.pair_map(wobj[a], Y, wobj[b], Y, inc.mor_map[u], idY))
        D = Functor(S, C, objs, mors)
        XY = prods(X, Y)
        apex = m.T.obj_map[XY.obj]
        epsXY = m.epsilon[XY.obj]
        legs = []
        for k, (_, sigma) in enumerate(S.obj_data):
            sx1 = prods.pair_map(wobj[k], Y, X, Y, sigma, idY)
            th = _unique(C, objs[k], apex, lambda h: C.compose[epsXY][h] == sx1)
            if th is None:
                raise NotCloseable("θ component is not determined", witness=(C.objects[X], C.objects[Y], k))
            legs.append(th)
        return Cone(D, apex, tuple(legs))

    def s_functor(self, Y: int, Z: int) -> Functor:
        """``S^Y_Z : (W/Y)^op -> C``, ``(V, σ) ↦ Z^V``."""
        C, m, prods = self.C, self.comonad, self.products
        S = m.slices[Y]
        inc = m.cones[Y].diagram
        wobj = [inc.obj_map[k] for k in range(S.n_obj)]
        exps = [self.exponentials(v)[Z] for v in wobj]
        Sop = S.opposite()
        mors = []
        for u in range(S.n_mor):
            a, b = S.src[u], S.tgt[u]  # u: V_a -> V_b, contravariant image Z^{V_b} -> Z^{V_a}
            Ea, Eb = exps[a], exps[b]
            rhs = C.compose[Eb.ev][prods.pair_map(Eb.obj, wobj[a], Eb.obj, wobj[b], C.identity[Eb.obj], inc.mor_map[u])]
            t = _unique(
                C, Eb.obj, Ea.obj,
                lambda h: C.compose[Ea.ev][prods.pair_map(Eb.obj, wobj[a], Ea.obj, wobj[a], h, C.identity[wobj[a]])] == rhs,
            )
            if t is None:
                raise NotCloseable("exponential transpose is not unique", witness=S.morphisms[u])
            mors.append(t)
        return Functor(Sop, C, [e.obj for e in exps], mors)


def closeable_check(C: FinCategory, W, products=None, exponentials=None) -> CloseableReport:
    U = W if isinstance(W, KanUniverse) else KanUniverse(C, W, products, exponentials)
    C = U.C
    rep = CloseableReport()
    coalg = set(U.coalgebras)
    for v in U.W:
        try:
            ok = U.exponentials(v) is not None
        except MissingProducts as e:
            ok = False
            rep.witnesses.setdefault("exponentiable", e.witness)
        if not ok:
            rep.exponentiable_ok = False
            rep.witnesses.setdefault("exponentiable", C.objects[v])
    for v in U.W:
        for w in U.W:
            try:
                p = U.products(v, w).obj
            except MissingProducts:
                p = None
            if p is None or p not in coalg:
                rep.product_closure_ok = False
                rep.witnesses.setdefault("product_closure", (C.objects[v], C.objects[w]))
    for X in sorted(coalg):
        for Y in sorted(coalg):
            try:
                ok = is_colimiting(U.theta_cone(X, Y))
            except (NotCloseable, MissingProducts):
                ok = False
            if not ok:
                rep.theta_colimiting_ok = False
                rep.witnesses.setdefault("theta", (C.objects[X], C.objects[Y]))
    if rep.exponentiable_ok:
        for Y in sorted(coalg):
            for Z in sorted(coalg):
                try:
                    ok = find_limit(U.s_functor(Y, Z)) is not None
                except NotCloseable:
                    ok = False
                if not ok:
                    rep.s_functor_limit_ok = False
                    rep.witnesses.setdefault("s_functor", (C.objects[Y], C.objects[Z]))
    else:
        rep.s_functor_limit_ok = False
        rep.witnesses.setdefault("s_functor", "needs exponentials")
    U.report = rep
    return rep


def _universe(C, W, products=None, exponentials=None) -> KanUniverse:
    if isinstance(W, KanUniverse):
        return W
    return KanUniverse(C, W, products, exponentials)


def internal_hom(C: FinCategory, W, Y, Z, products=None, exponentials=None) -> int:
    """``Z^Y = F_T(lim S^Y_Z)``."""
    U = _universe(C, W, products, exponentials)
    rep = getattr(U, "report", None) or closeable_check(U.C, U)
    if not rep:
        raise NotCloseable("closeable check fails", witness=rep.witnesses)
    C = U.C
    Y, Z = C.obj(Y), C.obj(Z)
    lim = find_limit(U.s_functor(Y, Z))
    return U.comonad.T.obj_map[lim.apex]


def exponential_adjunction_check(C: FinCategory, W, products=None, exponentials=None):
    """``|Hom(X ×_{W_l} Y, Z)| = |Hom(X, Z^Y)|`` for every coalgebra triple.

    Returns ``(ok, triples_checked, first_failure)``.
    """
    U = _universe(C, W, products, exponentials)
    C = U.C
    coalg = sorted(U.coalgebras)
    T = U.comonad.T.obj_map
    homs = {(Y, Z): internal_hom(C, U, Y, Z) for Y in coalg for Z in coalg}
    count = 0
    for X in coalg:
        for Y in coalg:
            XY = T[U.products(X, Y).obj]
            for Z in coalg:
                count += 1
                if len(C.hom(XY, Z)) != len(C.hom(X, homs[(Y, Z)])):
                    return False, count, (C.objects[X], C.objects[Y], C.objects[Z])
    return True, count, None


# --------------------------------------------------------------------------
# Fubini


@dataclass
class FubiniResult:
    ok: bool
    joint: Cone | None
    iterated: Cone | None
    comparison: int | None = None

    def __bool__(self):
        return self.ok


def fubini_check(B: Functor) -> FubiniResult:
    """Joint colimit of ``B: I×J -> C`` against ``colim_i colim_j B(i, j)``."""
    P = B.source
    I, J = P.factors
    C = B.target
    pobj, pmor = P.pair_obj, P.pair_mor
    partial = []
    for i in range(I.n_obj):
        idi = I.identity[i]
        Bi = Functor(
            J, C,
            [B.obj_map[pobj[(i, j)]] for j in range(J.n_obj)],
            [B.mor_map[pmor[(idi, v)]] for v in range(J.n_mor)],
            check=False,
        )
        lam = find_colimit(Bi)
        if lam is None:
            raise MissingColimit("partial colimit B(i,-) does not exist", witness=I.objects[i])
        partial.append(lam)
    hat_mor = []
    for u in range(I.n_mor):
        i, i2 = I.src[u], I.tgt[u]
        mu = [
            C.compose[partial[i2].legs[j]][B.mor_map[pmor[(u, J.identity[j])]]]
            for j in range(J.n_obj)
        ]
        hat_mor.append(factor_through(partial[i], partial[i2].apex, mu))
    Bhat = Functor(I, C, [lam.apex for lam in partial], hat_mor)
    joint = find_colimit(B)
    iterated = find_colimit(Bhat)
    if joint is None or iterated is None:
        return FubiniResult(joint is None and iterated is None, joint, iterated)
    # induced cone hat-lambda: B^ => colim B must be colimiting
    hat_legs = [
        factor_through(partial[i], joint.apex, [joint.legs[pobj[(i, j)]] for j in range(J.n_obj)])
        for i in range(I.n_obj)
    ]
    induced_ok = is_colimiting(Cone(Bhat, joint.apex, tuple(hat_legs)))
    mu = [
        C.compose[iterated.legs[i]][partial[i].legs[j]] for (i, j) in P.obj_pairs
    ]
    h = factor_through(joint, iterated.apex, mu)
    return FubiniResult(induced_ok and C.is_iso(h), joint, iterated, h)

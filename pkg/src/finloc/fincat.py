"""Finite categories as composition tables.

Morphisms and objects are addressed by index. ``compose[g][f]`` is the
index of ``g ∘ f`` or -1 when the composite is undefined.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import (
    AssocViolation,
    CategoryLawViolation,
    FunctorLawViolation,
    IdentityViolation,
    NotColimiting,
    SizeGuardExceeded,
    UnknownObject,
)

LAW_GUARD = 24


class FinCategory:
    def __init__(self, objects, morphisms, src, tgt, identity, compose, name=None, check=True):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.identity = tuple(identity)
        self.compose = tuple(tuple(r) for r in compose)
        self.name = name
        self._obj_index = {o: i for i, o in enumerate(self.objects)}
        self._mor_index = {m: i for i, m in enumerate(self.morphisms)}
        homs: dict = {}
        for u in range(len(self.morphisms)):
            homs.setdefault((self.src[u], self.tgt[u]), []).append(u)
        self._homs = {k: tuple(v) for k, v in homs.items()}
        self._op = None
        if check:
            check_category_laws(self)

    n_obj = property(lambda self: len(self.objects))
    n_mor = property(lambda self: len(self.morphisms))

    def __repr__(self):
        return f"FinCategory({self.name or ''}: {self.n_obj} objects, {self.n_mor} morphisms)"

    def obj(self, x) -> int:
        if isinstance(x, int) and not isinstance(x, bool):
            if 0 <= x < self.n_obj:
                return x
            raise UnknownObject(f"object index {x} out of range")
        try:
            return self._obj_index[x]
        except KeyError:
            raise UnknownObject(f"unknown object {x!r}") from None

    def mor(self, m) -> int:
        if isinstance(m, int) and not isinstance(m, bool):
            return m
        try:
            return self._mor_index[m]
        except KeyError:
            raise UnknownObject(f"unknown morphism {m!r}") from None

    def hom(self, x: int, y: int) -> tuple:
        return self._homs.get((x, y), ())

    def comp(self, g: int, f: int) -> int:
        h = self.compose[g][f]
        if h < 0:
            raise CategoryLawViolation(
                f"cannot compose {self.morphisms[g]} after {self.morphisms[f]}"
            )
        return h

    def comp_all(self, *ms: int) -> int:
        """``ms[0] ∘ ms[1] ∘ ...``."""
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.comp(g, out)
        return out

    @property
    def is_thin(self) -> bool:
        return all(len(v) == 1 for v in self._homs.values())

    def opposite(self) -> "FinCategory":
        if self._op is None:
            n = self.n_mor
            comp = [[self.compose[f][g] for f in range(n)] for g in range(n)]
            op = FinCategory(
                self.objects, self.morphisms, self.tgt, self.src, self.identity, comp,
                name=(self.name or "C") + "^op", check=False,
            )
            op._op = self
            self._op = op
        return self._op

    def is_iso(self, f: int) -> bool:
        return self.inverse(f) is not None

    def inverse(self, f: int):
        x, y = self.src[f], self.tgt[f]
        for g in self.hom(y, x):
            if self.compose[g][f] == self.identity[x] and self.compose[f][g] == self.identity[y]:
                return g
        return None

    def isomorphic_objects(self, x: int, y: int) -> bool:
        return any(self.is_iso(f) for f in self.hom(x, y))

    def is_initial(self, x: int) -> bool:
        return all(len(self.hom(x, y)) == 1 for y in range(self.n_obj))

    def is_terminal(self, x: int) -> bool:
        return all(len(self.hom(y, x)) == 1 for y in range(self.n_obj))


def check_category_laws(C: FinCategory, override=False):
    n = C.n_mor
    for x in range(C.n_obj):
        i = C.identity[x]
        if C.src[i] != x or C.tgt[i] != x:
            raise IdentityViolation("identity has the wrong type", witness=C.objects[x])
    for g in range(n):
        for f in range(n):
            h = C.compose[g][f]
            if (h >= 0) != (C.tgt[f] == C.src[g]):
                raise AssocViolation(
                    "composite defined on mismatched arrows" if h >= 0 else "missing composite",
                    witness=(C.morphisms[g], C.morphisms[f]),
                )
            if h >= 0 and (C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]):
                raise AssocViolation(
                    f"{C.morphisms[g]}.{C.morphisms[f]} = {C.morphisms[h]} is mistyped",
                    witness=(C.morphisms[g], C.morphisms[f], C.morphisms[h]),
                )
    for f in range(n):
        if C.compose[C.identity[C.tgt[f]]][f] != f or C.compose[f][C.identity[C.src[f]]] != f:
            raise IdentityViolation("identity law fails", witness=C.morphisms[f])
    if n > LAW_GUARD and not override:
        raise SizeGuardExceeded(
            f"associativity check refuses {n} morphisms (guard {LAW_GUARD})", witness=n
        )
    comp = C.compose
    for h in range(n):
        for g in range(n):
            hg = comp[h][g]
            if hg < 0:
                continue
            for f in range(n):
                gf = comp[g][f]
                if gf >= 0 and comp[hg][f] != comp[h][gf]:
                    raise AssocViolation(
                        "associativity fails",
                        witness=(C.morphisms[h], C.morphisms[g], C.morphisms[f]),
                    )


def validate_category(objects, arrows, compositions=None, name=None, override=False) -> FinCategory:
    """Build a category from named arrows ``(name, src, tgt)`` and composites.

    Identities are implicit (``id_<obj>``). ``compositions`` maps
    ``(g, f)`` to the name of ``g ∘ f``; a missing entry is filled in when
    the hom-set it lands in has exactly one arrow.
    """
    objects = list(objects)
    if len(set(objects)) != len(objects):
        raise CategoryLawViolation("duplicate object names")
    oidx = {o: i for i, o in enumerate(objects)}
    names = [f"id_{o}" for o in objects]
    src = list(range(len(objects)))
    tgt = list(range(len(objects)))
    for a in arrows:
        nm, s, t = a
        if s not in oidx or t not in oidx:
            raise UnknownObject(f"arrow {nm} refers to an unknown object", witness=nm)
        if nm in names:
            raise CategoryLawViolation(f"duplicate arrow name {nm}", witness=nm)
        names.append(nm)
        src.append(oidx[s])
        tgt.append(oidx[t])
    midx = {m: i for i, m in enumerate(names)}
    n = len(names)
    comp = [[-1] * n for _ in range(n)]
    for f in range(n):
        comp[tgt[f]][f] = f  # id ∘ f
        comp[f][src[f]] = f  # f ∘ id
    for (g, f), h in (compositions or {}).items():
        for m in (g, f, h):
            if m not in midx:
                raise UnknownObject(f"unknown arrow {m!r} in composition table", witness=m)
        gi, fi, hi = midx[g], midx[f], midx[h]
        if tgt[fi] != src[gi] or src[hi] != src[fi] or tgt[hi] != tgt[gi]:
            raise AssocViolation(f"{g}.{f} = {h} is mistyped", witness=(g, f, h))
        if comp[gi][fi] >= 0 and comp[gi][fi] != hi:
            raise IdentityViolation(f"{g}.{f} contradicts an identity law", witness=(g, f, h))
        comp[gi][fi] = hi
    homs: dict = {}
    for u in range(n):
        homs.setdefault((src[u], tgt[u]), []).append(u)
    for g in range(n):
        for f in range(n):
            if tgt[f] == src[g] and comp[g][f] < 0:
                cands = homs.get((src[f], tgt[g]), [])
                if len(cands) != 1:
                    raise CategoryLawViolation(
                        f"composite {names[g]}.{names[f]} is not given", witness=(names[g], names[f])
                    )
                comp[g][f] = cands[0]
    C = FinCategory(objects, names, src, tgt, range(len(objects)), comp, name=name, check=False)
    check_category_laws(C, override)
    return C


def thin_category_from_relation(names: Sequence, rel: Callable[[int, int], bool], name=None) -> FinCategory:
    """Thin category on ``names`` with an arrow ``i -> j`` iff ``rel(i, j)``.

    ``rel`` must be a preorder.
    """
    k = len(names)
    mnames, src, tgt = [], [], []
    identity = [0] * k
    index = {}
    for i in range(k):
        index[(i, i)] = len(mnames)
        identity[i] = len(mnames)
        mnames.append(f"id_{names[i]}")
        src.append(i)
        tgt.append(i)
    for i in range(k):
        for j in range(k):
            if i != j and rel(i, j):
                index[(i, j)] = len(mnames)
                mnames.append(f"{names[i]}->{names[j]}")
                src.append(i)
                tgt.append(j)
    n = len(mnames)
    comp = [[-1] * n for _ in range(n)]
    for g in range(n):
        for f in range(n):
            if tgt[f] == src[g]:
                key = (src[f], tgt[g])
                if key not in index:
                    raise CategoryLawViolation("relation is not transitive", witness=key)
                comp[g][f] = index[key]
    C = FinCategory(names, mnames, src, tgt, identity, comp, name=name, check=False)
    C.arrow_of = index
    return C


def thin_category(poset, name=None) -> FinCategory:
    """A poset (anything with ``elements`` and ``leq``) as a thin category."""
    return thin_category_from_relation(list(poset.elements), lambda i, j: poset.leq[i][j], name=name)


def discrete_category(names: Sequence, name=None) -> FinCategory:
    return thin_category_from_relation(list(names), lambda i, j: i == j, name=name)


def product_category(A: FinCategory, B: FinCategory) -> FinCategory:
    objs = [(a, b) for a in range(A.n_obj) for b in range(B.n_obj)]
    mors = [(f, g) for f in range(A.n_mor) for g in range(B.n_mor)]
    oidx = {o: i for i, o in enumerate(objs)}
    midx = {m: i for i, m in enumerate(mors)}
    src = [oidx[(A.src[f], B.src[g])] for f, g in mors]
    tgt = [oidx[(A.tgt[f], B.tgt[g])] for f, g in mors]
    ident = [midx[(A.identity[a], B.identity[b])] for a, b in objs]
    n = len(mors)
    comp = [[-1] * n for _ in range(n)]
    for x, (g1, g2) in enumerate(mors):
        for y, (f1, f2) in enumerate(mors):
            h1, h2 = A.compose[g1][f1], B.compose[g2][f2]
            if h1 >= 0 and h2 >= 0:
                comp[x][y] = midx[(h1, h2)]
    C = FinCategory(
        [f"({A.objects[a]},{B.objects[b]})" for a, b in objs],
        [f"({A.morphisms[f]},{B.morphisms[g]})" for f, g in mors],
        src, tgt, ident, comp, name=f"{A.name or 'A'}x{B.name or 'B'}", check=False,
    )
    C.factors = (A, B)
    C.pair_obj = oidx
    C.pair_mor = midx
    C.obj_pairs = objs
    C.mor_pairs = mors
    return C


def full_subcategory(C: FinCategory, objs: Iterable) -> FinCategory:
    """Full subcategory on ``objs``; ``.inclusion`` is the inclusion functor."""
    keep = sorted({C.obj(o) for o in objs})
    opos = {o: i for i, o in enumerate(keep)}
    ks = set(keep)
    mors = [u for u in range(C.n_mor) if C.src[u] in ks and C.tgt[u] in ks]
    mpos = {u: i for i, u in enumerate(mors)}
    n = len(mors)
    comp = [[-1] * n for _ in range(n)]
    for i, g in enumerate(mors):
        for j, f in enumerate(mors):
            h = C.compose[g][f]
            if h >= 0:
                comp[i][j] = mpos[h]
    S = FinCategory(
        [C.objects[o] for o in keep],
        [C.morphisms[u] for u in mors],
        [opos[C.src[u]] for u in mors],
        [opos[C.tgt[u]] for u in mors],
        [mpos[C.identity[o]] for o in keep],
        comp,
        name=(C.name or "C") + "|sub",
        check=False,
    )
    S.inclusion = Functor(S, C, keep, mors, check=False)
    return S


# --------------------------------------------------------------------------
# functors


class Functor:
    __slots__ = ("source", "target", "obj_map", "mor_map", "__weakref__")

    def __init__(self, source: FinCategory, target: FinCategory, obj_map, mor_map, check=True):
        self.source = source
        self.target = target
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)
        if check:
            self._check()

    def _check(self):
        A, B = self.source, self.target
        om, mm = self.obj_map, self.mor_map
        if len(om) != A.n_obj or len(mm) != A.n_mor:
            raise FunctorLawViolation("object or morphism map has the wrong length")
        for u in range(A.n_mor):
            v = mm[u]
            if not 0 <= v < B.n_mor:
                raise FunctorLawViolation("morphism sent outside the target", witness=A.morphisms[u])
            if B.src[v] != om[A.src[u]] or B.tgt[v] != om[A.tgt[u]]:
                raise FunctorLawViolation(
                    "source or target not preserved", witness=A.morphisms[u]
                )
        for x in range(A.n_obj):
            if mm[A.identity[x]] != B.identity[om[x]]:
                raise FunctorLawViolation("identity not preserved", witness=A.objects[x])
        for g in range(A.n_mor):
            for f in range(A.n_mor):
                h = A.compose[g][f]
                if h >= 0 and B.compose[mm[g]][mm[f]] != mm[h]:
                    raise FunctorLawViolation(
                        "composition not preserved", witness=(A.morphisms[g], A.morphisms[f])
                    )

    def __call__(self, x: int) -> int:
        return self.obj_map[x]

    def on_mor(self, u: int) -> int:
        return self.mor_map[u]

    def __eq__(self, other):
        return (
            isinstance(other, Functor)
            and self.source is other.source
            and self.target is other.target
            and self.obj_map == other.obj_map
            and self.mor_map == other.mor_map
        )

    def __hash__(self):
        return hash((self.obj_map, self.mor_map))

    def __repr__(self):
        A, B = self.source, self.target
        pairs = ", ".join(f"{A.objects[i]}->{B.objects[j]}" for i, j in enumerate(self.obj_map))
        return f"Functor({pairs})"

    def op(self) -> "Functor":
        return Functor(self.source.opposite(), self.target.opposite(), self.obj_map, self.mor_map, check=False)

    def then(self, G: "Functor") -> "Functor":
        """``G ∘ self``."""
        if self.target is not G.source:
            raise FunctorLawViolation("functors do not compose")
        return Functor(
            self.source,
            G.target,
            [G.obj_map[x] for x in self.obj_map],
            [G.mor_map[u] for u in self.mor_map],
            check=False,
        )


def validate_functor(source: FinCategory, target: FinCategory, obj_map: dict, mor_map: dict | None = None) -> Functor:
    """Functor from name maps; identities may be omitted from ``mor_map``."""
    om = [target.obj(obj_map[o]) for o in source.objects]
    mor_map = dict(mor_map or {})
    mm = []
    for u in range(source.n_mor):
        name = source.morphisms[u]
        if name in mor_map:
            mm.append(target.mor(mor_map[name]))
        elif u == source.identity[source.src[u]] and source.src[u] == source.tgt[u]:
            mm.append(target.identity[om[source.src[u]]])
        else:
            cands = target.hom(om[source.src[u]], om[source.tgt[u]])
            if len(cands) != 1:
                raise FunctorLawViolation(f"no image given for {name}", witness=name)
            mm.append(cands[0])
    return Functor(source, target, om, mm)


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, range(C.n_obj), range(C.n_mor), check=False)


def constant_functor(J: FinCategory, C: FinCategory, c: int) -> Functor:
    return Functor(J, C, [c] * J.n_obj, [C.identity[c]] * J.n_mor, check=False)


def projection_functors(P: FinCategory):
    A, B = P.factors
    p1 = Functor(P, A, [a for a, _ in P.obj_pairs], [f for f, _ in P.mor_pairs], check=False)
    p2 = Functor(P, B, [b for _, b in P.obj_pairs], [g for _, g in P.mor_pairs], check=False)
    return p1, p2


# --------------------------------------------------------------------------
# slices, connectedness, finality


def slice_category(B, F: Functor) -> FinCategory:
    """``B/F``: objects ``(A, f: B -> F(A))``, morphisms ``u: A -> A'`` with ``F(u) ∘ f = f'``.

    ``.obj_data`` holds the pairs and ``.projection`` the functor to the
    source of ``F``.
    """
    A, C = F.source, F.target
    b = C.obj(B)
    objs = [(a, f) for a in range(A.n_obj) for f in C.hom(b, F.obj_map[a])]
    return _comma(A, C, objs, F, under=True,
                  label=lambda a, f: f"{C.morphisms[f]}:{A.objects[a]}")


def over_category(F: Functor, c) -> FinCategory:
    """``F/c``: objects ``(A, f: F(A) -> c)``, morphisms ``u: A -> A'`` with ``f' ∘ F(u) = f``."""
    A, C = F.source, F.target
    c = C.obj(c)
    objs = [(a, f) for a in range(A.n_obj) for f in C.hom(F.obj_map[a], c)]
    return _comma(A, C, objs, F, under=False,
                  label=lambda a, f: f"{A.objects[a]}:{C.morphisms[f]}")


def _comma(A, C, objs, F, under, label):
    mnames, src, tgt, base = [], [], [], []
    by_src = {}
    for i, (a, f) in enumerate(objs):
        for j, (a2, f2) in enumerate(objs):
            for u in A.hom(a, a2):
                Fu = F.mor_map[u]
                ok = C.compose[Fu][f] == f2 if under else C.compose[f2][Fu] == f
                if ok:
                    by_src[(i, j, u)] = len(mnames)
                    mnames.append(f"{A.morphisms[u]}@{i}->{j}")
                    src.append(i)
                    tgt.append(j)
                    base.append(u)
    n = len(mnames)
    comp = [[-1] * n for _ in range(n)]
    for g in range(n):
        for f in range(n):
            if tgt[f] == src[g]:
                comp[g][f] = by_src[(src[f], tgt[g], A.compose[base[g]][base[f]])]
    ident = [by_src[(i, i, A.identity[a])] for i, (a, _) in enumerate(objs)]
    S = FinCategory([label(a, f) for a, f in objs], mnames, src, tgt, ident, comp, check=False)
    S.obj_data = objs
    S.mor_base = base
    S.projection = Functor(S, A, [a for a, _ in objs], base, check=False)
    return S


def _components(n: int, edges: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps


def is_connected(C: FinCategory) -> bool:
    if C.n_obj == 0:
        return False
    return _components(C.n_obj, zip(C.src, C.tgt)) == 1


def is_final(F: Functor) -> bool:
    """Every slice ``B/F`` is nonempty and connected."""
    return all(is_connected(slice_category(b, F)) for b in range(F.target.n_obj))


def set_functor_colimit(sets: Sequence[int], action) -> int:
    """Number of elements of the colimit of a set-valued functor.

    ``sets[a]`` is the size of the set at object ``a``; ``action`` yields
    ``(a, x, a2, y)`` for each generating identification ``x ~ y``. The
    colimit is the quotient of the disjoint union.
    """
    offset = [0]
    for s in sets:
        offset.append(offset[-1] + s)
    edges = ((offset[a] + x, offset[a2] + y) for a, x, a2, y in action)
    return _components(offset[-1], edges)


def final_by_hom_colimit(F: Functor) -> bool:
    """Finality via: each ``Hom(B, F(-))`` has a one-point colimit."""
    A, C = F.source, F.target
    for b in range(C.n_obj):
        homs = [list(C.hom(b, F.obj_map[a])) for a in range(A.n_obj)]
        where = [{f: k for k, f in enumerate(h)} for h in homs]

        def action():
            for u in range(A.n_mor):
                a, a2 = A.src[u], A.tgt[u]
                Fu = F.mor_map[u]
                for k, f in enumerate(homs[a]):
                    yield a, k, a2, where[a2][C.compose[Fu][f]]

        if set_functor_colimit([len(h) for h in homs], action()) != 1:
            return False
    return True


# --------------------------------------------------------------------------
# cones and colimits


@dataclass(frozen=True)
class Cone:
    """A cocone ``X => apex`` (``kind='co'``) or a cone ``apex => X`` (``kind='lim'``)."""

    diagram: Functor
    apex: int
    legs: tuple
    kind: str = "co"

    def check(self) -> bool:
        X = self.diagram
        C = X.target
        J = X.source
        for u in range(J.n_mor):
            j, k = J.src[u], J.tgt[u]
            if self.kind == "co":
                if C.compose[self.legs[k]][X.mor_map[u]] != self.legs[j]:
                    return False
            else:
                if C.compose[X.mor_map[u]][self.legs[j]] != self.legs[k]:
                    return False
        return True

    def as_cocone_op(self) -> "Cone":
        """A limit cone viewed as a cocone in the opposite category."""
        return Cone(self.diagram.op(), self.apex, self.legs, "co" if self.kind == "lim" else "lim")


def cocones(X: Functor, apex: int):
    """Every cocone of ``X`` with the given apex, as leg tuples."""
    J, C = X.source, X.target
    n = J.n_obj
    legs = [-1] * n
    # morphisms of J to test once both endpoints are assigned
    pending = [[] for _ in range(n)]
    for u in range(J.n_mor):
        j, k = J.src[u], J.tgt[u]
        if u == J.identity[j]:
            continue
        pending[max(j, k)].append(u)
    cands = [C.hom(X.obj_map[j], apex) for j in range(n)]

    def rec(j):
        if j == n:
            yield tuple(legs)
            return
        for f in cands[j]:
            legs[j] = f
            if all(C.compose[legs[J.tgt[u]]][X.mor_map[u]] == legs[J.src[u]] for u in pending[j]):
                yield from rec(j + 1)
        legs[j] = -1

    yield from rec(0)


def _all_cocones(X: Functor):
    return [(d, legs) for d in range(X.target.n_obj) for legs in cocones(X, d)]


def _factorizations(C: FinCategory, apex, legs, d, mu) -> int:
    return sum(
        1 for h in C.hom(apex, d) if all(C.compose[h][l] == m for l, m in zip(legs, mu))
    )


def _thin_colimit(X: Functor):
    C = X.target
    J = X.source
    images = {X.obj_map[j] for j in range(J.n_obj)}
    uppers = [d for d in range(C.n_obj) if all(C.hom(x, d) for x in images)]
    for c in uppers:
        if all(C.hom(c, d) for d in uppers):
            return Cone(X, c, tuple(C.hom(X.obj_map[j], c)[0] for j in range(J.n_obj)))
    return None


def find_colimit(X: Functor) -> Cone | None:
    """A colimiting cocone with least apex index, or None."""
    C = X.target
    if C.is_thin:
        return _thin_colimit(X)
    every = _all_cocones(X)
    for c, legs in every:
        if all(_factorizations(C, c, legs, d, mu) == 1 for d, mu in every):
            return Cone(X, c, legs)
    return None


def find_limit(X: Functor) -> Cone | None:
    """Limits are colimits in the opposite category."""
    co = find_colimit(X.op())
    if co is None:
        return None
    return Cone(X, co.apex, co.legs, "lim")


def is_colimiting(c: Cone) -> bool:
    if c.kind == "lim":
        return is_colimiting(c.as_cocone_op())
    if not c.check():
        return False
    X = c.diagram
    C = X.target
    return all(
        _factorizations(C, c.apex, c.legs, d, mu) == 1
        for d in range(C.n_obj)
        for mu in cocones(X, d)
    )


def factor_through(c: Cone, d: int, mu) -> int:
    """The unique ``h: apex -> d`` with ``h ∘ legs = mu`` (c must be colimiting)."""
    C = c.diagram.target
    hs = [
        h for h in C.hom(c.apex, d) if all(C.compose[h][l] == m for l, m in zip(c.legs, mu))
    ]
    if len(hs) != 1:
        raise NotColimiting(
            f"cocone factors {len(hs)} times through the candidate colimit", witness=(d, tuple(mu))
        )
    return hs[0]


def restrict_cone(c: Cone, F: Functor) -> Cone:
    """Reindex ``c`` along ``F: I -> J``."""
    return Cone(F.then(c.diagram), c.apex, tuple(c.legs[F.obj_map[i]] for i in range(F.source.n_obj)), c.kind)


def canonical_map(mu: Cone, lam: Cone, F: Functor) -> int:
    """The unique ``h: mu.apex -> lam.apex`` with ``h ∘ mu_i = lam_{F(i)}``."""
    if not is_colimiting(mu):
        raise NotColimiting("first cone is not colimiting")
    if not is_colimiting(lam):
        raise NotColimiting("second cone is not colimiting")
    return factor_through(mu, lam.apex, [lam.legs[F.obj_map[i]] for i in range(F.source.n_obj)])


# --------------------------------------------------------------------------
# adjoints


def find_initial(C: FinCategory):
    for x in range(C.n_obj):
        if C.is_initial(x):
            return x
    return None


@dataclass
class Adjunction:
    """``left ⊣ right`` with ``unit[y]: y -> right(left(y))``."""

    left: Functor
    right: Functor
    unit: tuple

    def hom_bijection_ok(self) -> bool:
        """``A(F y, x) ≅ B(y, G x)`` via ``u ↦ G(u) ∘ η_y``, checked for every pair."""
        F, G = self.left, self.right
        A, B = G.source, G.target
        for y in range(B.n_obj):
            for x in range(A.n_obj):
                image = {B.compose[G.mor_map[u]][self.unit[y]] for u in A.hom(F.obj_map[y], x)}
                if len(image) != len(A.hom(F.obj_map[y], x)):
                    return False
                if image != set(B.hom(y, G.obj_map[x])):
                    return False
        return True


def find_left_adjoint(G: Functor) -> Adjunction | None:
    """Assemble ``F ⊣ G`` from an initial object of every ``y/G``, or None."""
    A, B = G.source, G.target
    objs, units = [], []
    for y in range(B.n_obj):
        S = slice_category(y, G)
        i = find_initial(S)
        if i is None:
            return None
        a, eta = S.obj_data[i]
        objs.append(a)
        units.append(eta)
    mors = []
    for v in range(B.n_mor):
        y, y2 = B.src[v], B.tgt[v]
        target = B.compose[units[y2]][v]
        us = [u for u in A.hom(objs[y], objs[y2]) if B.compose[G.mor_map[u]][units[y]] == target]
        if len(us) != 1:
            return None
        mors.append(us[0])
    F = Functor(B, A, objs, mors, check=False)
    return Adjunction(F, G, tuple(units))

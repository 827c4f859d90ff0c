"""Exhaustive and seeded random generators for posets, lattices, frames and categories."""
from __future__ import annotations

import random
from functools import lru_cache

from .errors import FunctorLawViolation, NotAFrame, NotALattice
from .fincat import FinCategory, Functor, constant_functor, thin_category_from_relation
from .frames import check_frame
from .lattice import FinLattice, FinPoset, MonotoneMap, bits

DEFAULT_SEED = 20240611


def _downsets(P: FinPoset):
    n = P.n
    out = []
    for m in range(1 << n):
        if all((P.down[i] & ~m) == 0 for i in bits(m)):
            out.append(m)
    return out


@lru_cache(maxsize=None)
def posets_up_to_iso(n: int) -> tuple:
    """One representative of every isomorphism class of posets on ``n`` elements.

    Each poset on ``n`` elements is a poset on ``n - 1`` elements plus a
    maximal element placed over some down-set.
    """
    if n == 0:
        return (FinPoset([], []),)
    seen = {}
    for P in posets_up_to_iso(n - 1):
        for D in _downsets(P):
            leq = [list(row) + [bool(D >> i & 1)] for i, row in enumerate(P.leq)]
            leq.append([False] * (n - 1) + [True])
            Q = FinPoset([str(i) for i in range(n)], leq)
            order, key = Q.canonical_order()
            if key not in seen:
                # store in canonical order so representatives are deterministic
                seen[key] = FinPoset(
                    [str(i) for i in range(n)],
                    [[Q.leq[order[i]][order[j]] for j in range(n)] for i in range(n)],
                )
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=None)
def lattices_up_to_iso(n: int) -> tuple:
    out = []
    for P in posets_up_to_iso(n):
        try:
            out.append(FinLattice(P, name=f"L{n}_{len(out)}"))
        except NotALattice:
            pass
    return tuple(out)


@lru_cache(maxsize=None)
def frames_up_to_iso(n: int) -> tuple:
    out = []
    for L in lattices_up_to_iso(n):
        try:
            out.append(check_frame(L))
        except NotAFrame:
            pass
    return tuple(out)


def all_frames(max_n: int, min_n: int = 1) -> list:
    return [F for n in range(min_n, max_n + 1) for F in frames_up_to_iso(n)]


# --------------------------------------------------------------------------
# random lattices and maps


def random_moore_lattice(rng: random.Random, points: int = 3, density: float = 0.5) -> FinLattice:
    """Lattice of a random intersection-closed family of subsets (with the full set)."""
    full = (1 << points) - 1
    fam = {full}
    for m in range(1 << points):
        if rng.random() < density:
            fam.add(m)
    changed = True
    while changed:
        changed = False
        for a in list(fam):
            for b in list(fam):
                if a & b not in fam:
                    fam.add(a & b)
                    changed = True
    sets = sorted(fam, key=lambda m: (bin(m).count("1"), m))
    names = ["{" + "".join(str(i) for i in bits(m)) + "}" for m in sets]
    leq = [[(a & ~b) == 0 for b in sets] for a in sets]
    L = FinLattice(FinPoset(names, leq), name="moore")
    L.sets = tuple(sets)
    return L


def random_monotone_map(rng: random.Random, L: FinLattice, M: FinLattice) -> MonotoneMap:
    order = sorted(range(L.n), key=lambda i: bin(L.down[i]).count("1"))
    table = [-1] * L.n
    for x in order:
        lower = [table[y] for y in bits(L.down[x]) if y != x]
        cands = [v for v in range(M.n) if all(M.leq[w][v] for w in lower)]
        table[x] = rng.choice(cands)
    return MonotoneMap(L, M, table)


# --------------------------------------------------------------------------
# random categories and functors


def random_preorder_category(rng: random.Random, n_obj: int, p: float = 0.4) -> FinCategory:
    rel = [[i == j or rng.random() < p for j in range(n_obj)] for i in range(n_obj)]
    for k in range(n_obj):
        for i in range(n_obj):
            if rel[i][k]:
                for j in range(n_obj):
                    if rel[k][j]:
                        rel[i][j] = True
    names = [chr(ord("A") + i) for i in range(n_obj)]
    return thin_category_from_relation(names, lambda i, j: rel[i][j], name="preorder")


def concrete_category(sizes, generators, max_mor=12) -> FinCategory | None:
    """Subcategory of finite sets generated by functions ``(src, tgt, table)``.

    Returns None if the closure has more than ``max_mor`` morphisms.
    """
    n = len(sizes)
    arrows = [(x, x, tuple(range(sizes[x]))) for x in range(n)]
    index = {a: i for i, a in enumerate(arrows)}
    for g in generators:
        if g not in index:
            index[g] = len(arrows)
            arrows.append(g)
    changed = True
    while changed:
        changed = False
        for i in range(len(arrows)):
            for j in range(len(arrows)):
                gs, gt, gtab = arrows[i]
                fs, ft, ftab = arrows[j]
                if ft == gs:
                    h = (fs, gt, tuple(gtab[v] for v in ftab))
                    if h not in index:
                        index[h] = len(arrows)
                        arrows.append(h)
                        changed = True
                        if len(arrows) > max_mor:
                            return None
    m = len(arrows)
    comp = [[-1] * m for _ in range(m)]
    for i, (gs, gt, gtab) in enumerate(arrows):
        for j, (fs, ft, ftab) in enumerate(arrows):
            if ft == gs:
                comp[i][j] = index[(fs, gt, tuple(gtab[v] for v in ftab))]
    objs = [chr(ord("A") + i) for i in range(n)]
    names = [f"id_{objs[i]}" for i in range(n)] + [f"f{i}" for i in range(n, m)]
    C = FinCategory(
        objs, names, [a[0] for a in arrows], [a[1] for a in arrows], range(n), comp,
        name="concrete", check=False,
    )
    C.functions = tuple(arrows)
    return C


def random_concrete_category(rng: random.Random, max_obj=4, max_mor=12) -> FinCategory:
    while True:
        n = rng.randint(1, max_obj)
        sizes = [rng.randint(1, 3) for _ in range(n)]
        gens = []
        for _ in range(rng.randint(0, 4)):
            s, t = rng.randrange(n), rng.randrange(n)
            gens.append((s, t, tuple(rng.randrange(sizes[t]) for _ in range(sizes[s]))))
        C = concrete_category(sizes, gens, max_mor)
        if C is not None:
            return C


def random_category(rng: random.Random, max_obj=4, max_mor=12) -> FinCategory:
    if rng.random() < 0.5:
        while True:
            C = random_preorder_category(rng, rng.randint(1, max_obj))
            if C.n_mor <= max_mor:
                return C
    return random_concrete_category(rng, max_obj, max_mor)


def random_functor(rng: random.Random, A: FinCategory, B: FinCategory, attempts: int = 20) -> Functor:
    """A random functor ``A -> B`` found by randomized backtracking.

    Falls back to a constant functor, which always exists.
    """
    order = [u for u in range(A.n_mor) if u not in A.identity]
    for _ in range(attempts):
        om = [rng.randrange(B.n_obj) for _ in range(A.n_obj)]
        mm = [-1] * A.n_mor
        for x in range(A.n_obj):
            mm[A.identity[x]] = B.identity[om[x]]
        budget = [2000]

        def rec(k):
            budget[0] -= 1
            if budget[0] < 0:
                return False
            if k == len(order):
                return True
            u = order[k]
            cands = list(B.hom(om[A.src[u]], om[A.tgt[u]]))
            rng.shuffle(cands)
            for v in cands:
                mm[u] = v
                if _consistent(A, B, mm, u) and rec(k + 1):
                    return True
            mm[u] = -1
            return False

        if rec(0):
            try:
                return Functor(A, B, om, mm)
            except FunctorLawViolation:
                continue
    return constant_functor(A, B, rng.randrange(B.n_obj))


def _consistent(A, B, mm, u) -> bool:
    for g in range(A.n_mor):
        if mm[g] < 0:
            continue
        for f in range(A.n_mor):
            if mm[f] < 0 or u not in (g, f):
                continue
            h = A.compose[g][f]
            if h >= 0 and mm[h] >= 0 and B.compose[mm[g]][mm[f]] != mm[h]:
                return False
    # composites landing on u
    for g in range(A.n_mor):
        for f in range(A.n_mor):
            if A.compose[g][f] == u and mm[g] >= 0 and mm[f] >= 0:
                if B.compose[mm[g]][mm[f]] != mm[u]:
                    return False
    return True


def random_thin_functor(rng: random.Random, A: FinCategory, B: FinCategory):
    """A random functor into a thin category: a monotone object map, or None."""
    order = list(range(A.n_obj))
    om = [-1] * A.n_obj

    def rec(k):
        if k == len(order):
            return True
        x = order[k]
        cands = list(range(B.n_obj))
        rng.shuffle(cands)
        for v in cands:
            om[x] = v
            ok = True
            for u in range(A.n_mor):
                s, t = A.src[u], A.tgt[u]
                if om[s] >= 0 and om[t] >= 0 and not B.hom(om[s], om[t]):
                    ok = False
                    break
            if ok and rec(k + 1):
                return True
        om[x] = -1
        return False

    if not rec(0):
        return None
    mm = [B.hom(om[A.src[u]], om[A.tgt[u]])[0] for u in range(A.n_mor)]
    return Functor(A, B, om, mm)


def powerset_lattice(k: int) -> FinLattice:
    sets = sorted(range(1 << k), key=lambda m: (bin(m).count("1"), m))
    names = ["{" + "".join(str(i) for i in bits(m)) + "}" for m in sets]
    return FinLattice(FinPoset(names, [[(a & ~b) == 0 for b in sets] for a in sets]), name=f"P{k}")


def random_right_adjoint(rng: random.Random):
    """The inclusion of a random closure system into a powerset, as thin categories.

    It always has a left adjoint (the closure operator).
    """
    k = rng.choice([1, 2])
    P = powerset_lattice(k)
    L = random_moore_lattice(rng, k, rng.random())
    CL = thin_category_from_relation(list(L.elements), lambda i, j: L.leq[i][j])
    CP = thin_category_from_relation(list(P.elements), lambda i, j: P.leq[i][j])
    pos = {P.elements[i]: i for i in range(P.n)}
    om = [pos[e] for e in L.elements]
    mm = [CP.hom(om[CL.src[u]], om[CL.tgt[u]])[0] for u in range(CL.n_mor)]
    return Functor(CL, CP, om, mm)

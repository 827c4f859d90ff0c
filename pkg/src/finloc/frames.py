"""Frames (locales) on finite lattices.

Covers the Heyting structure, separation and compactness predicates, the
sublocale calculus, localic maps, binary products (frame coproducts built
from C-ideals) and colimits of finite locale diagrams.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    InternalInvariantBroken,
    NotAFrame,
    NotALocalicMap,
    ShapeMismatch,
    SizeGuardExceeded,
)
from .lattice import (
    SUBSET_GUARD,
    FinLattice,
    FinPoset,
    MonotoneMap,
    bits,
    check_guard,
    left_adjoint,
    mask_of,
    right_adjoint,
)

SUBLOCALE_GUARD = 10
SUBLOCALE_ENUM_GUARD = SUBSET_GUARD
PRODUCT_GUARD = 64
PRODUCT_RECHECK = 64  # product frames larger than this skip the distributivity recheck
COLIMIT_NODE_GUARD = 1_000_000


# --------------------------------------------------------------------------
# frames and the Heyting structure


class Frame(FinLattice):
    """A finite lattice that satisfies ``a ∧ ⋁B = ⋁{a ∧ b | b ∈ B}``.

    Build one with :func:`check_frame`.
    """

    @classmethod
    def _trusted(cls, lattice: FinLattice) -> "Frame":
        fr = object.__new__(cls)
        fr.__dict__.update(lattice.__dict__)
        return fr

    @property
    def lattice(self) -> FinLattice:
        return self

    @cached_property
    def heyting_table(self) -> tuple[tuple[int, ...], ...]:
        n, meet, leq = self.n, self.meet, self.leq
        return tuple(
            tuple(
                self.join_all(x for x in range(n) if leq[meet[a][x]][b]) for b in range(n)
            )
            for a in range(n)
        )

    @cached_property
    def pseudocomplements(self) -> tuple[int, ...]:
        return tuple(self.heyting_table[a][self.bottom] for a in range(self.n))


def distributivity_witness(lat: FinLattice):
    """First ``(a, b, c)`` with ``a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c)``, else None."""
    n, meet, join = lat.n, lat.meet, lat.join
    for a in range(n):
        ma = meet[a]
        for b in range(n):
            for c in range(b + 1, n):
                if ma[join[b][c]] != join[ma[b]][ma[c]]:
                    return a, b, c
    return None


def check_frame(lat: FinLattice, override: bool = False) -> Frame:
    """Validate the frame law over every element and every subset.

    Raises :class:`NotAFrame` with a witness ``(a, B)`` on failure.
    """
    if isinstance(lat, Frame):
        return lat
    check_guard(lat.n, SUBSET_GUARD, "check_frame", override)
    sj = lat.subset_joins(override)
    meet, join = lat.meet, lat.join
    size = 1 << lat.n
    for a in range(lat.n):
        ma = meet[a]
        rhs = [lat.bottom] * size
        for m in range(1, size):
            low = m & -m
            r = join[rhs[m ^ low]][ma[low.bit_length() - 1]]
            rhs[m] = r
            if ma[sj[m]] != r:
                B = lat.names(bits(m))
                raise NotAFrame(
                    f"frame law fails at a={lat.elements[a]}, B={B}",
                    witness=(lat.elements[a], B),
                )
    return Frame._trusted(lat)


def as_frame_unchecked_large(lat: FinLattice) -> Frame:
    """Frame check for lattices past the subset guard.

    In a finite lattice every join is a finite iterated binary join and the
    empty join is trivially preserved, so binary distributivity is
    equivalent to the full frame law.
    """
    w = distributivity_witness(lat)
    if w is not None:
        a, b, c = w
        raise NotAFrame(
            "frame law fails",
            witness=(lat.elements[a], [lat.elements[b], lat.elements[c]]),
        )
    return Frame._trusted(lat)


def _frame(lat: FinLattice) -> Frame:
    if isinstance(lat, Frame):
        return lat
    if lat.n <= SUBSET_GUARD:
        return check_frame(lat)
    return as_frame_unchecked_large(lat)


def heyting(L: Frame, a, b) -> int:
    """``a ⇒ b = ⋁{x | a ∧ x <= b}``."""
    return L.heyting_table[L.index(a)][L.index(b)]


def pseudocomplement(L: Frame, a) -> int:
    """``a* = ⋁{x | a ∧ x = 0}``."""
    i = L.index(a)
    return L.join_all(x for x in range(L.n) if L.meet[i][x] == L.bottom)


def rather_below(L: Frame, a, b) -> bool:
    return L.join[pseudocomplement(L, a)][L.index(b)] == L.top


def directed_subsets(L: FinLattice, override=False) -> list[int]:
    """Bitmasks of every nonempty subset in which each pair has an upper bound inside."""
    check_guard(L.n, SUBSET_GUARD, "directed subsets", override)
    cache = L.__dict__.setdefault("_directed_cache", None)
    if cache is not None:
        return cache
    up = L.up
    out = []
    for m in range(1, 1 << L.n):
        members = list(bits(m))
        if all(up[x] & up[y] & m for x, y in combinations(members, 2)):
            out.append(m)
    L.__dict__["_directed_cache"] = out
    return out


def well_below(L: Frame, x, y, override=False) -> bool:
    """``x ≪ y`` by enumerating directed subsets (guarded)."""
    x, y = L.index(x), L.index(y)
    sj = L.subset_joins(override)
    for D in directed_subsets(L, override):
        if L.leq[y][sj[D]] and not (L.up[x] & D):
            return False
    return True


def is_regular(L: Frame) -> bool:
    return all(
        L.join_all(x for x in range(L.n) if rather_below(L, x, a)) == a
        for a in range(L.n)
    )


def is_continuous(L: Frame, override=False) -> bool:
    return all(
        L.join_all(x for x in range(L.n) if well_below(L, x, a, override)) == a
        for a in range(L.n)
    )


def is_compact(L: Frame, override=False) -> bool:
    """Every cover has a finite subcover, checked literally over all subsets.

    For each cover a least subcover is extracted greedily; it is finite
    because it is drawn from a finite cover.
    """
    check_guard(L.n, SUBSET_GUARD, "is_compact", override)
    sj = L.subset_joins(override)
    for A in range(1 << L.n):
        if sj[A] != L.top:
            continue
        sub = A
        for i in bits(A):
            if sj[sub & ~(1 << i)] == L.top:
                sub &= ~(1 << i)
        if sj[sub] != L.top:
            return False
    return True


# --------------------------------------------------------------------------
# localic maps


class LocalicMap:
    """A meet-preserving map whose left adjoint preserves finite meets.

    ``f`` goes ``L -> M`` (locale direction), ``f_star`` goes ``M -> L``
    (the frame homomorphism). Both are validated on construction.
    """

    __slots__ = ("f", "f_star")

    def __init__(self, f: MonotoneMap, f_star: MonotoneMap | None = None):
        if f_star is None:
            f_star = left_adjoint(f)
            if f_star is None:
                raise NotALocalicMap("map does not preserve all meets (no left adjoint)")
        else:
            if left_adjoint(f) != f_star:
                raise NotALocalicMap("f_star is not the left adjoint of f")
        M, L = f_star.source, f_star.target
        t = f_star.table
        if t[M.top] != L.top:
            raise NotALocalicMap("left adjoint does not preserve the top", witness=())
        for a in range(M.n):
            for b in range(a + 1, M.n):
                if t[M.meet[a][b]] != L.meet[t[a]][t[b]]:
                    raise NotALocalicMap(
                        "left adjoint does not preserve binary meets",
                        witness=(M.elements[a], M.elements[b]),
                    )
        self.f = f
        self.f_star = f_star

    @classmethod
    def from_table(cls, source, target, table) -> "LocalicMap":
        return cls(MonotoneMap(source, target, table))

    @classmethod
    def from_names(cls, source, target, assignment: dict) -> "LocalicMap":
        return cls(MonotoneMap.from_names(source, target, assignment))

    @classmethod
    def from_frame_hom(cls, h: MonotoneMap) -> "LocalicMap":
        """The localic map whose frame side is ``h`` (must preserve joins and finite meets)."""
        f = right_adjoint(h)
        if f is None:
            raise NotALocalicMap("frame homomorphism does not preserve all joins")
        return cls(f, h)

    @property
    def source(self) -> Frame:
        return self.f.source

    @property
    def target(self) -> Frame:
        return self.f.target

    @property
    def table(self):
        return self.f.table

    def __call__(self, i: int) -> int:
        return self.f.table[i]

    def __eq__(self, other):
        return isinstance(other, LocalicMap) and self.f == other.f

    def __hash__(self):
        return hash(self.f.table)

    def __repr__(self):
        return f"LocalicMap({self.f.as_names()})"

    def is_iso(self) -> bool:
        return self.f.is_bijective()


def identity_localic(L: Frame) -> LocalicMap:
    t = MonotoneMap(L, L, range(L.n), check=False)
    return LocalicMap(t, t)


def compose_localic(g: LocalicMap, f: LocalicMap) -> LocalicMap:
    """``g ∘ f`` in the locale direction."""
    if f.target != g.source:
        raise ShapeMismatch("cannot compose localic maps: codomain and domain differ")
    ff = MonotoneMap(f.source, g.target, [g.f.table[v] for v in f.f.table], check=False)
    fs = MonotoneMap(
        g.target, f.source, [f.f_star.table[v] for v in g.f_star.table], check=False
    )
    m = object.__new__(LocalicMap)
    m.f, m.f_star = ff, fs
    return m


def frame_homs(M: FinLattice, L: FinLattice, limit: int | None = None):
    """Yield every frame homomorphism ``M -> L`` as an index table.

    Backtracking in a linear extension of ``M``; joins and meets are
    checked as soon as both arguments and the result are assigned.
    """
    order = sorted(range(M.n), key=lambda i: bin(M.down[i]).count("1"))
    pos = {v: k for k, v in enumerate(order)}
    table = [-1] * M.n
    n = M.n
    # pairs to check once the later of (a, b, a∧b, a∨b) is placed
    checks = [[] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            for res, op in ((M.meet[a][b], "m"), (M.join[a][b], "j")):
                last = max(pos[a], pos[b], pos[res])
                checks[last].append((a, b, res, op))
    count = 0

    def rec(k):
        nonlocal count
        if k == n:
            count += 1
            yield tuple(table)
            return
        x = order[k]
        if x == M.bottom or x == M.top:
            forced = {L.bottom} if x == M.bottom else {L.top}
            if x == M.top:
                forced &= {L.top}
            cands = sorted(forced)
        else:
            lower = [table[y] for y in bits(M.down[x]) if table[y] >= 0 and y != x]
            cands = [
                v for v in range(L.n) if all(L.leq[w][v] for w in lower)
            ]
        for v in cands:
            table[x] = v
            ok = True
            for a, b, res, op in checks[k]:
                want = L.meet[table[a]][table[b]] if op == "m" else L.join[table[a]][table[b]]
                if table[res] != want:
                    ok = False
                    break
            if ok:
                yield from rec(k + 1)
            table[x] = -1

    yield from rec(0)


def localic_maps(L: Frame, M: Frame):
    """Every localic map ``L -> M``."""
    for t in frame_homs(M, L):
        yield LocalicMap.from_frame_hom(MonotoneMap(M, L, t, check=False))


# --------------------------------------------------------------------------
# sublocales


@dataclass(frozen=True)
class Sublocale:
    parent: Frame = field(compare=False, hash=False, repr=False)
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, i):
        return i in self.members

    def __le__(self, other: "Sublocale"):
        return self.members <= other.members

    def __lt__(self, other: "Sublocale"):
        return self.members < other.members

    def names(self) -> list[str]:
        return self.parent.names(self.members)

    def __repr__(self):
        return "Sublocale({" + ", ".join(self.names()) + "})"

    @property
    def key(self):
        return (len(self.members), sorted(self.members))

    def nucleus(self, a: int) -> int:
        """``⋀{s ∈ S | a <= s}``: the frame-side map of the inclusion."""
        P = self.parent
        return P.meet_all(s for s in self.members if P.leq[a][s])

    @cached_property
    def frame(self) -> Frame:
        P = self.parent
        idx = sorted(self.members)
        lat = FinLattice(
            FinPoset([P.elements[i] for i in idx], [[P.leq[i][j] for j in idx] for i in idx])
        )
        return _frame(lat)

    @cached_property
    def inclusion(self) -> LocalicMap:
        """The inclusion ``S -> parent`` as a localic map."""
        P = self.parent
        idx = sorted(self.members)
        F = self.frame
        pos = {v: k for k, v in enumerate(idx)}
        f = MonotoneMap(F, P, idx, check=False)
        fs = MonotoneMap(P, F, [pos[self.nucleus(a)] for a in range(P.n)], check=False)
        return LocalicMap(f, fs)

    def position(self, i: int) -> int:
        """Index of parent element ``i`` inside :attr:`frame`."""
        return sorted(self.members).index(i)


@dataclass(frozen=True)
class SublocaleViolation:
    condition: str
    witness: tuple

    def __bool__(self):
        return False


def is_sublocale(L: Frame, members: Iterable) -> Sublocale | SublocaleViolation:
    """Check closure under all meets and under ``x ⇒ (-)``."""
    S = frozenset(L.index(m) for m in members)
    if L.top not in S:
        return SublocaleViolation("meets", ())
    for a in S:
        for b in S:
            if L.meet[a][b] not in S:
                return SublocaleViolation("meets", (L.elements[a], L.elements[b]))
    H = L.heyting_table
    for x in range(L.n):
        for s in S:
            if H[x][s] not in S:
                return SublocaleViolation("heyting", (L.elements[x], L.elements[s]))
    return Sublocale(L, S)


def closed_sublocale(L: Frame, a) -> Sublocale:
    return Sublocale(L, L.upset(L.index(a)))


def open_sublocale(L: Frame, a) -> Sublocale:
    a = L.index(a)
    return Sublocale(L, frozenset(L.heyting_table[a][x] for x in range(L.n)))


def sublocales(L: Frame, override=False) -> list[Sublocale]:
    """All sublocales, smallest first.

    Only subsets containing the top are visited; meet-closure is tested
    before the Heyting condition.
    """
    check_guard(L.n, SUBLOCALE_ENUM_GUARD, "sublocale enumeration", override)
    cache = L.__dict__.setdefault("_sublocales", None)
    if cache is not None:
        return cache
    others = [i for i in range(L.n) if i != L.top]
    H, meet = L.heyting_table, L.meet
    found = []
    for m in range(1 << len(others)):
        S = {L.top}
        for k in bits(m):
            S.add(others[k])
        if any(meet[a][b] not in S for a in S for b in S):
            continue
        if any(H[x][s] not in S for x in range(L.n) for s in S):
            continue
        found.append(Sublocale(L, frozenset(S)))
    found.sort(key=lambda s: s.key)
    L.__dict__["_sublocales"] = found
    return found


def sub_meet(L: Frame, subs: Sequence[Sublocale]) -> Sublocale:
    S = frozenset(range(L.n))
    for T in subs:
        S &= T.members
    return Sublocale(L, S)


def sub_join(L: Frame, subs: Sequence[Sublocale]) -> Sublocale:
    """``{⋀A | A ⊆ ⋃ S_j}``: the meet-closure of the union."""
    U = {L.top}
    for T in subs:
        U |= T.members
    todo = list(U)
    while todo:
        a = todo.pop()
        for b in list(U):
            c = L.meet[a][b]
            if c not in U:
                U.add(c)
                todo.append(c)
    return Sublocale(L, frozenset(U))


@dataclass
class SublocaleLattice:
    parent: Frame
    sublocales: list

    def index(self, S: Sublocale) -> int:
        return next(i for i, T in enumerate(self.sublocales) if T.members == S.members)

    def meet(self, subs) -> Sublocale:
        return sub_meet(self.parent, subs)

    def join(self, subs) -> Sublocale:
        return sub_join(self.parent, subs)

    def __len__(self):
        return len(self.sublocales)


FAMILY_GUARD = 10


def coframe_law_witness(L: Frame, subs: Sequence[Sublocale], exhaustive_limit=FAMILY_GUARD):
    """Search for ``S`` and a family ``T`` with ``S ∨ ⋂T != ⋂(S ∨ T_i)``.

    Every family is tried when there are at most ``exhaustive_limit``
    sublocales; otherwise the empty family, singletons and pairs are tried
    (in a finite lattice the law for pairs implies it for all families).
    """
    k = len(subs)
    joins = {}

    def j(a, b):
        key = (a, b)
        if key not in joins:
            joins[key] = sub_join(L, [subs[a], subs[b]]).members
        return joins[key]

    if k <= exhaustive_limit:
        families = range(1 << k)
        fam_iter = (list(bits(m)) for m in families)
    else:
        fam_iter = [[]] + [[i] for i in range(k)] + [[a, b] for a, b in combinations(range(k), 2)]
    top_members = frozenset(range(L.n))
    for fam in fam_iter:
        inter = top_members
        for t in fam:
            inter &= subs[t].members
        for s in range(k):
            lhs = sub_join(L, [subs[s], Sublocale(L, inter)]).members
            rhs = top_members
            for t in fam:
                rhs &= j(s, t)
            if lhs != rhs:
                return subs[s], [subs[t] for t in fam]
    return None


def sublocale_lattice(L: Frame, override=False) -> SublocaleLattice:
    check_guard(L.n, SUBLOCALE_GUARD, "sublocale_lattice", override)
    subs = sublocales(L, override=True)
    w = coframe_law_witness(L, subs)
    if w is not None:
        raise InternalInvariantBroken("sublocale lattice violates the coframe law", witness=w)
    return SublocaleLattice(L, subs)


def sublocale_image(f: LocalicMap, S: Sublocale) -> Sublocale:
    M = f.target
    image = frozenset(f.f.table[s] for s in S.members)
    res = is_sublocale(M, image)
    if not res:
        raise InternalInvariantBroken("image of a sublocale is not a sublocale", witness=res)
    return res


def preimage(f: LocalicMap, members: Iterable[int]) -> frozenset:
    target = frozenset(members)
    return frozenset(x for x in range(f.source.n) if f.f.table[x] in target)


def is_closed_map(f: LocalicMap) -> bool:
    """``f(𝔠(a)) = 𝔠(f(a))`` for every ``a`` in the source."""
    L, M = f.source, f.target
    t = f.f.table
    for a in range(L.n):
        image = {t[x] for x in bits(L.up[a])}
        if image != set(bits(M.up[t[a]])):
            return False
    return True


def preimage_closed(f: LocalicMap, b) -> Sublocale:
    """``f⁻¹(𝔠(b))``, checked against ``𝔠(f*(b))``."""
    M = f.target
    b = M.index(b)
    pre = preimage(f, bits(M.up[b]))
    expected = f.source.upset(f.f_star.table[b])
    if pre != expected:
        raise InternalInvariantBroken(
            "preimage of a closed sublocale differs from 𝔠(f*(b))",
            witness=(M.elements[b],),
        )
    return Sublocale(f.source, pre)


# --------------------------------------------------------------------------
# products


class ProductFrame(Frame):
    """``L ⊕ M``: C-ideals of ``L × M`` ordered by inclusion.

    ``ideals[i]`` is the bitmask over pairs ``(a, b) -> a * len(M) + b``.
    """

    left: Frame
    right: Frame
    ideals: tuple

    def pair_bit(self, a: int, b: int) -> int:
        return 1 << (a * self.right.n + b)

    def contains(self, i: int, a: int, b: int) -> bool:
        return bool(self.ideals[i] & self.pair_bit(a, b))

    def pairs_of(self, i: int):
        m = self.right.n
        return [divmod(p, m) for p in bits(self.ideals[i])]

    def basic(self, a: int, b: int) -> int:
        """Index of the C-ideal generated by ``(a, b)``, i.e. ``a ⊕ b``."""
        return self._basic[a][b]


def _c_ideal_closure(L: Frame, M: Frame, down_pair, zero, mask: int) -> int:
    m = M.n
    full_col = [mask_of(a * m + b for a in range(L.n)) for b in range(m)]
    full_row = [mask_of(a * m + b for b in range(m)) for a in range(L.n)]
    changed = True
    while changed:
        changed = False
        for b in range(m):
            col = mask & full_col[b]
            j = L.join_all(p // m for p in bits(col))
            if not mask & (1 << (j * m + b)):
                mask |= down_pair[j][b]
                changed = True
        for a in range(L.n):
            row = mask & full_row[a]
            j = M.join_all(p % m for p in bits(row))
            if not mask & (1 << (a * m + j)):
                mask |= down_pair[a][j]
                changed = True
    return mask


def c_ideals(L: Frame, M: Frame) -> list[int]:
    """Every C-ideal of ``L × M`` as a pair bitmask, by fixpoint saturation."""
    m = M.n
    down_pair = [
        [
            mask_of(x * m + y for x in bits(L.down[a]) for y in bits(M.down[b]))
            for b in range(m)
        ]
        for a in range(L.n)
    ]
    zero = 0
    for b in range(m):
        zero |= down_pair[L.bottom][b]
    for a in range(L.n):
        zero |= down_pair[a][M.bottom]
    close = lambda mask: _c_ideal_closure(L, M, down_pair, zero, mask | zero)  # noqa: E731
    basics = {close(down_pair[a][b]) for a in range(L.n) for b in range(m)}
    found = set(basics) | {close(0)}
    todo = list(found)
    while todo:
        U = todo.pop()
        for B in basics:
            V = close(U | B)
            if V not in found:
                found.add(V)
                todo.append(V)
    return sorted(found, key=lambda u: (bin(u).count("1"), u))


def _ideal_name(L, M, mask, zero_mask) -> str:
    m = M.n
    pairs = [divmod(p, m) for p in bits(mask & ~zero_mask)]
    maximal = [
        (a, b)
        for a, b in pairs
        if not any((x, y) != (a, b) and L.leq[a][x] and M.leq[b][y] for x, y in pairs)
    ]
    if not maximal:
        return "0"
    return "+".join(f"{L.elements[a]}*{M.elements[b]}" for a, b in sorted(maximal))


def frame_product(L: Frame, M: Frame, override=False):
    """The locale product ``L ×_Loc M`` with its two projections."""
    check_guard(L.n * M.n, PRODUCT_GUARD, "frame_product", override)
    ideals = c_ideals(L, M)
    k = len(ideals)
    zero = ideals[0]
    names = [_ideal_name(L, M, u, zero) for u in ideals]
    leq = [[(ideals[i] & ~ideals[j]) == 0 for j in range(k)] for i in range(k)]
    lat = FinLattice(FinPoset(names, leq), name=f"{L.name or 'L'}x{M.name or 'M'}")
    # C-ideals of two frames always form a frame; recheck only while it is cheap
    P = ProductFrame._trusted(_frame(lat) if k <= PRODUCT_RECHECK else lat)
    P.left, P.right, P.ideals = L, M, tuple(ideals)
    m = M.n
    basic = []
    for a in range(L.n):
        row = []
        for b in range(m):
            target = 1 << (a * m + b)
            # least ideal containing (a, b)
            row.append(min((i for i, u in enumerate(ideals) if u & target), key=lambda i: bin(ideals[i]).count("1")))
        basic.append(row)
    P._basic = basic
    p_star = MonotoneMap(L, P, [P.basic(a, M.top) for a in range(L.n)], check=False)
    q_star = MonotoneMap(M, P, [P.basic(L.top, b) for b in range(m)], check=False)
    p = LocalicMap.from_frame_hom(p_star)
    q = LocalicMap.from_frame_hom(q_star)
    return P, p, q


def product_of_maps(f: LocalicMap, g: LocalicMap, P1: ProductFrame, P2: ProductFrame) -> LocalicMap:
    """``f × g : P1 -> P2`` for ``f: L1 -> L2``, ``g: M1 -> M2``."""
    if P1.left != f.source or P1.right != g.source or P2.left != f.target or P2.right != g.target:
        raise ShapeMismatch("product frames do not match the factors")
    fs, gs = f.f_star.table, g.f_star.table
    table = []
    for U in range(P2.n):
        table.append(P1.join_all(P1.basic(fs[a], gs[b]) for a, b in P2.pairs_of(U)))
    return LocalicMap.from_frame_hom(MonotoneMap(P2, P1, table, check=False))


def pairing(f: LocalicMap, g: LocalicMap, P: ProductFrame) -> LocalicMap:
    """``⟨f, g⟩ : X -> P`` for ``f: X -> L``, ``g: X -> M``."""
    X = f.source
    fs, gs = f.f_star.table, g.f_star.table
    table = [
        X.join_all(X.meet[fs[a]][gs[b]] for a, b in P.pairs_of(U)) for U in range(P.n)
    ]
    return LocalicMap.from_frame_hom(MonotoneMap(P, X, table, check=False))


def diagonal(L: Frame, override=False) -> LocalicMap:
    """``Δ : L -> L ⊕ L``; its frame side sends ``a ⊕ b`` to ``a ∧ b``."""
    P, _, _ = frame_product(L, L, override)
    table = [L.join_all(L.meet[a][b] for a, b in P.pairs_of(U)) for U in range(P.n)]
    return LocalicMap.from_frame_hom(MonotoneMap(P, L, table, check=False))


def is_strongly_hausdorff(L: Frame, override=False) -> bool:
    cached = L.__dict__.get("_sh")
    if cached is None:
        cached = L.__dict__["_sh"] = is_closed_map(diagonal(L, override))
    return cached


# --------------------------------------------------------------------------
# colimits of locale diagrams


class LocaleDiagram:
    """A functor from a finite category into locales.

    ``frames[j]`` is the locale at object ``j`` of ``shape`` and ``maps[u]``
    the localic map at morphism ``u``.
    """

    def __init__(self, shape, frames: Sequence[Frame], maps: Sequence[LocalicMap], check=True):
        self.shape = shape
        self.frames = tuple(frames)
        self.maps = tuple(maps)
        if check:
            self._check()

    def _check(self):
        C = self.shape
        for u in range(C.n_mor):
            f = self.maps[u]
            if f.source != self.frames[C.src[u]] or f.target != self.frames[C.tgt[u]]:
                raise ShapeMismatch("diagram map does not match its frames", witness=C.morphisms[u])
        for x in range(C.n_obj):
            if self.maps[C.identity[x]] != identity_localic(self.frames[x]):
                raise ShapeMismatch("identity not sent to an identity", witness=C.objects[x])
        for g in range(C.n_mor):
            for f in range(C.n_mor):
                h = C.compose[g][f]
                if h >= 0 and compose_localic(self.maps[g], self.maps[f]) != self.maps[h]:
                    raise ShapeMismatch(
                        "composition not preserved", witness=(C.morphisms[g], C.morphisms[f])
                    )

    @classmethod
    def of_sublocales(cls, L: Frame, subs: Sequence[Sublocale]):
        """The thin diagram of ``subs`` ordered by inclusion, with inclusion maps."""
        from .fincat import thin_category_from_relation

        names = ["{" + ",".join(S.names()) + "}" for S in subs]
        shape = thin_category_from_relation(
            names, lambda i, j: subs[i].members <= subs[j].members
        )
        frames = [S.frame for S in subs]
        maps = []
        for u in range(shape.n_mor):
            S, T = subs[shape.src[u]], subs[shape.tgt[u]]
            maps.append(sub_inclusion(S, T))
        return cls(shape, frames, maps, check=False)

    @classmethod
    def discrete(cls, frames: Sequence[Frame], names=None):
        from .fincat import discrete_category

        shape = discrete_category(names or [f"d{i}" for i in range(len(frames))])
        maps = [identity_localic(F) for F in frames]
        return cls(shape, frames, maps, check=False)


def sub_inclusion(S: Sublocale, T: Sublocale) -> LocalicMap:
    """The localic inclusion ``S -> T`` of nested sublocales of one frame."""
    if not S.members <= T.members:
        raise ShapeMismatch("sublocale is not contained in the other")
    sidx, tidx = sorted(S.members), sorted(T.members)
    tpos = {v: k for k, v in enumerate(tidx)}
    spos = {v: k for k, v in enumerate(sidx)}
    f = MonotoneMap(S.frame, T.frame, [tpos[v] for v in sidx], check=False)
    fs = MonotoneMap(T.frame, S.frame, [spos[S.nucleus(v)] for v in tidx], check=False)
    return LocalicMap(f, fs)


@dataclass
class LocaleCocone:
    apex: Frame
    legs: tuple  # LocalicMap per object of the shape


def loc_colimit(D: LocaleDiagram, name=None) -> LocaleCocone:
    """Colimit in locales, computed as the limit of the frame-side diagram.

    Elements are the compatible families ``(x_j)`` with
    ``x_j = f_u*(x_k)`` for every ``u: j -> k``; order is pointwise.
    """
    C = D.shape
    n = C.n_obj
    outgoing = [[] for _ in range(n)]  # u: j -> k, j is the source
    incoming = [[] for _ in range(n)]
    for u in range(C.n_mor):
        if C.src[u] == C.tgt[u] and u == C.identity[C.src[u]]:
            continue
        outgoing[C.src[u]].append(u)
        incoming[C.tgt[u]].append(u)
    # place codomain-heavy objects first so later ones get determined
    order = sorted(range(n), key=lambda j: (len(outgoing[j]) - len(incoming[j]), -D.frames[j].n))
    placed = [False] * n
    family = [-1] * n
    out = []
    nodes = 0

    def rec(k):
        nonlocal nodes
        nodes += 1
        if nodes > COLIMIT_NODE_GUARD:
            raise SizeGuardExceeded("loc_colimit search exceeded node guard")
        if k == n:
            out.append(tuple(family))
            return
        j = order[k]
        forced = None
        for u in outgoing[j]:
            t = C.tgt[u]
            if placed[t]:
                v = D.maps[u].f_star.table[family[t]]
                if forced is None:
                    forced = v
                elif forced != v:
                    return
        cands = [forced] if forced is not None else range(D.frames[j].n)
        for x in cands:
            ok = True
            for u in incoming[j]:
                s = C.src[u]
                if placed[s] and D.maps[u].f_star.table[x] != family[s]:
                    ok = False
                    break
            if not ok:
                continue
            # endomorphisms j -> j
            for u in outgoing[j]:
                if C.tgt[u] == j and D.maps[u].f_star.table[x] != x:
                    ok = False
                    break
            if not ok:
                continue
            family[j] = x
            placed[j] = True
            rec(k + 1)
            placed[j] = False
            family[j] = -1

    rec(0)
    out.sort()
    frames = D.frames
    names = [
        "(" + "|".join(frames[j].elements[x[j]] for j in range(n)) + ")" for x in out
    ]
    k = len(out)
    leq = [
        [all(frames[j].leq[out[a][j]][out[b][j]] for j in range(n)) for b in range(k)]
        for a in range(k)
    ]
    lat = FinLattice(FinPoset(names, leq), name=name)
    apex = _frame(lat)
    legs = []
    for j in range(n):
        proj = MonotoneMap(apex, frames[j], [x[j] for x in out], check=False)
        legs.append(LocalicMap.from_frame_hom(proj))
    return LocaleCocone(apex, tuple(legs))


def is_cocone(D: LocaleDiagram, cone: LocaleCocone) -> bool:
    C = D.shape
    for u in range(C.n_mor):
        if compose_localic(cone.legs[C.tgt[u]], D.maps[u]) != cone.legs[C.src[u]]:
            return False
    return True


def comparison_map(D: LocaleDiagram, colim: LocaleCocone, cone: LocaleCocone) -> LocalicMap:
    """The unique ``h: colim.apex -> cone.apex`` with ``h ∘ colim.legs = cone.legs``."""
    A = colim.apex
    pos = {}
    for i in range(A.n):
        pos[tuple(leg.f_star.table[i] for leg in colim.legs)] = i
    M = cone.apex
    table = []
    for m in range(M.n):
        fam = tuple(leg.f_star.table[m] for leg in cone.legs)
        if fam not in pos:
            raise InternalInvariantBroken("cone is not compatible with the diagram", witness=m)
        table.append(pos[fam])
    h = LocalicMap.from_frame_hom(MonotoneMap(M, A, table, check=False))
    for j, leg in enumerate(cone.legs):
        if compose_localic(h, colim.legs[j]) != leg:
            raise InternalInvariantBroken("comparison map does not factor the cone", witness=j)
    return h


def is_colimiting_cocone(D: LocaleDiagram, cone: LocaleCocone, colim: LocaleCocone | None = None) -> bool:
    """A cocone is colimiting iff its comparison with the computed colimit is iso."""
    if not is_cocone(D, cone):
        return False
    colim = colim or loc_colimit(D)
    return comparison_map(D, colim, cone).is_iso()


def check_colimit_universal(D: LocaleDiagram, colim: LocaleCocone, universe: Sequence[Frame]):
    """Enumerate every cocone with apex in ``universe`` and count factorizations.

    Returns None when each has exactly one, else ``(apex, cocone legs, count)``.
    """
    C = D.shape
    for M in universe:
        per_obj = [list(localic_maps(D.frames[j], M)) for j in range(C.n_obj)]
        to_apex = list(localic_maps(colim.apex, M))
        legs = [None] * C.n_obj

        def rec(j):
            if j == C.n_obj:
                mu = tuple(legs)
                count = sum(
                    1
                    for h in to_apex
                    if all(compose_localic(h, colim.legs[k]) == mu[k] for k in range(C.n_obj))
                )
                return None if count == 1 else (M, mu, count)
            for g in per_obj[j]:
                legs[j] = g
                ok = True
                for u in range(C.n_mor):
                    s, t = C.src[u], C.tgt[u]
                    if max(s, t) == j and legs[s] is not None and legs[t] is not None:
                        if compose_localic(legs[t], D.maps[u]) != legs[s]:
                            ok = False
                            break
                if ok:
                    bad = rec(j + 1)
                    if bad is not None:
                        return bad
            legs[j] = None
            return None

        bad = rec(0)
        if bad is not None:
            return bad
    return None

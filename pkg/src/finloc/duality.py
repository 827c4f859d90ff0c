"""Open-set frames and spaces of points for finite spaces and frames."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import NotATopology, SizeGuardExceeded
from .frames import Frame, check_frame, frame_homs, is_compact, is_regular
from .lattice import FinLattice, FinPoset, MonotoneMap, chain

POINTS_GUARD = 16


class FinTopSpace:
    """Finite topological space; ``opens`` is a frozenset of frozensets of point indices."""

    def __init__(self, points, opens, name=None):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise NotATopology("duplicate point names")
        idx = {p: i for i, p in enumerate(self.points)}
        fam = set()
        for U in opens:
            try:
                fam.add(frozenset(u if isinstance(u, int) else idx[u] for u in U))
            except KeyError as e:
                raise NotATopology(f"unknown point {e.args[0]!r}", witness=e.args[0]) from None
        self.opens = frozenset(fam)
        self.name = name
        self._check()

    def _check(self):
        full = frozenset(range(len(self.points)))
        if frozenset() not in self.opens:
            raise NotATopology("empty set is not open", witness=())
        if full not in self.opens:
            raise NotATopology("whole space is not open", witness=self.names(full))
        for U in self.opens:
            for V in self.opens:
                if U | V not in self.opens:
                    raise NotATopology("not closed under union", witness=(self.names(U), self.names(V)))
                if U & V not in self.opens:
                    raise NotATopology(
                        "not closed under intersection", witness=(self.names(U), self.names(V))
                    )

    @property
    def n(self):
        return len(self.points)

    def names(self, U) -> list:
        return [self.points[i] for i in sorted(U)]

    def sorted_opens(self) -> list:
        return sorted(self.opens, key=lambda U: (len(U), sorted(U)))

    def closure(self, A) -> frozenset:
        full = frozenset(range(self.n))
        out = full
        for U in self.opens:
            C = full - U
            if A <= C:
                out &= C
        return out

    def interior(self, A) -> frozenset:
        return frozenset().union(*[U for U in self.opens if U <= A])

    def is_regular(self) -> bool:
        """Every open is the union of the opens whose closure it contains."""
        for U in self.opens:
            if frozenset().union(*[V for V in self.opens if self.closure(V) <= U]) != U:
                return False
        return True

    def is_compact(self) -> bool:
        """Every open cover has a finite subcover, checked over all covers."""
        full = frozenset(range(self.n))
        opens = self.sorted_opens()
        for r in range(len(opens) + 1):
            for cover in combinations(opens, r):
                if frozenset().union(*cover) == full:
                    sub = list(cover)
                    for U in list(sub):
                        rest = [V for V in sub if V is not U]
                        if frozenset().union(*rest) == full:
                            sub = rest
                    if frozenset().union(*sub) != full:
                        return False
        return True

    def is_t0(self) -> bool:
        return all(
            any((i in U) != (j in U) for U in self.opens)
            for i, j in combinations(range(self.n), 2)
        )

    def __repr__(self):
        return f"FinTopSpace({list(self.points)}, {[self.names(U) for U in self.sorted_opens()]})"


def is_continuous(f, X: FinTopSpace, Y: FinTopSpace) -> bool:
    return all(frozenset(i for i in range(X.n) if f[i] in V) in X.opens for V in Y.opens)


def find_homeomorphism(X: FinTopSpace, Y: FinTopSpace):
    """A point bijection ``X -> Y`` carrying opens onto opens, or None."""
    if X.n != Y.n or len(X.opens) != len(Y.opens):
        return None
    for perm in permutations(range(Y.n)):
        if {frozenset(perm[i] for i in U) for U in X.opens} == Y.opens:
            return perm
    return None


def _open_name(X: FinTopSpace, U) -> str:
    return "{" + ",".join(X.names(U)) + "}"


def open_set_frame(X: FinTopSpace) -> Frame:
    """``Lc(X)``: opens ordered by inclusion."""
    opens = X.sorted_opens()
    leq = [[U <= V for V in opens] for U in opens]
    lat = FinLattice(FinPoset([_open_name(X, U) for U in opens], leq), name=f"Lc({X.name or 'X'})")
    F = check_frame(lat, override=True)
    F.open_sets = tuple(opens)
    return F


_TWO = None


def two() -> Frame:
    global _TWO
    if _TWO is None:
        _TWO = check_frame(chain(2))
    return _TWO


def points_space(L: Frame, override=False) -> FinTopSpace:
    """``Sp(L)``: frame homomorphisms ``L -> 2`` with opens ``â = {p | p(a) = 1}``."""
    if L.n > POINTS_GUARD and not override:
        raise SizeGuardExceeded(f"points_space refuses {L.n} elements (guard {POINTS_GUARD})", witness=L.n)
    homs = list(frame_homs(L, two()))
    pts = [f"p{k}" for k in range(len(homs))]
    opens = [frozenset(k for k, p in enumerate(homs) if p[a] == 1) for a in range(L.n)]
    X = FinTopSpace(pts, opens, name=f"Sp({L.name or 'L'})")
    X.homs = tuple(homs)
    X.hat = tuple(opens)
    return X


def unit_map(X: FinTopSpace) -> tuple:
    """``η_X : X -> Sp(Lc(X))``: a point goes to the hom ``U ↦ [x ∈ U]``."""
    L = open_set_frame(X)
    S = points_space(L, override=True)
    pos = {h: k for k, h in enumerate(S.homs)}
    out = []
    for x in range(X.n):
        h = tuple(1 if x in U else 0 for U in L.open_sets)
        out.append(pos[h])
    return tuple(out)


def counit_frame_map(L: Frame) -> MonotoneMap:
    """Frame side of ``ε_L : Lc(Sp(L)) -> L``, namely ``a ↦ â``."""
    S = points_space(L, override=True)
    F = open_set_frame(S)
    pos = {U: i for i, U in enumerate(F.open_sets)}
    return MonotoneMap(L, F, [pos[S.hat[a]] for a in range(L.n)])


@dataclass
class DualityReport:
    triangle_space: bool
    triangle_frame: bool
    regular_agrees: bool
    compact_agrees: bool
    unit_continuous: bool

    def __bool__(self):
        return all(vars(self).values())


def duality_check(X: FinTopSpace) -> DualityReport:
    """Triangle identities of ``Lc ⊣ Sp`` at ``X`` and at ``Lc(X)``."""
    L = open_set_frame(X)
    eta = unit_map(X)
    S = points_space(L, override=True)
    unit_ok = is_continuous(eta, X, S)
    # ε_{Lc X} ∘ Lc(η_X) = id: U ↦ η⁻¹(Û) should be U
    tri1 = True
    for a, U in enumerate(L.open_sets):
        if frozenset(x for x in range(X.n) if eta[x] in S.hat[a]) != U:
            tri1 = False
    # Sp(ε_L) ∘ η_{Sp L} = id on points of L
    tri2 = triangle_frame(L)
    return DualityReport(
        tri1,
        tri2,
        X.is_regular() == is_regular(L),
        X.is_compact() == is_compact(L, override=True),
        unit_ok,
    )


def triangle_frame(L: Frame) -> bool:
    """``Sp(ε_L) ∘ η_{Sp L} = id``: each point ``p`` returns as ``a ↦ [p ∈ â]``."""
    S = points_space(L, override=True)
    for k, p in enumerate(S.homs):
        back = tuple(1 if k in S.hat[a] else 0 for a in range(L.n))
        if back != p:
            return False
    return True


def enumerate_topologies(n: int) -> list:
    """Every topology on the points ``0..n-1`` (labelled)."""
    full = frozenset(range(n))
    subsets = [frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)]
    middle = [U for U in subsets if U and U != full]
    out = []
    for mask in range(1 << len(middle)):
        fam = {frozenset(), full} | {middle[i] for i in range(len(middle)) if mask >> i & 1}
        if all(U | V in fam and U & V in fam for U in fam for V in fam):
            out.append(FinTopSpace([f"x{i}" for i in range(n)], fam))
    return out


def sierpinski() -> FinTopSpace:
    return FinTopSpace(["bot", "top"], [[], ["top"], ["bot", "top"]], name="Sierpinski")


def discrete_space(n: int) -> FinTopSpace:
    pts = [f"x{i}" for i in range(n)]
    return FinTopSpace(pts, [[pts[i] for i in range(n) if m >> i & 1] for m in range(1 << n)], name=f"discrete{n}")

"""Finite posets, finite lattices and monotone maps between them.

Elements are referred to by their index in ``elements``; every table is a
dense tuple indexed the same way. Down-sets and up-sets are kept as int
bitmasks, which is what most of the enumeration code works with.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    NotALattice,
    NotAPoset,
    ShapeMismatch,
    SizeGuardExceeded,
    UnknownElement,
)

SUBSET_GUARD = 16


def check_guard(n: int, limit: int, what: str, override: bool = False) -> None:
    if n > limit and not override:
        raise SizeGuardExceeded(
            f"{what}: size {n} exceeds guard {limit}", witness=(what, n, limit)
        )


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class FinPoset:
    """A finite partial order given by a boolean ``leq`` matrix."""

    def __init__(self, elements: Sequence[str], leq: Sequence[Sequence[bool]]):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            dup = next(e for e in elements if elements.count(e) > 1)
            raise NotAPoset(f"duplicate element {dup!r}", witness=dup)
        n = len(elements)
        leq = tuple(tuple(bool(v) for v in row) for row in leq)
        if len(leq) != n or any(len(row) != n for row in leq):
            raise NotAPoset("order matrix has the wrong shape")
        for i in range(n):
            if not leq[i][i]:
                raise NotAPoset(f"{elements[i]} is not <= itself", witness=(elements[i],))
        for i in range(n):
            for j in range(i + 1, n):
                if leq[i][j] and leq[j][i]:
                    raise NotAPoset(
                        f"antisymmetry fails for {elements[i]}, {elements[j]}",
                        witness=(elements[i], elements[j]),
                    )
        for i in range(n):
            for j in range(n):
                if leq[i][j]:
                    for k in range(n):
                        if leq[j][k] and not leq[i][k]:
                            raise NotAPoset(
                                "transitivity fails",
                                witness=(elements[i], elements[j], elements[k]),
                            )
        self.elements = elements
        self.leq = leq
        self._index = {e: i for i, e in enumerate(elements)}
        self.down = tuple(mask_of(j for j in range(n) if leq[j][i]) for i in range(n))
        self.up = tuple(mask_of(j for j in range(n) if leq[i][j]) for i in range(n))

    @classmethod
    def from_pairs(cls, elements, pairs):
        """Build the poset whose order is the reflexive-transitive closure of ``pairs``."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        rel = [[i == j for j in range(n)] for i in range(n)]
        for a, b in pairs:
            for x in (a, b):
                if x not in index:
                    raise UnknownElement(f"unknown element {x!r}", witness=x)
            rel[index[a]][index[b]] = True
        for k in range(n):
            rk = rel[k]
            for i in range(n):
                if rel[i][k]:
                    ri = rel[i]
                    for j in range(n):
                        if rk[j]:
                            ri[j] = True
        return cls(elements, rel)

    @property
    def n(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def index(self, x) -> int:
        if isinstance(x, int) and not isinstance(x, bool):
            if 0 <= x < len(self.elements):
                return x
            raise UnknownElement(f"no element with index {x}", witness=x)
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r}", witness=x) from None

    def name(self, i: int) -> str:
        return self.elements[i]

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, FinPoset)
            and self.elements == other.elements
            and self.leq == other.leq
        )

    def __hash__(self):
        return hash((self.elements, self.leq))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.elements)})"

    def pairs(self):
        """Strict order pairs, by name."""
        n = self.n
        return [
            (self.elements[i], self.elements[j])
            for i in range(n)
            for j in range(n)
            if i != j and self.leq[i][j]
        ]

    def _labels(self):
        # invariant colouring refined by the multisets of neighbour colours
        n = self.n
        col = [(bin(self.down[i]).count("1"), bin(self.up[i]).count("1")) for i in range(n)]
        while True:
            new = [
                (
                    col[i],
                    tuple(sorted(col[j] for j in bits(self.down[i]) if j != i)),
                    tuple(sorted(col[j] for j in bits(self.up[i]) if j != i)),
                )
                for i in range(n)
            ]
            ranks = {c: r for r, c in enumerate(sorted(set(new)))}
            new = [ranks[c] for c in new]
            if len(set(new)) == len(set(col)):
                return new
            col = new

    def canonical_order(self) -> tuple[tuple[int, ...], tuple]:
        """Return ``(order, code)``: an element ordering and the order code it yields.

        Two posets are isomorphic iff their codes are equal. The search runs
        over orderings compatible with the refined colour classes and keeps
        the lexicographically least code.
        """
        n = self.n
        labels = self._labels()
        slots = sorted(range(n), key=lambda i: labels[i])
        slot_labels = [labels[i] for i in slots]
        leq = self.leq
        best_code: list | None = None
        best_order: list[int] = []
        order: list[int] = []
        code: list[int] = []
        used = [False] * n

        def rec(k):
            nonlocal best_code, best_order
            if k == n:
                if best_code is None or code < best_code:
                    best_code = list(code)
                    best_order = list(order)
                return
            want = slot_labels[k]
            for i in range(n):
                if used[i] or labels[i] != want:
                    continue
                added = []
                for j in order:
                    added.append(1 if leq[i][j] else 0)
                    added.append(1 if leq[j][i] else 0)
                start = len(code)
                code.extend(added)
                if best_code is not None and code > best_code[: len(code)]:
                    del code[start:]
                    continue
                used[i] = True
                order.append(i)
                rec(k + 1)
                order.pop()
                used[i] = False
                del code[start:]

        rec(0)
        return tuple(best_order), (tuple(slot_labels), tuple(best_code or ()))

    def canonical_form(self) -> tuple:
        return self.canonical_order()[1]

    def find_isomorphism(self, other: "FinPoset") -> tuple[int, ...] | None:
        """An order isomorphism ``self -> other`` as an index table, or None."""
        if self.n != other.n:
            return None
        la, lb = self._labels_raw(), other._labels_raw()
        if sorted(la) != sorted(lb):
            return None
        n = self.n
        order = sorted(range(n), key=lambda i: -bin(self.down[i]).count("1") - bin(self.up[i]).count("1"))
        image = [-1] * n
        taken = [False] * n

        def rec(k):
            if k == n:
                return True
            i = order[k]
            for j in range(n):
                if taken[j] or la[i] != lb[j]:
                    continue
                ok = True
                for t in order[:k]:
                    u = image[t]
                    if self.leq[i][t] != other.leq[j][u] or self.leq[t][i] != other.leq[u][j]:
                        ok = False
                        break
                if ok:
                    image[i] = j
                    taken[j] = True
                    if rec(k + 1):
                        return True
                    taken[j] = False
                    image[i] = -1
            return False

        return tuple(image) if rec(0) else None

    def _labels_raw(self):
        return [
            (bin(self.down[i]).count("1"), bin(self.up[i]).count("1"))
            for i in range(self.n)
        ]


class FinLattice:
    """A finite lattice: a nonempty poset with all binary meets and joins."""

    def __init__(self, poset: FinPoset, name: str | None = None):
        n = poset.n
        if n == 0:
            raise NotALattice("a lattice needs at least one element")
        down, up = poset.down, poset.up
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                lower = down[i] & down[j]
                m = next((k for k in bits(lower) if down[k] == lower), None)
                if m is None:
                    raise NotALattice(
                        f"{poset.elements[i]} and {poset.elements[j]} have no meet",
                        witness=(poset.elements[i], poset.elements[j]),
                    )
                upper = up[i] & up[j]
                s = next((k for k in bits(upper) if up[k] == upper), None)
                if s is None:
                    raise NotALattice(
                        f"{poset.elements[i]} and {poset.elements[j]} have no join",
                        witness=(poset.elements[i], poset.elements[j]),
                    )
                meet[i][j] = meet[j][i] = m
                join[i][j] = join[j][i] = s
        self.poset = poset
        self.name = name
        self.meet = tuple(tuple(r) for r in meet)
        self.join = tuple(tuple(r) for r in join)
        full = (1 << n) - 1
        self.bottom = next(k for k in range(n) if up[k] == full)
        self.top = next(k for k in range(n) if down[k] == full)

    # delegation to the poset
    @property
    def elements(self):
        return self.poset.elements

    @property
    def leq(self):
        return self.poset.leq

    @property
    def down(self):
        return self.poset.down

    @property
    def up(self):
        return self.poset.up

    @property
    def n(self) -> int:
        return self.poset.n

    def __len__(self):
        return self.poset.n

    def index(self, x) -> int:
        return self.poset.index(x)

    def name_of(self, i: int) -> str:
        return self.poset.elements[i]

    def names(self, idxs) -> list[str]:
        return [self.poset.elements[i] for i in sorted(idxs)]

    def le(self, i: int, j: int) -> bool:
        return self.poset.leq[i][j]

    def meet_all(self, idxs: Iterable[int]) -> int:
        r = self.top
        meet = self.meet
        for i in idxs:
            r = meet[r][i]
        return r

    def join_all(self, idxs: Iterable[int]) -> int:
        r = self.bottom
        join = self.join
        for i in idxs:
            r = join[r][i]
        return r

    def upset(self, i: int) -> frozenset[int]:
        return frozenset(bits(self.up[i]))

    def downset(self, i: int) -> frozenset[int]:
        return frozenset(bits(self.down[i]))

    def subset_joins(self, override=False) -> list[int]:
        """Join of every subset, indexed by bitmask (guarded)."""
        return self._subset_table("join", override)

    def subset_meets(self, override=False) -> list[int]:
        return self._subset_table("meet", override)

    def _subset_table(self, kind, override):
        cache = self.__dict__.setdefault("_subset_cache", {})
        if kind not in cache:
            check_guard(self.n, SUBSET_GUARD, f"subset {kind}s", override)
            op = self.join if kind == "join" else self.meet
            out = [self.bottom if kind == "join" else self.top] * (1 << self.n)
            for m in range(1, 1 << self.n):
                low = m & -m
                out[m] = op[out[m ^ low]][low.bit_length() - 1]
            cache[kind] = out
        return cache[kind]

    def __eq__(self, other):
        return isinstance(other, FinLattice) and self.poset == other.poset

    def __hash__(self):
        return hash(self.poset)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"{type(self).__name__}({label}{list(self.elements)})"

    def find_isomorphism(self, other: "FinLattice") -> "MonotoneMap | None":
        table = self.poset.find_isomorphism(other.poset)
        return None if table is None else MonotoneMap(self, other, table, check=False)

    def is_isomorphic(self, other: "FinLattice") -> bool:
        return self.poset.find_isomorphism(other.poset) is not None

    def renamed(self, name: str | None):
        new = object.__new__(type(self))
        new.__dict__.update(self.__dict__)
        new.name = name
        return new


def validate_lattice(elements, pairs=(), name=None) -> FinLattice:
    """Close ``pairs`` reflexively and transitively and build the lattice.

    >>> validate_lattice(["0", "1"], [("0", "1")]).top
    1
    """
    elements = list(elements)
    if not elements:
        raise NotALattice("element list is empty")
    return FinLattice(FinPoset.from_pairs(elements, pairs), name=name)


def chain(n: int, name=None, names=None) -> FinLattice:
    if names is None:
        names = ["0", "m", "1"] if n == 3 else [str(i) for i in range(n)]
        if n == 2:
            names = ["0", "1"]
    return validate_lattice(names, list(zip(names, names[1:])), name=name or f"chain{n}")


def diamond(name="diamond") -> FinLattice:
    return validate_lattice(
        ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], name=name
    )


def pentagon(name="N5") -> FinLattice:
    return validate_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        name=name,
    )


def m3(name="M3") -> FinLattice:
    return validate_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", x) for x in "abc"] + [(x, "1") for x in "abc"],
        name=name,
    )


class MonotoneMap:
    """An order-preserving map between finite lattices, stored as an index table."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: FinLattice, target: FinLattice, table, check=True):
        table = tuple(table)
        if len(table) != source.n:
            raise ShapeMismatch(
                f"table has {len(table)} entries, source has {source.n} elements"
            )
        if check:
            for v in table:
                if not (0 <= v < target.n):
                    raise UnknownElement(f"no target element with index {v}", witness=v)
            n = source.n
            for i in range(n):
                for j in bits(source.up[i]):
                    if not target.leq[table[i]][table[j]]:
                        raise ShapeMismatch(
                            "map is not monotone",
                            witness=(source.elements[i], source.elements[j]),
                        )
        self.source = source
        self.target = target
        self.table = table

    @classmethod
    def from_names(cls, source, target, assignment: dict):
        table = [target.index(assignment[e]) for e in source.elements]
        return cls(source, target, table)

    def __call__(self, i: int) -> int:
        return self.table[i]

    def as_names(self) -> dict:
        return {
            self.source.elements[i]: self.target.elements[v]
            for i, v in enumerate(self.table)
        }

    def __eq__(self, other):
        return (
            isinstance(other, MonotoneMap)
            and self.table == other.table
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"MonotoneMap({self.as_names()})"

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.source.n == self.target.n


def identity_map(lat: FinLattice) -> MonotoneMap:
    return MonotoneMap(lat, lat, range(lat.n), check=False)


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """``g ∘ f``."""
    if f.target != g.source:
        raise ShapeMismatch("cannot compose: codomain and domain differ")
    return MonotoneMap(f.source, g.target, [g.table[v] for v in f.table], check=False)


def left_adjoint(f: MonotoneMap) -> MonotoneMap | None:
    """The lower adjoint ``g`` of ``f`` (``g(b) <= x  iff  b <= f(x)``), if any."""
    L, M = f.source, f.target
    table = []
    for b in range(M.n):
        table.append(L.meet_all(x for x in range(L.n) if M.leq[b][f.table[x]]))
    g = MonotoneMap(M, L, table, check=False)
    return g if _adjoint_pair(g, f) else None


def right_adjoint(g: MonotoneMap) -> MonotoneMap | None:
    """The upper adjoint ``f`` of ``g``, if any."""
    M, L = g.source, g.target
    table = []
    for x in range(L.n):
        table.append(M.join_all(b for b in range(M.n) if L.leq[g.table[b]][x]))
    f = MonotoneMap(L, M, table, check=False)
    return f if _adjoint_pair(g, f) else None


def _adjoint_pair(g: MonotoneMap, f: MonotoneMap) -> bool:
    L, M = f.source, f.target
    gt, ft = g.table, f.table
    for b in range(M.n):
        for x in range(L.n):
            if M.leq[b][ft[x]] != L.leq[gt[b]][x]:
                return False
    return True


def check_adjunction(g: MonotoneMap, f: MonotoneMap) -> bool:
    """True iff ``g ⊣ f``; ``g: M -> L`` and ``f: L -> M``."""
    if g.source != f.target or g.target != f.source:
        raise ShapeMismatch("g and f are not opposed maps between the same lattices")
    return _adjoint_pair(g, f)


def preserves_all_meets(f: MonotoneMap, override=False) -> bool:
    """Exhaustive over every subset of the source (including the empty one)."""
    L, M = f.source, f.target
    sm = L.subset_meets(override)
    t = f.table
    for mask in range(1 << L.n):
        if t[sm[mask]] != M.meet_all(t[i] for i in bits(mask)):
            return False
    return True


def preserves_all_joins(f: MonotoneMap, override=False) -> bool:
    L, M = f.source, f.target
    sj = L.subset_joins(override)
    t = f.table
    for mask in range(1 << L.n):
        if t[sj[mask]] != M.join_all(t[i] for i in bits(mask)):
            return False
    return True


def is_lattice_table_sound(lat: FinLattice) -> bool:
    """Commutativity, associativity, idempotence and absorption of the tables."""
    n, meet, join = lat.n, lat.meet, lat.join
    r = range(n)
    for a in r:
        if meet[a][a] != a or join[a][a] != a:
            return False
        for b in r:
            if meet[a][b] != meet[b][a] or join[a][b] != join[b][a]:
                return False
            if meet[a][join[a][b]] != a or join[a][meet[a][b]] != a:
                return False
            for c in r:
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    return False
                if join[join[a][b]][c] != join[a][join[b][c]]:
                    return False
    return True

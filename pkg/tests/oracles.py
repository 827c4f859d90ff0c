"""Brute-force reference computations used by the tests.

Everything here works from the order relation alone (``leq[i][j]``) and
from plain Python sets, without touching the library's tables or
algorithms, so agreement with the library is real evidence.
"""
from itertools import combinations, product


def upper_bounds(leq, xs):
    n = len(leq)
    return [u for u in range(n) if all(leq[x][u] for x in xs)]


def lower_bounds(leq, xs):
    n = len(leq)
    return [u for u in range(n) if all(leq[u][x] for x in xs)]


def least(leq, xs):
    for x in xs:
        if all(leq[x][y] for y in xs):
            return x
    return None


def greatest(leq, xs):
    for x in xs:
        if all(leq[y][x] for y in xs):
            return x
    return None


def join(leq, xs):
    return least(leq, upper_bounds(leq, xs))


def meet(leq, xs):
    return greatest(leq, lower_bounds(leq, xs))


def subsets(n):
    for r in range(n + 1):
        yield from combinations(range(n), r)


def is_frame(leq) -> bool:
    """Frame law over every element and every subset, from the order alone."""
    n = len(leq)
    for B in subsets(n):
        if join(leq, B) is None:
            return False
    for a in range(n):
        for B in subsets(n):
            lhs = meet(leq, [a, join(leq, B)])
            rhs = join(leq, [meet(leq, [a, b]) for b in B])
            if lhs != rhs:
                return False
    return True


def heyting(leq, a, b):
    return greatest(leq, [x for x in range(len(leq)) if leq[meet(leq, [a, x])][b]])


def nuclei_fixed_sets(leq):
    """Fixed-point sets of every nucleus: inflationary, idempotent, meet-preserving maps."""
    n = len(leq)
    choices = [[y for y in range(n) if leq[x][y]] for x in range(n)]
    out = set()
    for j in product(*choices):
        if any(j[j[x]] != j[x] for x in range(n)):
            continue
        if any(j[meet(leq, [x, y])] != meet(leq, [j[x], j[y]]) for x in range(n) for y in range(x + 1, n)):
            continue
        out.add(frozenset(j))
    return out


def meet_preserving_maps(leqA, leqB):
    """Every map A -> B preserving all meets (the empty one included)."""
    n, m = len(leqA), len(leqB)
    topA, topB = meet(leqA, []), meet(leqB, [])
    for f in product(range(m), repeat=n):
        if f[topA] != topB:
            continue
        if all(f[meet(leqA, [x, y])] == meet(leqB, [f[x], f[y]]) for x in range(n) for y in range(x + 1, n)):
            yield f


def left_adjoint_of(leqA, leqB, f):
    """``f*(b) = min {x : b <= f(x)}``, or None."""
    n, m = len(leqA), len(leqB)
    out = []
    for b in range(m):
        x = least(leqA, [x for x in range(n) if leqB[b][f[x]]])
        if x is None:
            return None
        out.append(x)
    return tuple(out)


def localic_maps(leqA, leqB):
    """Meet-preserving ``f: A -> B`` whose left adjoint preserves finite meets."""
    m = len(leqB)
    for f in meet_preserving_maps(leqA, leqB):
        g = left_adjoint_of(leqA, leqB, f)
        if g is None:
            continue
        if g[meet(leqB, [])] != meet(leqA, []):
            continue
        if all(g[meet(leqB, [x, y])] == meet(leqA, [g[x], g[y]]) for x in range(m) for y in range(m)):
            yield f, g


# --------------------------------------------------------------------------
# spaces


def frame_points(leq):
    """Frame homomorphisms into 2, as the sets sent to 1 (completely prime filters)."""
    n = len(leq)
    pts = []
    for mask in range(1 << n):
        F = {x for x in range(n) if mask >> x & 1}
        if meet(leq, []) not in F or join(leq, []) in F:
            continue
        if any(x in F and y not in F for x in range(n) for y in range(n) if leq[x][y]):
            continue
        if any((x in F and y in F) != (meet(leq, [x, y]) in F) for x in range(n) for y in range(n)):
            continue
        if any((join(leq, [x, y]) in F) != (x in F or y in F) for x in range(n) for y in range(n)):
            continue
        pts.append(frozenset(F))
    return pts


def product_space(opensX, nX, opensY, nY):
    """Product topology on index pairs ``x * nY + y``."""
    basis = [frozenset(x * nY + y for x in U for y in V) for U in opensX for V in opensY]
    opens = {frozenset()}
    frontier = set(basis)
    while frontier:
        opens |= frontier
        frontier = {U | V for U in opens for V in basis} - opens
    return opens


def diagonal_is_closed_map(leq) -> bool:
    """Strong Hausdorffness through the space of points.

    Finite frames are spatial and finite T0 spaces are sober, so the
    localic diagonal is closed iff the topological diagonal
    ``X -> X × X`` sends closed sets to closed sets.
    """
    pts = frame_points(leq)
    n, k = len(leq), len(pts)
    opensX = {frozenset(i for i, p in enumerate(pts) if a in p) for a in range(n)}
    opens2 = product_space(opensX, k, opensX, k)
    full, full2 = frozenset(range(k)), frozenset(range(k * k))
    for U in opensX:
        C = full - U
        image = frozenset(x * k + x for x in C)
        if full2 - image not in opens2:
            return False
    return True


def is_regular(leq) -> bool:
    n = len(leq)
    bot, top = join(leq, []), meet(leq, [])
    pc = [heyting(leq, a, bot) for a in range(n)]
    for b in range(n):
        below = [a for a in range(n) if join(leq, [pc[a], b]) == top]
        if join(leq, below) != b:
            return False
    return True


def topologies(n):
    """Every topology on ``range(n)`` as a set of frozensets."""
    full = frozenset(range(n))
    subs = [frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)]
    middle = [U for U in subs if U and U != full]
    out = []
    for mask in range(1 << len(middle)):
        fam = {frozenset(), full} | {middle[i] for i in range(len(middle)) if mask >> i & 1}
        if all(U | V in fam and U & V in fam for U in fam for V in fam):
            out.append(fam)
    return out


# --------------------------------------------------------------------------
# categories


def comma_connected(F, b) -> bool:
    """Is ``b/F`` (objects ``(a, f: b -> F a)``) non-empty and connected?"""
    A, B = F.source, F.target
    objs = [(a, f) for a in range(A.n_obj) for f in range(B.n_mor)
            if B.src[f] == b and B.tgt[f] == F.obj_map[a]]
    if not objs:
        return False
    parent = list(range(len(objs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    pos = {o: i for i, o in enumerate(objs)}
    for u in range(A.n_mor):
        for (a, f) in objs:
            if a != A.src[u]:
                continue
            g = B.compose[F.mor_map[u]][f]
            j = pos[(A.tgt[u], g)]
            parent[find(pos[(a, f)])] = find(j)
    return len({find(i) for i in range(len(objs))}) == 1


def is_final(F) -> bool:
    return all(comma_connected(F, b) for b in range(F.target.n_obj))

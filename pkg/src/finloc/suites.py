"""Property suites run by ``finloc suite run`` over a directory of fixtures.

Each check yields a result dict ``{check, status, witness?}`` with status
``pass``, ``fail`` or ``skipped``; a fail always carries a witness.
"""
from __future__ import annotations

import random
from pathlib import Path

from .duality import duality_check, triangle_frame
from .dsl import CategoryUniverse, FrameUniverse, load
from .errors import FinlocError, SizeGuardExceeded
from .fincat import (
    FinCategory,
    find_left_adjoint,
    final_by_hom_colimit,
    full_subcategory,
    is_final,
    product_category,
    thin_category_from_relation,
)
from .frames import (
    Frame,
    coframe_law_witness,
    heyting,
    localic_maps,
    preimage,
    sublocales,
)
from .generate import (
    DEFAULT_SEED,
    random_category,
    random_functor,
    random_moore_lattice,
    random_thin_functor,
)
from .kanengine import (
    closeable_check,
    coreflection_witness,
    density_comonad,
    exponential_adjunction_check,
    fubini_check,
    is_idempotent,
)
from .kgen import idempotence_locale_check, separation_implications

SUBSET_W_LIMIT = 6  # try every W only for categories this small


def result(check, ok, witness=None, **extra):
    r = {"check": check, "status": "pass" if ok else "fail"}
    if not ok:
        r["witness"] = witness if witness is not None else "no witness recorded"
    r.update(extra)
    return r


def skipped(check, reason):
    return {"check": check, "status": "skipped", "reason": reason}


def guarded(check, fn):
    """Run ``fn`` and turn guard refusals into a skipped result."""
    try:
        return fn()
    except SizeGuardExceeded as e:
        return skipped(check, f"guard: {e}")


# --------------------------------------------------------------------------
# per-object suites


def heyting_residuation(L: Frame):
    n = L.n
    for a in range(n):
        for b in range(n):
            h = heyting(L, a, b)
            for x in range(n):
                if L.leq[L.meet[a][x]][b] != L.leq[x][h]:
                    return [L.elements[a], L.elements[b], L.elements[x]]
    return None


def frame_suite(L: Frame, override=False) -> list:
    out = []
    w = heyting_residuation(L)
    out.append(result("heyting-residuation", w is None, w))

    def coframe():
        subs = sublocales(L, override)
        w = coframe_law_witness(L, subs)
        if w is not None:
            w = [w[0].names(), [T.names() for T in w[1]]]
        return result("coframe-law", w is None, w, sublocales=len(subs))

    out.append(guarded("coframe-law", coframe))
    imp = separation_implications(L)
    out.append(result("regular-implies-sh", imp["regular_implies_sh"], L.name))
    out.append(result("compact-sh-implies-regular", imp["compact_sh_implies_regular"], L.name))
    if L.n >= 2 and imp["strongly_hausdorff"]:
        out.append(guarded("locale-idempotence", lambda: result("locale-idempotence", idempotence_locale_check(L, override), L.name)))
    else:
        out.append(skipped("locale-idempotence", "not strongly Hausdorff" if L.n >= 2 else "one-element frame"))
    out.append(guarded("duality-triangle", lambda: result("duality-triangle", triangle_frame(L), L.name)))
    return out


def closed_preimage_witness(f):
    L, M = f.source, f.target
    for b in range(M.n):
        pre = preimage(f, [y for y in range(M.n) if M.leq[b][y]])
        if pre != L.upset(f.f_star.table[b]):
            return M.elements[b]
    return None


def closed_preimage_suite(frames: dict, max_size=5) -> list:
    small = sorted((k, F) for k, F in frames.items() if F.n <= max_size)
    count = 0
    for k1, L in small:
        for k2, M in small:
            for f in localic_maps(L, M):
                count += 1
                w = closed_preimage_witness(f)
                if w is not None:
                    return [result("closed-preimage", False, [k1, k2, f.f.as_names(), w])]
    return [result("closed-preimage", True, maps=count)]


def category_suite(C: FinCategory) -> list:
    out = []
    n = C.n_obj
    if n > SUBSET_W_LIMIT:
        return [skipped("finality-subcategories", f"more than {SUBSET_W_LIMIT} objects")]
    disagree = None
    density_fail = None
    for mask in range(1, 1 << n):
        W = [i for i in range(n) if mask >> i & 1]
        inc = full_subcategory(C, W).inclusion
        if is_final(inc) != final_by_hom_colimit(inc):
            disagree = [C.objects[i] for i in W]
        m = density_comonad(C, W)
        if m:
            if not is_idempotent(m):
                density_fail = density_fail or ["not idempotent", [C.objects[i] for i in W]]
            elif coreflection_witness(m) is not None:
                density_fail = density_fail or ["coreflection", [C.objects[i] for i in W], coreflection_witness(m)]
    out.append(result("finality-cross-check", disagree is None, disagree))
    out.append(result("density-coreflection", density_fail is None, density_fail))
    return out


def category_universe_suite(U: CategoryUniverse) -> list:
    C = U.category
    rep = closeable_check(C, U.W, U.products or None, U.exponentials or None)
    out = [result("closeable", rep.passed, {k: str(v) for k, v in rep.witnesses.items()})]
    if rep.passed:
        ok, count, failure = exponential_adjunction_check(C, U.W, U.products or None, U.exponentials or None)
        out.append(result("exponential-adjunction", ok, failure and [str(x) for x in failure], triples=count))
    return out


def frame_universe_suite(U: FrameUniverse) -> list:
    bad = None
    for name, f in sorted(U.maps.items()):
        w = closed_preimage_witness(f)
        if w is not None:
            bad = [name, w]
            break
    return [result("universe-closed-preimage", bad is None, bad, maps=len(U.maps))]


# --------------------------------------------------------------------------
# seeded random suites


def finality_random_suite(seed=DEFAULT_SEED, count=200) -> list:
    rng = random.Random(seed)
    disagree = None
    adjoint_bad = None
    rights = 0
    for _ in range(count):
        A = random_category(rng, 4, 12)
        B = random_category(rng, 4, 12)
        F = random_functor(rng, A, B)
        f6 = is_final(F)
        if f6 != final_by_hom_colimit(F):
            disagree = disagree or [A.name, B.name, list(F.obj_map)]
        if find_left_adjoint(F) is not None:
            rights += 1
            if not f6:
                adjoint_bad = adjoint_bad or [list(F.obj_map)]
    return [
        result("random-finality-cross-check", disagree is None, disagree, functors=count),
        result("right-adjoints-final", adjoint_bad is None, adjoint_bad, right_adjoints=rights),
    ]


def random_thin_diagram(rng: random.Random):
    """A random ``I×J -> L`` into a random finite lattice, as thin categories."""
    L = random_moore_lattice(rng, rng.randint(1, 3), rng.random())
    CL = thin_category_from_relation(list(L.elements), lambda i, j: L.leq[i][j], name="moore")
    I = random_category(rng, 3, 9)
    J = random_category(rng, 3, 9)
    P = product_category(I, J)
    B = random_thin_functor(rng, P, CL)
    return B


def fubini_random_suite(seed=DEFAULT_SEED, count=100) -> list:
    rng = random.Random(seed)
    done = 0
    bad = None
    while done < count:
        B = random_thin_diagram(rng)
        if B is None:
            continue
        done += 1
        r = fubini_check(B)
        if not r.ok:
            bad = bad or [list(B.obj_map)]
    return [result("random-fubini", bad is None, bad, diagrams=count)]


# --------------------------------------------------------------------------
# the directory runner


def run_directory(path, seed=DEFAULT_SEED, override=False, random_counts=(200, 100)) -> tuple:
    """Run every suite over the fixtures in ``path``.

    Returns ``(inputs, results)``: the files read and a flat list of
    results, in file-name order followed by the corpus-wide and random suites.
    """
    root = Path(path)
    files = sorted(p for p in root.iterdir() if p.suffix in (".frm", ".cat", ".spc", ".uni"))
    results, frames = [], {}
    for p in files:
        prefix = p.name

        def tag(rs):
            for r in rs:
                r["file"] = prefix
            return rs

        try:
            obj = load(p, override)
        except FinlocError as e:
            if p.stem.startswith("bad-") or p.stem.startswith("invalid-"):
                results.extend(tag([result("rejected", True, kind=type(e).__name__)]))
            else:
                results.extend(tag([result("load", False, f"{type(e).__name__}: {e}")]))
            continue
        if p.stem.startswith("bad-") or p.stem.startswith("invalid-"):
            results.extend(tag([result("rejected", False, "fixture expected to be rejected was accepted")]))
            continue
        if isinstance(obj, Frame):
            frames[p.stem] = obj
            results.extend(tag(frame_suite(obj, override)))
        elif isinstance(obj, FinCategory):
            results.extend(tag(category_suite(obj)))
        elif isinstance(obj, CategoryUniverse):
            results.extend(tag(category_universe_suite(obj)))
        elif isinstance(obj, FrameUniverse):
            results.extend(tag(frame_universe_suite(obj)))
        elif hasattr(obj, "opens"):
            rep = duality_check(obj)
            results.extend(tag([result("duality", bool(rep), {k: v for k, v in vars(rep).items() if not v})]))
        else:  # a plain lattice: nothing beyond parsing
            results.extend(tag([result("load", True)]))
    for r in closed_preimage_suite(frames):
        r["file"] = "*"
        results.append(r)
    for r in finality_random_suite(seed, random_counts[0]) + fubini_random_suite(seed, random_counts[1]):
        r["file"] = "*random*"
        results.append(r)
    return files, results


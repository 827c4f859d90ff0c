"""``finloc`` command line: parse fixture files, run operations, print reports.

Plain output by default; ``--json`` prints a versioned report instead.
Exit status is 0 when no check failed, 1 when one did, 2 on bad input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import dsl
from .duality import duality_check, find_homeomorphism, open_set_frame, points_space
from .errors import FinlocError, SizeGuardExceeded, UnknownCommand
from .fincat import FinCategory, find_colimit, find_left_adjoint, full_subcategory, is_final, final_by_hom_colimit
from .frames import (
    Frame,
    check_frame,
    frame_product,
    heyting,
    is_compact,
    is_continuous,
    is_regular,
    is_strongly_hausdorff,
    sublocales,
)
from .generate import DEFAULT_SEED
from .kanengine import (
    closeable_check,
    coreflection_witness,
    coreflector,
    density_comonad,
    exponential_adjunction_check,
    fubini_check,
    internal_hom,
    is_idempotent,
)
from .kgen import density_counit_locale, idempotence_locale_check, k_diagram, product_finality_check
from .suites import random_thin_diagram, result, run_directory, skipped

SCHEMA = 1


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UnknownCommand(message)


class Session:
    """Collects inputs, results and plain-text lines for one invocation."""

    def __init__(self, args):
        self.args = args
        self.inputs = []
        self.results = []
        self.lines = []

    def load(self, path, kinds=None):
        p = Path(path)
        data = p.read_bytes()
        self.inputs.append({"path": str(path), "sha256": hashlib.sha256(data).hexdigest()})
        obj = dsl.load(p, self.args.guard_override)
        if kinds and not isinstance(obj, kinds):
            raise UnknownCommand(f"{path}: wrong kind of file for this command ({type(obj).__name__})")
        return obj

    def add(self, r):
        self.results.append(r)

    def say(self, *lines):
        self.lines.extend(str(x) for x in lines)

    def failed(self) -> bool:
        return any(r["status"] == "fail" for r in self.results)


def _frame(s: Session, path) -> Frame:
    L = s.load(path)
    if not isinstance(L, Frame):
        L = check_frame(L, override=s.args.guard_override)
    return L


def _elements(L, xs):
    return [L.index(x) for x in xs]


def _category(s: Session, path):
    obj = s.load(path, (FinCategory, dsl.CategoryUniverse))
    if isinstance(obj, dsl.CategoryUniverse):
        return obj.category, obj
    return obj, None


def _objs(C, names):
    idx = {o: i for i, o in enumerate(C.objects)}
    out = []
    for nm in names:
        if nm not in idx:
            raise UnknownCommand(f"unknown object '{nm}' in {C.name}")
        out.append(idx[nm])
    return out


def _names(C, idxs):
    return [C.objects[i] for i in idxs]


# --------------------------------------------------------------------------
# frame


def cmd_frame(s: Session, a):
    L = _frame(s, a.file)
    o = s.args.guard_override
    if a.op == "check":
        info = {
            "elements": L.n,
            "regular": is_regular(L),
            "continuous": is_continuous(L, override=o),
            "compact": is_compact(L, override=o),
            "strongly_hausdorff": is_strongly_hausdorff(L, override=o),
        }
        s.add(result("frame", True, **info))
        s.say(f"{L.name}: frame with {L.n} elements")
        s.say(*(f"  {k}: {str(v).lower()}" for k, v in info.items() if k != "elements"))
    elif a.op == "heyting":
        if len(a.args) != 2:
            raise UnknownCommand("frame heyting needs two elements: a b")
        x, y = _elements(L, a.args)
        h = L.elements[heyting(L, x, y)]
        s.add(result("heyting", True, value=h))
        s.say(h)
    elif a.op == "sublocales":
        subs = sublocales(L, o)
        listing = [S.names() for S in subs]
        s.add(result("sublocales", True, count=len(subs), sublocales=listing))
        s.say(f"{len(subs)} sublocales")
        s.say(*("  {" + " ".join(m) + "}" for m in listing))
    elif a.op == "product":
        if len(a.args) != 1:
            raise UnknownCommand("frame product needs a second frame file")
        M = _frame(s, a.args[0])
        P, _, _ = frame_product(L, M, o)
        s.add(result("product", True, elements=list(P.elements)))
        s.say(f"{L.name} ⊕ {M.name}: {P.n} elements")
        s.say(*("  " + e for e in P.elements))
    elif a.op == "sh-check":
        sh = is_strongly_hausdorff(L, override=o)
        s.add(result("strongly-hausdorff", True, value=sh))
        s.say(str(sh).lower())


# --------------------------------------------------------------------------
# cat


def cmd_cat(s: Session, a):
    C, _ = _category(s, a.file)
    if a.op == "final":
        objs = _objs(C, a.objects) if a.objects else list(range(C.n_obj))
        inc = full_subcategory(C, objs).inclusion
        f6, f5 = is_final(inc), final_by_hom_colimit(inc)
        s.add(result("final-agreement", f6 == f5, [f6, f5], final=f6))
        s.say(f"inclusion of {{{' '.join(_names(C, objs))}}} is {'final' if f6 else 'not final'}")
    elif a.op == "colimit":
        objs = _objs(C, a.objects) if a.objects else list(range(C.n_obj))
        inc = full_subcategory(C, objs).inclusion
        lam = find_colimit(inc)
        if lam is None:
            s.add(result("colimit", True, exists=False))
            s.say("no colimit")
        else:
            legs = {C.objects[objs[k]]: C.morphisms[u] for k, u in enumerate(lam.legs)}
            s.add(result("colimit", True, exists=True, apex=C.objects[lam.apex], legs=legs))
            s.say(f"colimit {C.objects[lam.apex]}")
            s.say(*(f"  {k}: {v}" for k, v in legs.items()))
    elif a.op == "adjoint":
        objs = _objs(C, a.objects) if a.objects else list(range(C.n_obj))
        sub = full_subcategory(C, objs)
        adj = find_left_adjoint(sub.inclusion)
        if adj is None:
            s.add(result("left-adjoint", True, exists=False))
            s.say("inclusion has no left adjoint")
        else:
            ok = adj.hom_bijection_ok()
            table = {C.objects[y]: sub.objects[adj.left.obj_map[y]] for y in range(C.n_obj)}
            s.add(result("left-adjoint", ok, "hom-set bijection fails", exists=True, reflection=table))
            s.say("reflector:")
            s.say(*(f"  {k} -> {v}" for k, v in table.items()))


# --------------------------------------------------------------------------
# kan


def _w(C, uni, names):
    if names:
        return _objs(C, names)
    if uni is not None:
        return list(uni.W)
    return list(range(C.n_obj))


def cmd_kan(s: Session, a):
    C, uni = _category(s, a.file)
    if a.op == "fubini":
        import random

        rng = random.Random(s.args.seed)
        trials = a.trials
        bad = None
        done = 0
        while done < trials:
            B = random_thin_diagram(rng)
            if B is None:
                continue
            done += 1
            if not fubini_check(B):
                bad = bad or list(B.obj_map)
        s.add(result("fubini", bad is None, bad, diagrams=trials))
        s.say(f"fubini: {'pass' if bad is None else 'fail'} on {trials} random diagrams")
        return
    if a.op in ("closeable", "hom"):
        prods = uni.products if uni and uni.products else None
        exps = uni.exponentials if uni and uni.exponentials else None
        W = _w(C, uni, [] if a.op == "hom" else a.objects)
        if a.op == "closeable":
            rep = closeable_check(C, W, prods, exps)
            flags = {
                "exponentiable": rep.exponentiable_ok,
                "product_closure": rep.product_closure_ok,
                "theta_colimiting": rep.theta_colimiting_ok,
                "s_functor_limit": rep.s_functor_limit_ok,
            }
            s.add(result("closeable", rep.passed, {k: str(v) for k, v in rep.witnesses.items()}, **flags))
            s.say(*(f"{k}: {str(v).lower()}" for k, v in flags.items()))
            if rep.passed:
                ok, count, failure = exponential_adjunction_check(C, W, prods, exps)
                s.add(result("exponential-adjunction", ok, failure and [str(x) for x in failure], triples=count))
                s.say(f"Hom(X×Y, Z) ≅ Hom(X, Z^Y): {str(ok).lower()} on {count} triples")
        else:
            if len(a.objects) != 2:
                raise UnknownCommand("kan hom needs two objects: Y Z")
            y, z = _objs(C, a.objects)
            e = internal_hom(C, W, y, z, prods, exps)
            s.add(result("internal-hom", True, value=C.objects[e]))
            s.say(C.objects[e])
        return
    W = _w(C, uni, a.objects)
    m = density_comonad(C, W)
    if not m:
        s.add(result("density", True, exists=False, reason=m.reason, at=m.witness))
        s.say(f"no density comonad: {m.reason} ({m.witness})")
        return
    T = {C.objects[c]: C.objects[m.T.obj_map[c]] for c in range(C.n_obj)}
    if a.op == "density":
        s.add(result("density", True, exists=True, T=T, coalgebras=_names(C, m.coalgebras)))
        s.say(*(f"T({k}) = {v}" for k, v in T.items()))
        s.say("coalgebras: " + " ".join(_names(C, m.coalgebras)))
    elif a.op == "idempotent":
        idem = is_idempotent(m)
        s.add(result("idempotent", True, value=idem))
        s.say(str(idem).lower())
    elif a.op == "coreflect":
        F = coreflector(m)
        w = coreflection_witness(m)
        s.add(result("coreflection", w is None, w, coalgebras=_names(C, m.coalgebras),
                     coreflector={C.objects[c]: F.target.objects[F.obj_map[c]] for c in range(C.n_obj)}))
        s.say("coalgebras: " + " ".join(_names(C, m.coalgebras)))
        s.say(f"hom-set bijection: {'ok' if w is None else w}")


# --------------------------------------------------------------------------
# kgen


def cmd_kgen(s: Session, a):
    L = _frame(s, a.file)
    o = s.args.guard_override
    if a.op == "kdiagram":
        K = k_diagram(L, o)
        listing = [S.names() for S in K.objects]
        s.add(result("kdiagram", True, objects=listing))
        s.say(f"{len(listing)} compact sublocales")
        s.say(*("  {" + " ".join(x) + "}" for x in listing))
    elif a.op == "counit":
        res = density_counit_locale(L, o)
        idem = idempotence_locale_check(L, o)
        s.add(result("counit-iso", res.iso, "ε is not an isomorphism", T=list(res.T.elements)))
        s.add(result("idempotence", idem, "T(T(L)) differs from T(L)"))
        s.say(f"T({L.name}) has {res.T.n} elements; counit iso: {str(res.iso).lower()}")
        s.say(f"idempotent: {str(idem).lower()}")
    elif a.op == "product-final":
        M = _frame(s, a.args[0]) if a.args else L
        rep = product_finality_check(L, M, override=o)
        flags = {k: v for k, v in vars(rep).items() if k != "sizes"}
        s.add(result("product-finality", bool(rep), [k for k, v in flags.items() if not v], sizes=rep.sizes, **flags))
        s.say(*(f"{k}: {str(v).lower()}" for k, v in flags.items()))


# --------------------------------------------------------------------------
# dual


def cmd_dual(s: Session, a):
    if a.op == "lc":
        X = s.load(a.file)
        L = open_set_frame(X)
        s.add(result("lc", True, elements=list(L.elements)))
        s.say(dsl.dump_frame(L).rstrip())
    elif a.op == "sp":
        L = _frame(s, a.file)
        X = points_space(L, override=s.args.guard_override)
        opens = [X.names(U) for U in X.sorted_opens()]
        s.add(result("sp", True, points=list(X.points), opens=opens))
        s.say(dsl.dump_space(X).rstrip())
    elif a.op == "roundtrip":
        X = s.load(a.file)
        rep = duality_check(X)
        back = points_space(open_set_frame(X), override=True)
        flags = dict(vars(rep))
        flags["sober_roundtrip"] = find_homeomorphism(X, back) is not None
        s.add(result("duality", bool(rep), [k for k, v in vars(rep).items() if not v], **flags))
        s.say(*(f"{k}: {str(v).lower()}" for k, v in flags.items()))


# --------------------------------------------------------------------------
# validate and suite


def cmd_validate(s: Session, a):
    for f in a.files:
        try:
            obj = s.load(f)
        except FinlocError as e:
            s.add(result("valid", False, f"{type(e).__name__}: {e}", file=f))
            s.say(f"{f}: {type(e).__name__}: {e}")
            continue
        s.add(result("valid", True, file=f, kind=type(obj).__name__))
        s.say(f"{f}: ok ({type(obj).__name__})")


def cmd_suite(s: Session, a):
    if a.op != "run":
        raise UnknownCommand(f"unknown suite command '{a.op}'")
    counts = (a.functors, a.diagrams)
    files, results = run_directory(a.dir, s.args.seed, s.args.guard_override, counts)
    for p in files:
        s.inputs.append({"path": str(p), "sha256": hashlib.sha256(p.read_bytes()).hexdigest()})
    s.results.extend(results)
    for r in results:
        line = f"{r['status']:7} {r['file']}: {r['check']}"
        if r["status"] == "fail":
            line += f"  witness={json.dumps(r['witness'])}"
        elif r["status"] == "skipped":
            line += f"  ({r['reason']})"
        s.say(line)
    tally = {k: sum(r["status"] == k for r in results) for k in ("pass", "fail", "skipped")}
    s.say(f"{tally['pass']} passed, {tally['fail']} failed, {tally['skipped']} skipped")


# --------------------------------------------------------------------------


def build_parser() -> Parser:
    p = Parser(prog="finloc", description="Finite frames, locales and finite categories.")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized suites")
    p.add_argument("--guard-override", action="store_true", help="lift the size guards")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--timing", action="store_true", help="include the duration in the report")
    sub = p.add_subparsers(dest="command", parser_class=Parser)
    sub.required = True

    v = sub.add_parser("validate", help="parse and validate fixture files")
    v.add_argument("files", nargs="+")
    v.set_defaults(fn=cmd_validate)

    f = sub.add_parser("frame", help="frame operations")
    f.add_argument("op", choices=["check", "heyting", "sublocales", "product", "sh-check"])
    f.add_argument("file")
    f.add_argument("args", nargs="*")
    f.set_defaults(fn=cmd_frame)

    c = sub.add_parser("cat", help="finite category operations on full subcategories")
    c.add_argument("op", choices=["final", "colimit", "adjoint"])
    c.add_argument("file")
    c.add_argument("objects", nargs="*")
    c.set_defaults(fn=cmd_cat)

    k = sub.add_parser("kan", help="density comonads, closeable checks and Fubini")
    k.add_argument("op", choices=["density", "idempotent", "coreflect", "closeable", "hom", "fubini"])
    k.add_argument("file")
    k.add_argument("objects", nargs="*")
    k.add_argument("--trials", type=int, default=100)
    k.set_defaults(fn=cmd_kan)

    g = sub.add_parser("kgen", help="compact generation for finite locales")
    g.add_argument("op", choices=["kdiagram", "counit", "product-final"])
    g.add_argument("file")
    g.add_argument("args", nargs="*")
    g.set_defaults(fn=cmd_kgen)

    d = sub.add_parser("dual", help="open-set frames and spaces of points")
    d.add_argument("op", choices=["lc", "sp", "roundtrip"])
    d.add_argument("file")
    d.set_defaults(fn=cmd_dual)

    s = sub.add_parser("suite", help="property suites over a fixture directory")
    s.add_argument("op", choices=["run"])
    s.add_argument("dir")
    s.add_argument("--functors", type=int, default=200)
    s.add_argument("--diagrams", type=int, default=100)
    s.set_defaults(fn=cmd_suite)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UnknownCommand as e:
        print(f"finloc: error: {e}", file=err)
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    s = Session(args)
    start = time.perf_counter()
    try:
        args.fn(s, args)
    except SizeGuardExceeded as e:
        s.add(skipped(args.command, f"guard: {e}"))
        s.say(f"skipped: {e}")
        print(f"finloc: skipped: {e}", file=err)
    except FinlocError as e:
        print(f"finloc: {type(e).__name__}: {e}", file=err)
        if args.json:
            s.add(result(args.command, False, f"{type(e).__name__}: {e}"))
            _emit(s, args, start, out)
        return 2
    except OSError as e:
        print(f"finloc: {e}", file=err)
        return 2
    _emit(s, args, start, out)
    return 1 if s.failed() else 0


def _emit(s: Session, args, start, out):
    if args.json:
        cmd = " ".join(x for x in (args.command, getattr(args, "op", None)) if x)
        report = {"schema": SCHEMA, "command": cmd, "inputs": s.inputs, "results": s.results}
        if args.timing:
            report["duration"] = round(time.perf_counter() - start, 6)
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False), file=out)
    else:
        for line in s.lines:
            print(line, file=out)


def main():
    sys.exit(run())

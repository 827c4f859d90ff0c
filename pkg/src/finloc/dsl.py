"""Text formats for frames (``.frm``), categories (``.cat``), spaces (``.spc``)
and universe bundles (``.uni``).

All four share one line grammar::

    # comment
    frame three-chain          <- block header: kind and name
    elements: 0 m 1            <- section, items on the same line ...
    order:
      0 <= m <= 1              <- ... or on indented continuation lines

Items are separated by whitespace or commas. A file may hold several blocks.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FinlocError, ParseError
from .fincat import FinCategory, validate_category
from .frames import Frame, LocalicMap, check_frame
from .lattice import FinLattice, FinPoset
from .duality import FinTopSpace
from .kanengine import Exponential, Product

HEADERS = ("frame", "lattice", "category", "space", "universe")
SECTIONS = {
    "frame": ("elements", "order"),
    "lattice": ("elements", "order"),
    "category": ("objects", "arrows", "compose", "subcategory", "products", "exponentials"),
    "space": ("points", "opens"),
    "universe": ("maps",),
}


@dataclass
class Tok:
    text: str
    line: int
    col: int
    comma_after: bool = False

    def error(self, msg) -> ParseError:
        return ParseError(msg, self.line, self.col)


@dataclass
class Block:
    kind: str
    name: str
    line: int
    sections: dict = field(default_factory=dict)  # key -> list of lines, each a list of Tok
    section_pos: dict = field(default_factory=dict)

    def lines(self, key) -> list:
        return self.sections.get(key, [])

    def items(self, key) -> list:
        return [t for ln in self.lines(key) for t in ln]


_TOKEN = re.compile(r"[^\s,]+")


def _tokens(text: str, line: int, offset: int) -> list:
    out = []
    ms = list(_TOKEN.finditer(text))
    for k, m in enumerate(ms):
        gap = text[m.end():ms[k + 1].start() if k + 1 < len(ms) else len(text)]
        out.append(Tok(m.group(), line, offset + m.start() + 1, "," in gap))
    return out


def parse_blocks(text: str) -> list:
    blocks = []
    cur = None
    key = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        indented = body[0] in " \t"
        stripped = body.strip()
        lead = len(body) - len(body.lstrip())
        word = stripped.split()[0]
        if not indented and word in HEADERS:
            parts = stripped.split()
            if len(parts) != 2:
                raise ParseError(f"expected '{word} <name>'", lineno, 1)
            cur = Block(word, parts[1], lineno)
            blocks.append(cur)
            key = None
            continue
        if cur is None:
            raise ParseError(f"expected a block header ({', '.join(HEADERS)})", lineno, lead + 1)
        m = re.match(r"([A-Za-z_][\w-]*)(?:\s+([^:\s]+))?\s*:", stripped) if not indented else None
        if m and m.group(1) in SECTIONS[cur.kind]:
            key = m.group(1)
            if key in cur.sections and key not in ("products", "exponentials", "subcategory", "maps"):
                raise ParseError(f"duplicate section '{key}'", lineno, lead + 1)
            rest_at = m.end()
            label = m.group(2)
            cur.sections.setdefault(key, [])
            cur.section_pos.setdefault(key, (lineno, lead + 1))
            toks = _tokens(stripped[rest_at:], lineno, lead + rest_at)
            if label is not None:
                toks.insert(0, Tok(label, lineno, lead + m.start(2) + 1))
            if toks:
                cur.sections[key].append(toks)
            continue
        if key is None or not indented:
            if m:
                raise ParseError(f"unknown section '{m.group(1)}' in {cur.kind} block", lineno, lead + 1)
            raise ParseError("continuation line outside any section", lineno, lead + 1)
        cur.sections[key].append(_tokens(stripped, lineno, lead))
    return blocks


def _require(block: Block, key: str):
    if key not in block.sections:
        raise ParseError(f"{block.kind} '{block.name}' has no '{key}:' section", block.line, 1)


def _unique_names(toks, what) -> list:
    seen = set()
    for t in toks:
        if t.text in seen:
            raise t.error(f"duplicate {what} '{t.text}'")
        seen.add(t.text)
    return [t.text for t in toks]


# --------------------------------------------------------------------------
# frames


_REL = re.compile(r"(<=|<|>=|>)")


def _order_pairs(block: Block, names: set) -> list:
    """``a <= b <= c`` chains, with or without spaces around the relation."""
    pairs = []
    for ln in block.lines("order"):
        # re-split so that 'a<=b' and 'a <= b' both work, keeping columns
        pieces = []
        for t in ln:
            pos = 0
            for part in _REL.split(t.text):
                if part:
                    pieces.append(Tok(part, t.line, t.col + pos))
                pos += len(part)
        # an element right after an element starts a new chain
        prev, rel = None, None
        for t in pieces:
            if t.text in ("<=", "<", ">=", ">"):
                if prev is None or rel is not None:
                    raise t.error(f"misplaced relation '{t.text}'")
                rel = t
                continue
            if t.text not in names:
                raise t.error(f"unknown element '{t.text}'")
            if rel is not None:
                a, b = prev.text, t.text
                pairs.append((a, b) if rel.text in ("<=", "<") else (b, a))
            prev, rel = t, None
        if rel is not None:
            raise rel.error("order chain ends with a relation")
    return pairs


def frame_from_block(block: Block, override=False) -> FinLattice:
    _require(block, "elements")
    elements = _unique_names(block.items("elements"), "element")
    if not elements:
        raise ParseError("a frame needs at least one element", *block.section_pos["elements"])
    pairs = _order_pairs(block, set(elements))
    try:
        lat = FinLattice(FinPoset.from_pairs(elements, pairs), name=block.name)
    except FinlocError as e:
        e.args = (f"{block.name}: {e.args[0]}",) + e.args[1:]
        raise
    if block.kind == "frame":
        return check_frame(lat, override=override)
    return lat


def parse_frame(text: str, override=False) -> FinLattice:
    return _single(text, ("frame", "lattice"), lambda b: frame_from_block(b, override))


def dump_frame(L: FinLattice, kind="frame") -> str:
    """Inverse of :func:`parse_frame`: elements plus the covering relation."""
    out = [f"{kind} {L.name or 'L'}", "elements: " + " ".join(L.elements)]
    covers = []
    for a in range(L.n):
        for b in range(L.n):
            if a != b and L.leq[a][b] and not any(
                c not in (a, b) and L.leq[a][c] and L.leq[c][b] for c in range(L.n)
            ):
                covers.append(f"{L.elements[a]} <= {L.elements[b]}")
    out.append("order:")
    out.extend("  " + c for c in covers)
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# categories


_ARROW = re.compile(r"^([^\s:]+)\s*:\s*(\S+?)\s*->\s*(\S+)$")
_COMPOSE = re.compile(r"^(\S+)\s*\.\s*(\S+)\s*=\s*(\S+)$")


def category_from_block(block: Block, override=False) -> FinCategory:
    _require(block, "objects")
    objects = _unique_names(block.items("objects"), "object")
    arrows = []
    for item in _items_with_spaces(block, "arrows"):
        m = _ARROW.match(item.text)
        if not m:
            raise item.error(f"expected 'name: src -> tgt', got '{item.text}'")
        nm, s, t = m.groups()
        for o in (s, t):
            if o not in objects:
                raise item.error(f"unknown object '{o}'")
        arrows.append((nm, s, t))
    comps = {}
    for item in _items_with_spaces(block, "compose"):
        m = _COMPOSE.match(item.text)
        if not m:
            raise item.error(f"expected 'g.f = h', got '{item.text}'")
        g, f, h = m.groups()
        comps[(g, f)] = h
    try:
        return validate_category(objects, arrows, comps, name=block.name, override=override)
    except FinlocError as e:
        pos = block.section_pos.get("compose") or block.section_pos.get("arrows") or (block.line, 1)
        e.line, e.col = pos
        raise


def _items_with_spaces(block: Block, key: str) -> list:
    """Comma- or line-separated items that may contain inner spaces."""
    out = []
    for ln in block.lines(key):
        groups, cur = [], []
        for t in ln:
            cur.append(t)
            if t.comma_after:
                groups.append(cur)
                cur = []
        if cur:
            groups.append(cur)
        for g in groups:
            text = " ".join(t.text for t in g)
            out.append(Tok(text, g[0].line, g[0].col))
    return out


def parse_category(text: str, override=False) -> FinCategory:
    return _single(text, ("category",), lambda b: category_from_block(b, override))


def dump_category(C: FinCategory) -> str:
    out = [f"category {C.name or 'C'}", "objects: " + " ".join(C.objects)]
    ids = set(C.identity)
    named = [u for u in range(C.n_mor) if u not in ids]
    out.append("arrows:")
    out.extend(f"  {C.morphisms[u]}: {C.objects[C.src[u]]} -> {C.objects[C.tgt[u]]}" for u in named)
    out.append("compose:")
    for g in named:
        for f in named:
            h = C.compose[g][f]
            if h >= 0:
                out.append(f"  {C.morphisms[g]}.{C.morphisms[f]} = {C.morphisms[h]}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# spaces


def space_from_block(block: Block) -> FinTopSpace:
    _require(block, "points")
    points = _unique_names(block.items("points"), "point")
    opens = []
    for ln in block.lines("opens"):
        src = " ".join(t.text for t in ln)
        line, col = (ln[0].line, ln[0].col) if ln else (block.line, 1)
        depth_ok = re.fullmatch(r"(\s*\{[^{}]*\}\s*)*", src)
        if not depth_ok:
            raise ParseError("opens are written as braced point lists like {a b}", line, col)
        for m in re.finditer(r"\{([^{}]*)\}", src):
            members = [p for p in re.split(r"[\s,]+", m.group(1)) if p]
            for p in members:
                if p not in points:
                    raise ParseError(f"unknown point '{p}'", line, col)
            opens.append(members)
    return FinTopSpace(points, opens, name=block.name)


def parse_space(text: str) -> FinTopSpace:
    return _single(text, ("space",), space_from_block)


def dump_space(X: FinTopSpace) -> str:
    opens = " ".join("{" + " ".join(X.names(U)) + "}" for U in X.sorted_opens())
    return f"space {X.name or 'X'}\npoints: {' '.join(X.points)}\nopens: {opens}\n"


# --------------------------------------------------------------------------
# universes


@dataclass
class CategoryUniverse:
    """A category with a chosen full subcategory ``W`` and optional supplied structure."""

    category: FinCategory
    W: tuple
    products: dict  # (a, b) -> Product
    exponentials: dict  # (e, z) -> Exponential


@dataclass
class FrameUniverse:
    frames: dict  # name -> Frame
    maps: dict  # name -> LocalicMap


def _category_universe(block: Block, override=False) -> CategoryUniverse:
    C = category_from_block(block, override)
    oi = {o: i for i, o in enumerate(C.objects)}
    mi = {m: i for i, m in enumerate(C.morphisms)}

    def obj(t):
        if t.text not in oi:
            raise t.error(f"unknown object '{t.text}'")
        return oi[t.text]

    def mor(t):
        if t.text not in mi:
            raise t.error(f"unknown arrow '{t.text}'")
        return mi[t.text]

    W = tuple(sorted({obj(t) for ln in block.lines("subcategory") for t in ln if t.text != "W"}))
    if "subcategory" not in block.sections:
        W = tuple(range(C.n_obj))
    products, exps = {}, {}
    for ln in block.lines("products"):
        texts = [t.text for t in ln]
        if len(ln) != 6 or texts[2] != "->":
            raise ln[0].error("expected 'a b -> p p1 p2'")
        a, b, p = obj(ln[0]), obj(ln[1]), obj(ln[3])
        products[(a, b)] = Product(p, mor(ln[4]), mor(ln[5]))
    for ln in block.lines("exponentials"):
        texts = [t.text for t in ln]
        if len(ln) != 5 or texts[2] != "->":
            raise ln[0].error("expected 'e z -> E ev'")
        exps[(obj(ln[0]), obj(ln[1]))] = Exponential(obj(ln[3]), mor(ln[4]))
    return CategoryUniverse(C, W, products, exps)


def _frame_universe(blocks: list, uni: Block | None, override=False) -> FrameUniverse:
    frames = {}
    for b in blocks:
        if b.kind in ("frame", "lattice"):
            if b.name in frames:
                raise ParseError(f"duplicate frame '{b.name}'", b.line, 1)
            F = frame_from_block(b, override)
            if not isinstance(F, Frame):
                raise ParseError(f"'{b.name}' must be a frame inside a universe", b.line, 1)
            frames[b.name] = F
    maps = {}
    if uni is not None:
        for ln in uni.lines("maps"):
            # name: L -> M x=y ...
            ln = [t for t in ln if t.text != ":"]
            if ln and ln[0].text.endswith(":"):
                ln[0] = Tok(ln[0].text[:-1], ln[0].line, ln[0].col)
            if len(ln) < 4 or ln[2].text != "->":
                raise ln[0].error("expected 'name: L -> M a=b ...'")
            nm, src, tgt = ln[0], ln[1], ln[3]
            for t in (src, tgt):
                if t.text not in frames:
                    raise t.error(f"unknown frame '{t.text}'")
            assign = {}
            for t in ln[4:]:
                if t.text.count("=") != 1:
                    raise t.error(f"expected 'x=y', got '{t.text}'")
                x, y = t.text.split("=")
                assign[x] = y
            try:
                maps[nm.text] = LocalicMap.from_names(frames[src.text], frames[tgt.text], assign)
            except FinlocError as e:
                raise nm.error(f"map '{nm.text}': {e}") from None
    return FrameUniverse(frames, maps)


def parse_universe(text: str, override=False):
    """A ``.uni`` bundle: either a category block with ``subcategory``,
    ``products`` and ``exponentials`` sections, or several frame blocks plus an
    optional ``universe`` block listing localic maps."""
    blocks = parse_blocks(text)
    if not blocks:
        raise ParseError("empty universe", 1, 1)
    cats = [b for b in blocks if b.kind == "category"]
    if cats:
        if len(blocks) != 1:
            raise ParseError("a category universe holds exactly one category block", blocks[1].line, 1)
        return _category_universe(cats[0], override)
    unis = [b for b in blocks if b.kind == "universe"]
    if len(unis) > 1:
        raise ParseError("more than one universe block", unis[1].line, 1)
    return _frame_universe(blocks, unis[0] if unis else None, override)


# --------------------------------------------------------------------------
# shared


def _single(text, kinds, build):
    blocks = parse_blocks(text)
    if not blocks:
        raise ParseError(f"no {kinds[0]} block found", 1, 1)
    if blocks[0].kind not in kinds:
        raise ParseError(f"expected a {' or '.join(kinds)} block, got '{blocks[0].kind}'", blocks[0].line, 1)
    if len(blocks) > 1:
        raise ParseError("more than one block", blocks[1].line, 1)
    return build(blocks[0])


EXTENSIONS = {".frm": "frame", ".cat": "category", ".spc": "space", ".uni": "universe"}


def load(path, override=False):
    """Parse a file, choosing the format from its extension."""
    p = Path(path)
    kind = EXTENSIONS.get(p.suffix)
    if kind is None:
        raise ParseError(f"unknown file type '{p.suffix}' (expected one of {', '.join(EXTENSIONS)})", 0, 0)
    text = p.read_text()
    if kind == "frame":
        return parse_frame(text, override)
    if kind == "category":
        return parse_category(text, override)
    if kind == "space":
        return parse_space(text)
    return parse_universe(text, override)

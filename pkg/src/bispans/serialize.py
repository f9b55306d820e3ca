"""Diagram documents: a JSON text with one declaration per line.

::

    {
      "groups": {
        "G": {"builtin": "C2"}
      },
      "objects": {
        "X": {"carrier": [0, 1], "group": "G", "action": [[1, 0]]}
      },
      "morphisms": {
        "f": {"dom": "X", "cod": "Y", "table": [0, 0]}
      },
      "bispans": {
        "b": {"src": "Y", "tgt": "Y", "E": "X", "B": "Y", "p": "f", "f": "f", "l": "idY"}
      }
    }

Groups are ``{"builtin": name}``, ``{"generators": perms}`` or
``{"mul": table}``. An object's ``action`` lists one permutation per
generator (the full table for ``mul`` groups). Legs of spans and bispans
name morphisms or give index tables inline. Errors carry line and column.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .bispan import Bispan
from .context import CompositionError, Mor, Obj
from .gset import Group, builtin_group
from .span import Span

SECTIONS = ("groups", "objects", "morphisms", "spans", "bispans", "semirings")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message, self.line, self.column = message, line, column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class Document:
    groups: dict = field(default_factory=dict)
    objects: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    spans: dict = field(default_factory=dict)
    bispans: dict = field(default_factory=dict)
    semirings: dict = field(default_factory=dict)
    text: str = ""

    def locate(self, ident: str) -> tuple[int, int]:
        """Line and column of the declaration (or first mention) of ``ident``."""
        return _locate(self.text, ident)

    def get(self, section: str, ident: str):
        table = getattr(self, section)
        if ident not in table:
            line, col = self.locate(ident)
            raise ParseError(f"unresolved {section[:-1]} id {ident!r}", line, col)
        return table[ident]


def _locate(text: str, ident: str) -> tuple[int, int]:
    m = re.search(r'"' + re.escape(ident) + r'"\s*:', text) or re.search(r'"' + re.escape(ident) + r'"', text)
    if not m:
        return 0, 0
    before = text[: m.start()]
    return before.count("\n") + 1, m.start() - (before.rfind("\n") + 1) + 1


def _tuplify(v):
    if isinstance(v, list):
        return tuple(_tuplify(x) for x in v)
    return v


def _listify(v):
    if isinstance(v, tuple):
        return [_listify(x) for x in v]
    return v


# parsing


def parse_document(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise ParseError("document must be a JSON object", 1, 1)
    doc = Document(text=text)
    for key in raw:
        if key not in SECTIONS:
            line, col = _locate(text, key)
            raise ParseError(f"unknown section {key!r}", line, col)

    def fail(ident, msg):
        line, col = _locate(text, ident)
        raise ParseError(f"{ident}: {msg}", line, col)

    for gid, spec in raw.get("groups", {}).items():
        try:
            if "builtin" in spec:
                doc.groups[gid] = builtin_group(spec["builtin"])
            elif "generators" in spec:
                doc.groups[gid] = Group.from_permutations(spec["generators"], name=spec.get("name", gid))
            elif "mul" in spec:
                doc.groups[gid] = Group(spec["mul"], name=spec.get("name", gid))
            else:
                fail(gid, "group needs builtin, generators or mul")
        except (KeyError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            fail(gid, str(exc))

    for oid, spec in raw.get("objects", {}).items():
        try:
            carrier = _tuplify(spec["carrier"]) if isinstance(spec, dict) else tuple(range(spec))
            gname = spec.get("group") if isinstance(spec, dict) else None
            if gname is None:
                doc.objects[oid] = Obj(carrier)
                continue
            G = doc.get("groups", gname)
            action = spec.get("action")
            if action is None:
                table = ((tuple(range(len(carrier))),) * G.order)
            elif G.generators is not None and len(action) == len(G.generators):
                table = G.expand_action(action)
            else:
                table = _tuplify(action)
            doc.objects[oid] = Obj(carrier, G, table)
        except ParseError:
            raise
        except (KeyError, ValueError, TypeError) as exc:
            fail(oid, f"bad object: {exc}")

    for mid, spec in raw.get("morphisms", {}).items():
        try:
            dom, cod = doc.get("objects", spec["dom"]), doc.get("objects", spec["cod"])
            doc.morphisms[mid] = Mor(dom, cod, tuple(spec["table"]), spec.get("F", True), spec.get("L", True))
        except ParseError:
            raise
        except (KeyError, ValueError, TypeError) as exc:
            fail(mid, f"bad morphism: {exc}")

    def leg(ident, spec, key, dom, cod):
        v = spec[key]
        if isinstance(v, str):
            m = doc.get("morphisms", v)
            if m.dom != dom or m.cod != cod:
                fail(ident, f"leg {key} ({v}) has the wrong domain or codomain")
            return m
        return Mor(dom, cod, tuple(v))

    for sid, spec in raw.get("spans", {}).items():
        try:
            src, tgt, apex = (doc.get("objects", spec[k]) for k in ("src", "tgt", "apex"))
            doc.spans[sid] = Span(src, tgt, apex, leg(sid, spec, "back", apex, src), leg(sid, spec, "fwd", apex, tgt))
        except ParseError:
            raise
        except (KeyError, ValueError, TypeError) as exc:
            fail(sid, f"bad span: {exc}")

    for bid, spec in raw.get("bispans", {}).items():
        try:
            src, tgt, E, B = (doc.get("objects", spec[k]) for k in ("src", "tgt", "E", "B"))
            doc.bispans[bid] = Bispan(src, tgt, E, B, leg(bid, spec, "p", E, src),
                                      leg(bid, spec, "f", E, B), leg(bid, spec, "l", B, tgt))
        except ParseError:
            raise
        except (KeyError, ValueError, TypeError) as exc:
            fail(bid, f"bad bispan: {exc}")

    for rid, name in raw.get("semirings", {}).items():
        from .evaluation import SEMIRINGS

        if name not in SEMIRINGS and name != "poly":
            fail(rid, f"unknown semiring {name!r}")
        doc.semirings[rid] = name
    return doc


# serialization


class _Namer:
    """Assigns ids to groups and objects, reusing ids for equal values."""

    def __init__(self, doc: Document):
        self.doc = doc

    def group(self, G) -> str:
        for k, v in self.doc.groups.items():
            if v == G:
                return k
        gid = G.name if G.name not in self.doc.groups else f"G{len(self.doc.groups)}"
        self.doc.groups[gid] = G
        return gid

    def obj(self, x: Obj, hint: str) -> str:
        for k, v in self.doc.objects.items():
            if v == x:
                return k
        if x.group is not None:
            self.group(x.group)
        oid = hint
        n = 1
        while oid in self.doc.objects:
            n += 1
            oid = f"{hint}{n}"
        self.doc.objects[oid] = x
        return oid


def to_document(values: dict) -> Document:
    """Collect named spans, bispans, morphisms and objects into a document."""
    doc = Document()
    namer = _Namer(doc)
    for name, v in values.items():
        if isinstance(v, Bispan):
            for k in ("src", "tgt", "E", "B"):
                namer.obj(getattr(v, k), f"{name}.{k}")
            doc.bispans[name] = v
        elif isinstance(v, Span):
            for k in ("src", "tgt", "apex"):
                namer.obj(getattr(v, k), f"{name}.{k}")
            doc.spans[name] = v
        elif isinstance(v, Mor):
            namer.obj(v.dom, f"{name}.dom")
            namer.obj(v.cod, f"{name}.cod")
            doc.morphisms[name] = v
        elif isinstance(v, Obj):
            if v.group is not None:
                namer.group(v.group)
            doc.objects[name] = v
        elif isinstance(v, Group):
            doc.groups[name] = v
        else:
            raise TypeError(f"cannot serialize {type(v).__name__}")
    return doc


def _oid(doc: Document, x: Obj) -> str:
    for k, v in doc.objects.items():
        if v == x:
            return k
    raise CompositionError("object is not declared in the document")


def _gid(doc: Document, G) -> str:
    for k, v in doc.groups.items():
        if v == G:
            return k
    raise CompositionError("group is not declared in the document")


def _dump(v) -> str:
    return json.dumps(_listify(v), ensure_ascii=False, sort_keys=True, separators=(", ", ": "))


def _group_entry(G) -> dict:
    try:
        if builtin_group(G.name) == G:
            return {"builtin": G.name}
    except (KeyError, ValueError):
        pass
    if G.perms is not None and G.generators is not None:
        return {"generators": [list(G.perms[g]) for g in G.generators], "name": G.name}
    return {"mul": G.mul, "name": G.name}


def _object_entry(doc: Document, x: Obj) -> dict:
    entry = {"carrier": x.carrier}
    if x.group is not None:
        G = x.group
        entry["group"] = _gid(doc, G)
        if G.generators is not None and G.expand_action([x.action[g] for g in G.generators]) == x.action:
            entry["action"] = [x.action[g] for g in G.generators]
        else:
            entry["action"] = x.action
    return entry


def _mor_entry(doc: Document, m: Mor) -> dict:
    entry = {"dom": _oid(doc, m.dom), "cod": _oid(doc, m.cod), "table": m.table}
    if not m.F:
        entry["F"] = False
    if not m.L:
        entry["L"] = False
    return entry


def serialize_document(doc: Document) -> str:
    """Canonical text: fixed section order, ids sorted, one entry per line."""
    sections = {}
    if doc.groups:
        sections["groups"] = {k: _group_entry(G) for k, G in doc.groups.items()}
    if doc.objects:
        sections["objects"] = {k: _object_entry(doc, x) for k, x in doc.objects.items()}
    if doc.morphisms:
        sections["morphisms"] = {k: _mor_entry(doc, m) for k, m in doc.morphisms.items()}
    if doc.spans:
        sections["spans"] = {
            k: {"src": _oid(doc, s.src), "tgt": _oid(doc, s.tgt), "apex": _oid(doc, s.apex),
                "back": s.back.table, "fwd": s.fwd.table}
            for k, s in doc.spans.items()
        }
    if doc.bispans:
        sections["bispans"] = {
            k: {"src": _oid(doc, b.src), "tgt": _oid(doc, b.tgt), "E": _oid(doc, b.E), "B": _oid(doc, b.B),
                "p": b.p.table, "f": b.f.table, "l": b.l.table}
            for k, b in doc.bispans.items()
        }
    if doc.semirings:
        sections["semirings"] = dict(doc.semirings)
    out = ["{"]
    names = [s for s in SECTIONS if s in sections]
    for i, s in enumerate(names):
        out.append(f"  {json.dumps(s)}: {{")
        items = sorted(sections[s].items())
        for j, (k, v) in enumerate(items):
            comma = "," if j < len(items) - 1 else ""
            out.append(f"    {json.dumps(k, ensure_ascii=False)}: {_dump(v)}{comma}")
        out.append("  }" + ("," if i < len(names) - 1 else ""))
    out.append("}")
    return "\n".join(out) + "\n"


def serialize(values: dict) -> str:
    return serialize_document(to_document(values))


def parse(text: str) -> dict:
    """All declared values by id (later sections shadow earlier ids)."""
    doc = parse_document(text)
    out = {}
    for s in SECTIONS:
        out.update(getattr(doc, s))
    return out


# graph output


def to_dot(name: str, nodes: dict, edges: list) -> str:
    """``nodes``: id -> Obj; ``edges``: (src id, tgt id, label)."""
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=LR;"]
    for k, x in nodes.items():
        lines.append(f"  {json.dumps(k)} [label={json.dumps(f'{k} ({len(x)})')}];")
    for a, b, label in edges:
        lines.append(f"  {json.dumps(a)} -> {json.dumps(b)} [label={json.dumps(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def bispan_dot(name: str, b: Bispan) -> str:
    return to_dot(name, {"src": b.src, "E": b.E, "B": b.B, "tgt": b.tgt},
                  [("E", "src", "p"), ("E", "B", "f"), ("B", "tgt", "l")])


def span_dot(name: str, s: Span) -> str:
    return to_dot(name, {"src": s.src, "apex": s.apex, "tgt": s.tgt},
                  [("apex", "src", "back"), ("apex", "tgt", "fwd")])


def dist_dot(name: str, d) -> str:
    return to_dot(name, {"x": d.l.dom, "y": d.f.dom, "z": d.f.cod, "w": d.w, "f*w": d.pb.apex},
                  [("x", "y", "l"), ("y", "z", "f"), ("w", "z", "g"), ("f*w", "x", "eps"),
                   ("f*w", "w", "f~"), ("f*w", "y", "g~")])

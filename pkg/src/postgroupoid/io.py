"""The ``.pgx`` document format.

A document is a JSON object ``{"kind": ..., "meta": {...}, "payload": {...}}``
restricted to objects, arrays, integers and strings.  ``emit`` is a canonical
pretty-printer: 2-space indent, sorted keys, integer lists on one line.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .bracoid import SkewLeftBracoid
from .core import (FiniteGroup, GroupBundle, Groupoid, MalformedInput, Quiver, as_table,
                   as_vector, bundle_from_group)
from .post_groupoid import PostGroupoid
from .rota_baxter import GroupoidAction, MatchedPair, RelativeRotaBaxter
from .yang_baxter import BraidedQuiver

KINDS = ("group", "group_action", "post_groupoid", "groupoid", "group_bundle",
         "rb_instance", "braided_quiver", "bracoid", "matched_pair", "map")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if path:
            where.append(path)
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.path = path


@dataclass(frozen=True)
class Document:
    kind: str
    payload: dict
    meta: dict = field(default_factory=dict)


class GroupAction(NamedTuple):
    """Right action of ``group`` on ``n_base`` points; ``tri`` makes the group a post-group."""
    group: FiniteGroup
    n_base: int
    act: tuple
    tri: tuple | None = None

    def post_group(self) -> PostGroupoid:
        if self.tri is None:
            raise MalformedInput("no post-group structure given", "tri")
        return PostGroupoid(bundle_from_group(self.group), [0] * self.group.n, self.tri)


class GroupBundleSpec(NamedTuple):
    bundle: GroupBundle
    phi: tuple | None = None


# -- parsing ---------------------------------------------------------------

def _reject(what):
    def hook(s):
        raise ValueError(f"{what} not allowed: {s}")
    return hook


def _pairs(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _line_of(text: str, path: str) -> int | None:
    """Line of the last key on ``path``, searching keys in order."""
    pos = 0
    for key in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", path):
        m = re.compile(r'"%s"\s*:' % re.escape(key)).search(text, pos)
        if m is None:
            return None
        pos = m.start()
    return text.count("\n", 0, pos) + 1 if path else None


def _check_values(obj, path: str) -> None:
    if isinstance(obj, bool) or obj is None:
        raise ParseError(f"{json.dumps(obj)} not allowed", path=path)
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_values(v, f"{path}.{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _check_values(v, f"{path}[{i}]")


def parse(text: str) -> Document:
    if not text.strip():
        raise ParseError("empty document", line=1)
    try:
        raw = json.loads(text, object_pairs_hook=_pairs, parse_float=_reject("float"),
                         parse_constant=_reject("constant"))
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None
    except ValueError as e:
        raise ParseError(str(e)) from None
    try:
        _check_values(raw, "$")
    except ParseError as e:
        path = e.path[2:] if e.path else ""
        raise ParseError(str(e).split(": ", 1)[-1], _line_of(text, path), path) from None
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object", line=1)
    extra = set(raw) - {"kind", "payload", "meta"}
    if extra:
        key = sorted(extra)[0]
        raise ParseError(f"unknown key {key!r}", _line_of(text, key), key)
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", _line_of(text, "kind"), "kind")
    payload = raw.get("payload")
    if not isinstance(payload, dict):
        raise ParseError("payload must be an object", _line_of(text, "payload"), "payload")
    meta = raw.get("meta", {})
    if not isinstance(meta, dict) or not all(isinstance(v, str) for v in meta.values()):
        raise ParseError("meta must map names to strings", _line_of(text, "meta"), "meta")
    doc = Document(kind, payload, meta)
    try:
        to_object(doc)
    except MalformedInput as e:
        path = "payload" + (f".{e.field}" if e.field else "")
        msg = str(e).split(": ", 1)[-1] if e.field else str(e)
        raise ParseError(msg, _line_of(text, path), path) from None
    return doc


def read(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- emitting --------------------------------------------------------------

def _scalar(v) -> str:
    return json.dumps(v, ensure_ascii=False)


def _emit(obj, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_scalar(k)}: {_emit(obj[k], indent + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (list, tuple, dict)) for v in obj):
            return "[" + ", ".join(_scalar(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _emit(v, indent + 1) for v in obj) + "\n" + "  " * indent + "]"
    return _scalar(obj)


def emit(doc: Document) -> str:
    return _emit({"kind": doc.kind, "meta": doc.meta, "payload": doc.payload}, 0) + "\n"


def write(path, doc: Document) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit(doc))


# -- documents <-> objects -------------------------------------------------

def _need(d: dict, key: str, prefix: str = ""):
    if not isinstance(d, dict):
        raise MalformedInput("expected an object", prefix.rstrip(".") or None)
    if key not in d:
        raise MalformedInput("missing field", prefix + key)
    return d[key]


def _nested(fn, d, key, prefix=""):
    try:
        return fn(_need(d, key, prefix))
    except MalformedInput as e:
        sub = f"{prefix}{key}" + (f".{e.field}" if e.field else "")
        msg = str(e).split(": ", 1)[-1] if e.field else str(e)
        raise MalformedInput(msg, sub) from None


def _int(d, key) -> int:
    v = _need(d, key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise MalformedInput("expected an integer", key)
    return v


def _group(d) -> FiniteGroup:
    return FiniteGroup(_need(d, "mul"), _int(d, "identity"), _need(d, "inv"))


def _bundle(d) -> GroupBundle:
    return GroupBundle(_int(d, "n_base"), _need(d, "pi"), _need(d, "mul"),
                       _need(d, "unit"), _need(d, "inv"))


def _groupoid(d) -> Groupoid:
    return Groupoid(_int(d, "n_base"), _need(d, "alpha"), _need(d, "beta"), _need(d, "mul"),
                    _need(d, "unit"), _need(d, "inv"))


def _map(d) -> tuple[int, ...]:
    m = _need(d, "map")
    if not isinstance(m, list) or not all(isinstance(v, int) and v >= 0 for v in m):
        raise MalformedInput("expected a list of non-negative integers", "map")
    return tuple(m)


def to_object(doc: Document):
    p = doc.payload
    kind = doc.kind
    if kind == "group":
        return _group(p)
    if kind == "group_bundle":
        b = _bundle(p)
        phi = p.get("phi")
        if phi is not None:
            phi = as_vector(phi, b.n, b.n_base, "phi")
        return GroupBundleSpec(b, phi)
    if kind == "groupoid":
        return _groupoid(p)
    if kind == "post_groupoid":
        b = _nested(_bundle, p, "bundle")
        return PostGroupoid(b, _need(p, "phi"), _need(p, "tri"))
    if kind == "group_action":
        g = _nested(_group, p, "group")
        n_base = _int(p, "n_base")
        if n_base < 1:
            raise MalformedInput("base must have at least one point", "n_base")
        act = as_table(_need(p, "act"), n_base, g.n, n_base, "act")
        tri = p.get("tri")
        if tri is not None:
            tri = as_table(tri, g.n, g.n, g.n, "tri")
        return GroupAction(g, n_base, act, tri)
    if kind == "rb_instance":
        g = _nested(_groupoid, p, "groupoid")
        h = _nested(_bundle, p, "bundle")
        action = GroupoidAction(g, h, _need(p, "act"))
        return RelativeRotaBaxter(action, _need(p, "b"))
    if kind == "braided_quiver":
        q = Quiver(_int(p, "n_base"), _need(p, "alpha"), _need(p, "beta"))
        return BraidedQuiver(q, _need(p, "left"), _need(p, "right"))
    if kind == "bracoid":
        return SkewLeftBracoid(_nested(_bundle, p, "bundle"), _nested(_groupoid, p, "groupoid"))
    if kind == "matched_pair":
        g = _nested(_groupoid, p, "g")
        k = _nested(_groupoid, p, "k")
        return MatchedPair(g, k, _need(p, "left"), _need(p, "right"))
    if kind == "map":
        return _map(p)
    raise MalformedInput(f"unknown kind {kind!r}", "kind")


def _rows(t) -> list[list[int]]:
    return [list(r) for r in t]


def _group_payload(g: FiniteGroup) -> dict:
    return {"mul": _rows(g.mul), "identity": g.identity, "inv": list(g.inv)}


def _bundle_payload(b: GroupBundle) -> dict:
    return {"n_base": b.n_base, "pi": list(b.pi), "mul": _rows(b.mul), "unit": list(b.unit),
            "inv": list(b.inv)}


def _groupoid_payload(g: Groupoid) -> dict:
    return {"n_base": g.n_base, "alpha": list(g.alpha), "beta": list(g.beta),
            "mul": _rows(g.mul), "unit": list(g.unit), "inv": list(g.inv)}


def to_document(obj, meta: dict | None = None) -> Document:
    meta = dict(meta or {})
    if isinstance(obj, FiniteGroup):
        return Document("group", _group_payload(obj), meta)
    if isinstance(obj, GroupBundleSpec):
        pl = _bundle_payload(obj.bundle)
        if obj.phi is not None:
            pl["phi"] = list(obj.phi)
        return Document("group_bundle", pl, meta)
    if isinstance(obj, GroupBundle):
        return Document("group_bundle", _bundle_payload(obj), meta)
    if isinstance(obj, Groupoid):
        return Document("groupoid", _groupoid_payload(obj), meta)
    if isinstance(obj, PostGroupoid):
        return Document("post_groupoid", {"bundle": _bundle_payload(obj.bundle),
                                          "phi": list(obj.phi), "tri": _rows(obj.tri)}, meta)
    if isinstance(obj, GroupAction):
        pl = {"group": _group_payload(obj.group), "n_base": obj.n_base, "act": _rows(obj.act)}
        if obj.tri is not None:
            pl["tri"] = _rows(obj.tri)
        return Document("group_action", pl, meta)
    if isinstance(obj, RelativeRotaBaxter):
        return Document("rb_instance", {"groupoid": _groupoid_payload(obj.g),
                                        "bundle": _bundle_payload(obj.h),
                                        "act": _rows(obj.action.act), "b": list(obj.b)}, meta)
    if isinstance(obj, BraidedQuiver):
        q = obj.quiver
        return Document("braided_quiver", {"n_base": q.n_base, "alpha": list(q.alpha),
                                           "beta": list(q.beta), "left": _rows(obj.left),
                                           "right": _rows(obj.right)}, meta)
    if isinstance(obj, SkewLeftBracoid):
        return Document("bracoid", {"bundle": _bundle_payload(obj.bundle),
                                    "groupoid": _groupoid_payload(obj.gpd)}, meta)
    if isinstance(obj, MatchedPair):
        return Document("matched_pair", {"g": _groupoid_payload(obj.g),
                                         "k": _groupoid_payload(obj.k),
                                         "left": _rows(obj.left), "right": _rows(obj.right)}, meta)
    if isinstance(obj, (list, tuple)):
        return Document("map", {"map": [int(v) for v in obj]}, meta)
    raise TypeError(f"no document kind for {type(obj).__name__}")

"""Text documents for groupoids, functors, natural isomorphisms and groups.

A document is one JSON object::

    {"format": "pathcat", "version": 1,
     "groups":    {name: {"elements": [...], "table": [[...]], "identity": e}},
     "groupoids": {name: {"objects": [...], "morphisms": [{"id", "src", "dst"}],
                          "identities": {...}, "compose": [[g, f, gf], ...],
                          "inverse": {...}}},
     "maps":      {name: {"domain": ref, "codomain": ref,
                          "object_map": {...}, "morphism_map": {...}}},
     "isos":      {name: {"source": map name, "target": map name,
                          "components": {...}}}}

Every section is optional.  A groupoid ``ref`` is the name of a groupoid in
the same document, an inline groupoid, ``{"named": "BS3"}`` for the built-in
catalog, or ``{"file": path}`` (relative to the document).  Ids are strings;
library ids are rendered with :func:`id_str`.  Output is canonical: sorted
keys, two-space indent, trailing newline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import PathcatError, StructuralError
from .groupoids import (
    FiniteGroupoid,
    GroupoidMap,
    NaturalIso,
    delooping,
    standard_objects,
)
from .groups import FiniteGroup, group_by_name

FORMAT = "pathcat"
VERSION = 1
SECTIONS = ("groups", "groupoids", "maps", "isos")


class FormatError(PathcatError):
    """A document that cannot be read; ``where`` is a field path, ``line`` a 1-based line."""

    def __init__(self, message, where: str = "", line: int | None = None):
        self.where = where
        self.line = line
        loc = where
        if line is not None:
            loc = f"line {line}" + (f", {where}" if where else "")
        super().__init__(f"{loc}: {message}" if loc else message)


def id_str(x) -> str:
    """Render a library id as a string; tuples become ``(a,b)``."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(id_str(y) for y in x) + ")"
    return str(x)


def _unique(ids, what):
    out = [id_str(x) for x in ids]
    if len(set(out)) != len(out):
        raise PathcatError(f"{what} ids collide once rendered as strings")
    return out


# ---------------------------------------------------------------------------
# encoding


def encode_groupoid(g: FiniteGroupoid) -> dict:
    objs = _unique(g.objects, "object")
    mors = _unique(g.morphisms, "morphism")
    src, dst = g.src.tolist(), g.dst.tolist()
    local = g.local_rows
    compose = []
    for gi in range(g.n_morphisms):
        for fi in g.into_idx[src[gi]]:
            compose.append([mors[gi], mors[fi], mors[local[gi][g.pos_list[fi]]]])
    out = {"name": g.name} if g.name else {}
    return out | {
        "objects": objs,
        "morphisms": [{"id": m, "src": objs[s], "dst": objs[t]} for m, s, t in zip(mors, src, dst)],
        "identities": {objs[x]: mors[i] for x, i in enumerate(g.ident.tolist())},
        "compose": compose,
        "inverse": {mors[i]: mors[j] for i, j in enumerate(g.inv.tolist())},
    }


def encode_map(f: GroupoidMap, domain: str, codomain: str) -> dict:
    A, B = f.domain, f.codomain
    return {
        "domain": domain,
        "codomain": codomain,
        "object_map": {id_str(x): id_str(B.objects[i]) for x, i in zip(A.objects, f.obj_map.tolist())},
        "morphism_map": {id_str(a): id_str(B.morphisms[i]) for a, i in zip(A.morphisms, f.mor_map.tolist())},
    }


def encode_group(grp: FiniteGroup) -> dict:
    els = _unique(grp.elements, "element")
    return {
        "name": grp.name,
        "elements": els,
        "table": [[els[c] for c in row] for row in grp.table.tolist()],
        "identity": els[grp.identity_index],
    }


@dataclass
class Document:
    """Named groups, groupoids, maps and isos, in insertion order."""

    groups: dict = field(default_factory=dict)
    groupoids: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    isos: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def add_groupoid(self, g: FiniteGroupoid, name: str | None = None) -> str:
        for k, v in self.groupoids.items():
            if v is g or v == g:
                return k
        key = name or g.name or f"G{len(self.groupoids)}"
        while key in self.groupoids:
            key += "'"
        self.groupoids[key] = g
        return key

    def add_map(self, f: GroupoidMap, name: str) -> str:
        self.add_groupoid(f.domain)
        self.add_groupoid(f.codomain)
        self.maps[name] = f
        return name

    def add_iso(self, eta: NaturalIso, name: str) -> str:
        self.add_map(eta.source, f"{name}.source")
        self.add_map(eta.target, f"{name}.target")
        self.isos[name] = eta
        return name

    def _gname(self, g):
        return next(k for k, v in self.groupoids.items() if v is g or v == g)

    def to_json(self) -> dict:
        out = {"format": FORMAT, "version": VERSION}
        if self.groups:
            out["groups"] = {k: encode_group(v) for k, v in self.groups.items()}
        if self.groupoids:
            out["groupoids"] = {k: encode_groupoid(v) for k, v in self.groupoids.items()}
        if self.maps:
            out["maps"] = {k: encode_map(v, self._gname(v.domain), self._gname(v.codomain))
                           for k, v in self.maps.items()}
        if self.isos:
            out["isos"] = {}
            for k, eta in self.isos.items():
                B = eta.source.codomain
                out["isos"][k] = {
                    "source": f"{k}.source",
                    "target": f"{k}.target",
                    "components": {id_str(x): id_str(B.morphisms[c])
                                   for x, c in zip(eta.source.domain.objects, eta.components.tolist())},
                }
        out.update(self.extra)
        return out


def dumps(doc) -> str:
    """Canonical text of a :class:`Document` or an already encoded dict."""
    data = doc.to_json() if isinstance(doc, Document) else doc
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# decoding


def _need(d, key, where, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise FormatError(f"missing field {key!r}", where)
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise FormatError(f"field {key!r} has the wrong type (expected {kind.__name__})", f"{where}.{key}")
    return v


def _strings(xs, where):
    for i, x in enumerate(xs):
        if not isinstance(x, str):
            raise FormatError("ids must be strings", f"{where}[{i}]")
    return xs


def _str_dict(d, where):
    for k, v in d.items():
        if not isinstance(v, str):
            raise FormatError("ids must be strings", f"{where}.{k}")
    return d


def decode_group(d: dict, where: str) -> FiniteGroup:
    if isinstance(d, dict) and "named" in d:
        try:
            return group_by_name(d["named"])
        except ValueError as e:
            raise FormatError(str(e), f"{where}.named") from None
    els = _strings(_need(d, "elements", where, list), f"{where}.elements")
    table = _need(d, "table", where, list)
    e = _need(d, "identity", where, str)
    idx = {x: i for i, x in enumerate(els)}
    rows = []
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != len(els):
            raise FormatError("table row has the wrong length", f"{where}.table[{i}]")
        for j, x in enumerate(row):
            if x not in idx:
                raise FormatError(f"dangling element {x!r}", f"{where}.table[{i}][{j}]")
        rows.append([idx[x] for x in row])
    if len(rows) != len(els):
        raise FormatError("table has the wrong number of rows", f"{where}.table")
    if e not in idx:
        raise FormatError(f"identity {e!r} is not an element", f"{where}.identity")
    grp = FiniteGroup(els, rows, name=d.get("name"))
    if grp.identity_index != idx[e]:
        raise FormatError(f"{e!r} is not the identity of the table", f"{where}.identity")
    return grp


def decode_groupoid(d: dict, where: str) -> FiniteGroupoid:
    objs = _strings(_need(d, "objects", where, list), f"{where}.objects")
    recs = []
    for i, m in enumerate(_need(d, "morphisms", where, list)):
        w = f"{where}.morphisms[{i}]"
        recs.append((_need(m, "id", w, str), _need(m, "src", w, str), _need(m, "dst", w, str)))
    ident = _str_dict(_need(d, "identities", where, dict), f"{where}.identities")
    inv = _str_dict(_need(d, "inverse", where, dict), f"{where}.inverse")
    triples = []
    for i, t in enumerate(_need(d, "compose", where, list)):
        if not isinstance(t, list) or len(t) != 3:
            raise FormatError("composition entries are [g, f, gf]", f"{where}.compose[{i}]")
        triples.append(tuple(_strings(t, f"{where}.compose[{i}]")))
    return FiniteGroupoid.from_tables(objs, recs, ident, triples, inv, name=d.get("name"))


class _Loader:
    def __init__(self, data: dict, base: Path, seen: tuple = ()):
        self.data = data
        self.base = base
        self.seen = seen
        self.groupoids: dict[str, FiniteGroupoid] = {}
        self.groups: dict[str, FiniteGroup] = {}
        self.maps: dict[str, GroupoidMap] = {}
        self.isos: dict[str, NaturalIso] = {}

    def groupoid_ref(self, ref, where):
        if isinstance(ref, str):
            if ref not in self.data.get("groupoids", {}):
                raise FormatError(f"unknown groupoid {ref!r}", where)
            return self.groupoid(ref)
        if isinstance(ref, dict) and "named" in ref:
            cat = standard_objects()
            name = ref["named"]
            if name in cat:
                return _stringly(cat[name])
            if isinstance(name, str) and name.startswith("B"):
                try:
                    return _stringly(delooping(group_by_name(name[1:])))
                except ValueError:
                    pass
            raise FormatError(f"unknown named groupoid {name!r}", where)
        if isinstance(ref, dict) and "file" in ref:
            sub = load(self.base / ref["file"], _seen=self.seen)
            if len(sub.groupoids) != 1:
                raise FormatError("referenced file must hold exactly one groupoid", where)
            return next(iter(sub.groupoids.values()))
        if isinstance(ref, dict):
            return _wrap(decode_groupoid, ref, where)
        raise FormatError("groupoid reference must be a name, inline groupoid, named or file", where)

    def groupoid(self, key):
        if key not in self.groupoids:
            where = f"groupoids.{key}"
            self.groupoids[key] = self.groupoid_ref_inline(self.data["groupoids"][key], where)
        return self.groupoids[key]

    def groupoid_ref_inline(self, d, where):
        if isinstance(d, dict) and ("named" in d or "file" in d):
            return self.groupoid_ref(d, where)
        return _wrap(decode_groupoid, d, where)

    def map(self, key):
        if key not in self.maps:
            where = f"maps.{key}"
            d = self.data["maps"][key]
            A = self.groupoid_ref(_need(d, "domain", where), f"{where}.domain")
            B = self.groupoid_ref(_need(d, "codomain", where), f"{where}.codomain")
            om = _str_dict(_need(d, "object_map", where, dict), f"{where}.object_map")
            mm = _str_dict(_need(d, "morphism_map", where, dict), f"{where}.morphism_map")
            self.maps[key] = _wrap(lambda *_: GroupoidMap.from_dicts(A, B, om, mm, name=key), d, where)
        return self.maps[key]

    def iso(self, key):
        where = f"isos.{key}"
        d = self.data["isos"][key]
        names = [_need(d, k, where, str) for k in ("source", "target")]
        for k, n in zip(("source", "target"), names):
            if n not in self.data.get("maps", {}):
                raise FormatError(f"unknown map {n!r}", f"{where}.{k}")
        F, G = self.map(names[0]), self.map(names[1])
        comps = _str_dict(_need(d, "components", where, dict), f"{where}.components")
        B = F.codomain
        missing = [x for x in F.domain.objects if x not in comps]
        if missing:
            raise FormatError(f"no component at object {missing[0]!r}", f"{where}.components")
        bad = [c for c in comps.values() if c not in B.mor_index]
        if bad:
            raise FormatError(f"dangling component {bad[0]!r}", f"{where}.components")
        return NaturalIso.from_dict(F, G, comps)

    def run(self) -> Document:
        d = self.data
        if d.get("format") != FORMAT:
            raise FormatError(f"'format' must be {FORMAT!r}", "format")
        if d.get("version") != VERSION:
            raise FormatError(f"unsupported version {d.get('version')!r}", "version")
        for sec in SECTIONS:
            if sec in d and not isinstance(d[sec], dict):
                raise FormatError("section must be an object", sec)
        doc = Document()
        for k, v in d.get("groups", {}).items():
            doc.groups[k] = _wrap(decode_group, v, f"groups.{k}")
        for k in d.get("groupoids", {}):
            doc.groupoids[k] = self.groupoid(k)
        for k in d.get("maps", {}):
            doc.maps[k] = self.map(k)
        for k in d.get("isos", {}):
            doc.isos[k] = self.iso(k)
        doc.extra = {k: v for k, v in d.items() if k not in SECTIONS + ("format", "version")}
        return doc


def _stringly(g: FiniteGroupoid) -> FiniteGroupoid:
    """``g`` with ids rendered as strings (no-op for parsed groupoids)."""
    if all(isinstance(x, str) for x in g.objects) and all(isinstance(f, str) for f in g.morphisms):
        return g
    return FiniteGroupoid(_unique(g.objects, "object"), _unique(g.morphisms, "morphism"),
                          g.src, g.dst, g.ident, inv=g.inv, name=g.name, local=g.local)


def _wrap(fn, d, where):
    try:
        return fn(d, where)
    except StructuralError as e:
        raise FormatError("; ".join(e.problems), where) from None
    except FormatError:
        raise
    except PathcatError as e:
        raise FormatError(str(e), where) from None


def loads(text: str, base: Path | str = ".", _seen: tuple = ()) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, line=e.lineno) from None
    if not isinstance(data, dict):
        raise FormatError("document must be an object", line=1)
    try:
        return _Loader(data, Path(base), _seen).run()
    except FormatError as e:
        if e.line is None and e.where:
            e.line = _locate(text, e.where)
            raise FormatError(str(e).split(": ", 1)[-1], e.where, e.line) from None
        raise


def load(path, _seen: tuple = ()) -> Document:
    path = Path(path)
    key = str(path.resolve())
    if key in _seen:
        raise FormatError(f"circular file reference to {path}")
    try:
        text = path.read_text()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from None
    return loads(text, path.parent, _seen + (key,))


def _locate(text: str, where: str) -> int | None:
    """Best-effort line of the last named key in ``where``."""
    keys = [k.split("[")[0] for k in where.split(".") if k]
    line = None
    start = 0
    for k in keys:
        pos = text.find(json.dumps(k), start)
        if pos < 0:
            break
        start = pos
        line = text.count("\n", 0, pos) + 1
    return line


def single(doc: Document, section: str, name: str | None = None):
    """The entry ``name`` of a section, or its only entry."""
    items = getattr(doc, section)
    if name is not None:
        if name not in items:
            raise FormatError(f"no entry {name!r}", section)
        return items[name]
    if len(items) != 1:
        raise FormatError(f"expected exactly one entry (found {len(items)}); pick one by name", section)
    return next(iter(items.values()))

"""JSON documents for groupoids, functors, spans, local systems and decorated data.

Every document is an object with a ``kind`` field.  A sub-document field holds
either an inline object (its ``kind`` may be omitted) or a string naming a file,
resolved relative to the directory of the document that mentions it.  Rationals
are strings ``"p"`` or ``"p/q"``.
"""

from __future__ import annotations

import json
import os

from .errors import InvariantViolation, ParseError
from .groupoid import FiniteGroupoid, GroupoidFunctor
from .local_systems import LocalSystem
from .matrix import RatMatrix, format_rational
from .span import Span
from .tft import DecoratedObject, DecoratedSpan, _lsmap

KINDS = ("groupoid", "functor", "span", "local_system", "decorated_object", "decorated_span")


class _Loader:
    def __init__(self):
        self.cache = {}
        self.active = set()

    def load_file(self, filename, expect=None, path=""):
        full = os.path.abspath(filename)
        if full in self.cache:
            value = self.cache[full]
            kind = _kind_of(value)
            if expect is not None and kind != expect:
                raise ParseError(f"{filename} holds a {kind}, expected {expect}", path)
            return value
        if full in self.active:
            raise ParseError(f"circular reference to {filename}", path)
        try:
            with open(full, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {filename}: {exc.strerror}", path) from None
        self.active.add(full)
        try:
            value = self.parse_bytes(raw, os.path.dirname(full), expect, path)
        finally:
            self.active.discard(full)
        self.cache[full] = value
        return value

    def parse_bytes(self, raw, base_dir, expect=None, path=""):
        try:
            text = raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw
            doc = json.loads(text)
        except UnicodeDecodeError:
            raise ParseError("document is not UTF-8", path) from None
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", path) from None
        return self.parse(doc, base_dir, expect, path)

    def parse(self, doc, base_dir, expect=None, path="", defaults=None):
        if isinstance(doc, str):
            return self.load_file(os.path.join(base_dir, doc), expect, path)
        if not isinstance(doc, dict):
            raise ParseError("expected an object or a file reference", path)
        kind = doc.get("kind", expect)
        if kind is None:
            raise ParseError("missing 'kind' field", path)
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r}", f"{path}.kind")
        if expect is not None and kind != expect:
            raise ParseError(f"expected a {expect}, got a {kind}", path)
        return getattr(self, "_" + kind)(doc, base_dir, path, defaults or {})

    def sub(self, doc, name, base_dir, expect, path, default=None, defaults=None):
        if name not in doc:
            if default is not None:
                return default
            raise ParseError(f"missing field {name!r}", path)
        return self.parse(doc[name], base_dir, expect, f"{path}.{name}", defaults)

    # kinds

    def _groupoid(self, doc, base_dir, path, defaults):
        n = _int(_field(doc, "objects", path), f"{path}.objects")
        morphisms = []
        for i, pair in enumerate(_list(_field(doc, "morphisms", path), f"{path}.morphisms")):
            p = f"{path}.morphisms[{i}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError("morphism must be a [source, target] pair", p)
            morphisms.append((_int(pair[0], p + "[0]"), _int(pair[1], p + "[1]")))
        identity = _ints(_field(doc, "identity", path), f"{path}.identity")
        inverse = _ints(_field(doc, "inverse", path), f"{path}.inverse")
        table = {}
        for i, triple in enumerate(_list(_field(doc, "compose", path), f"{path}.compose")):
            p = f"{path}.compose[{i}]"
            if not isinstance(triple, list) or len(triple) != 3:
                raise ParseError("compose entry must be a [g, f, g o f] triple", p)
            g, f, h = (_int(v, f"{p}[{k}]") for k, v in enumerate(triple))
            if table.get((g, f), h) != h:
                raise InvariantViolation("totality", f"compose({g}, {f}) given twice with different values", p)
            table[(g, f)] = h
        label = doc.get("label")
        if label is not None and not isinstance(label, str):
            raise ParseError("label must be a string", f"{path}.label")
        with _prefixed(path):
            return FiniteGroupoid(n, morphisms, identity, inverse, table, label=label)

    def _functor(self, doc, base_dir, path, defaults):
        domain = self.sub(doc, "domain", base_dir, "groupoid", path, defaults.get("domain"))
        codomain = self.sub(doc, "codomain", base_dir, "groupoid", path, defaults.get("codomain"))
        objects = _ints(_field(doc, "object_map", path), f"{path}.object_map")
        morphisms = _ints(_field(doc, "morphism_map", path), f"{path}.morphism_map")
        with _prefixed(path):
            return GroupoidFunctor(domain, codomain, objects, morphisms)

    def _span(self, doc, base_dir, path, defaults):
        apex = self.sub(doc, "apex", base_dir, "groupoid", path)
        left = self.sub(doc, "left", base_dir, "functor", path, defaults={"domain": apex})
        right = self.sub(doc, "right", base_dir, "functor", path, defaults={"domain": apex})
        if left.domain != apex or right.domain != apex:
            raise InvariantViolation("span-apex", "both legs must start at the apex", path)
        return Span(apex, left, right)

    def _local_system(self, doc, base_dir, path, defaults):
        base = self.sub(doc, "base", base_dir, "groupoid", path, defaults.get("base"))
        dims = _ints(_field(doc, "dim", path), f"{path}.dim")
        actions = _list(_field(doc, "action", path), f"{path}.action")
        if len(dims) != base.object_count:
            raise InvariantViolation("local-system-dims", "one dimension per object required", f"{path}.dim")
        if len(actions) != base.morphism_count:
            raise InvariantViolation("local-system-counts", "one action matrix per morphism required",
                                     f"{path}.action")
        mats = [RatMatrix.from_json(a, f"{path}.action[{f}]", dims[base.target[f]], dims[base.source[f]])
                for f, a in enumerate(actions)]
        with _prefixed(path):
            return LocalSystem(base, dims, mats)

    def _decorated_object(self, doc, base_dir, path, defaults):
        space = self.sub(doc, "space", base_dir, "groupoid", path)
        system = self.sub(doc, "system", base_dir, "local_system", path, defaults={"base": space})
        with _prefixed(path):
            return DecoratedObject(space, system)

    def _decorated_span(self, doc, base_dir, path, defaults):
        source = self.sub(doc, "source", base_dir, "decorated_object", path)
        target = self.sub(doc, "target", base_dir, "decorated_object", path)
        carrier = self.sub(doc, "carrier", base_dir, "span", path)
        apex_system = self.sub(doc, "apex_system", base_dir, "local_system", path,
                               defaults={"base": carrier.apex})
        Z = carrier.apex

        def components(name, obj, leg):
            items = _list(_field(doc, name, path), f"{path}.{name}")
            if len(items) != Z.object_count:
                raise InvariantViolation("lsmap-counts", "one component per apex object required",
                                         f"{path}.{name}")
            return [RatMatrix.from_json(m, f"{path}.{name}[{z}]", obj.system.dim(leg.obj(z)),
                                        apex_system.dim(z)) for z, m in enumerate(items)]

        left = components("left_dec", source, carrier.left)
        right = components("right_dec", target, carrier.right)
        D = DecoratedSpan(source, target, carrier, apex_system,
                          _lsmap(apex_system, source, carrier.left, left),
                          _lsmap(apex_system, target, carrier.right, right))
        with _prefixed(path):
            return D.validate()


class _prefixed:
    """Prefix the JSON path of invariant violations raised inside the block."""

    def __init__(self, path):
        self.path = path

    def __enter__(self):
        return self

    def __exit__(self, kind, exc, tb):
        if isinstance(exc, InvariantViolation) and self.path and not exc.path.startswith(self.path):
            exc.path = self.path + exc.path
            exc.args = (f"{exc.axiom} at {exc.path}: {exc.detail}",)
        return False


_CLASSES = (("groupoid", FiniteGroupoid), ("functor", GroupoidFunctor), ("span", Span),
            ("local_system", LocalSystem), ("decorated_object", DecoratedObject),
            ("decorated_span", DecoratedSpan))


def _kind_of(value):
    for kind, cls in _CLASSES:
        if isinstance(value, cls):
            return kind
    return None


def _kind_of_class(cls):
    return next(kind for kind, c in _CLASSES if c is cls)


def _field(doc, name, path):
    if name not in doc:
        raise ParseError(f"missing field {name!r}", path)
    return doc[name]


def _int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", path)
    return value


def _list(value, path):
    if not isinstance(value, list):
        raise ParseError("expected an array", path)
    return value


def _ints(value, path):
    return [_int(v, f"{path}[{i}]") for i, v in enumerate(_list(value, path))]


def parse_document(data, base_dir=".", expect=None):
    """Parse JSON text (or bytes, or an already decoded object) into a domain value."""
    loader = _Loader()
    if isinstance(data, (str, bytes, bytearray)):
        return loader.parse_bytes(data, base_dir, expect)
    return loader.parse(data, base_dir, expect)


def load_document(filename, expect=None, loader=None):
    return (loader or _Loader()).load_file(filename, expect)


def new_loader():
    """A loader that shares parsed files between several documents."""
    return _Loader()


# dumping


def dump_matrix(m):
    return m.to_json()


def dump_groupoid(X):
    table = X.compose_table()
    doc = {
        "kind": "groupoid",
        "objects": X.object_count,
        "morphisms": [list(p) for p in X.morphisms],
        "identity": list(X.identity),
        "inverse": list(X.inverse),
        "compose": [[g, f, table[g, f]] for g, f in sorted(table)],
    }
    if X.label:
        doc["label"] = X.label
    return doc


def dump_functor(F):
    return {"kind": "functor", "domain": dump_groupoid(F.domain), "codomain": dump_groupoid(F.codomain),
            "object_map": list(F.object_map), "morphism_map": list(F.morphism_map)}


def dump_span(S):
    return {"kind": "span", "apex": dump_groupoid(S.apex), "left": dump_functor(S.left),
            "right": dump_functor(S.right)}


def dump_local_system(L):
    return {"kind": "local_system", "base": dump_groupoid(L.base), "dim": list(L.dims),
            "action": [L.action(f).to_json() for f in range(L.base.morphism_count)]}


def dump_decorated_object(A):
    return {"kind": "decorated_object", "space": dump_groupoid(A.space), "system": dump_local_system(A.system)}


def dump_decorated_span(D):
    return {"kind": "decorated_span", "source": dump_decorated_object(D.source),
            "target": dump_decorated_object(D.target), "carrier": dump_span(D.carrier),
            "apex_system": dump_local_system(D.apex_system),
            "left_dec": [c.to_json() for c in D.left_dec.component],
            "right_dec": [c.to_json() for c in D.right_dec.component]}


def dump_norm_report(r):
    return {"kind": "norm_report", "colim_dim": r.colim_dim, "lim_dim": r.lim_dim,
            "norm": r.norm.to_json(), "is_iso": r.is_iso}


def dump(value):
    kind = _kind_of(value)
    if kind is None:
        raise TypeError(f"cannot serialize {type(value).__name__}")
    return globals()["dump_" + kind](value)


def dumps(doc):
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def rational_str(x):
    return format_rational(x)

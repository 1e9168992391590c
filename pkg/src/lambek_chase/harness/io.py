"""Diagram files.

A diagram file is YAML with four top-level keys, in this order::

    backend: fgab            # or pset
    shape: two-square        # pair | square | two-square | five-column
    objects:
    - {name: A, rank: 1, relations: [[2]]}     # fgab: Z^rank / <relation columns>
    - {name: X, size: 3}                       # pset: {0 (basepoint), 1, 2}
    morphisms:
    - {name: f, dom: A, cod: B, matrix: [[2]]} # fgab: rows of the matrix
    - {name: t, dom: X, cod: Y, table: [0, 2, 2]}
    bindings: {f: f, g: g, "f'": fp, ...}

Roles per shape:

    pair         f g                          (g f null)
    square       f a b g                      (top, left, right, bottom)
    two-square   f g f' g' a b c
    five-column  f g h k f' g' h' k' a b c d e
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..core import FiveColumnDiagram, Mor, Obj, Square, TwoSquareDiagram, is_null
from ..errors import LambekChaseError, ParseError, ValidationError
from ..fgab import FGAB
from ..pset import PSET

BACKENDS = {"fgab": FGAB, "pset": PSET}

ROLES = {
    "pair": ("f", "g"),
    "square": ("f", "a", "b", "g"),
    "two-square": ("f", "g", "f'", "g'", "a", "b", "c"),
    "five-column": ("f", "g", "h", "k", "f'", "g'", "h'", "k'", "a", "b", "c", "d", "e"),
}

# default object names when a diagram is written out
_OBJECT_NAMES = {
    "pair": ("A", "B", "C"),
    "square": ("A", "B", "C", "D"),
    "two-square": ("A", "B", "C", "A'", "B'", "C'"),
    "five-column": ("A", "B", "C", "D", "E", "A'", "B'", "C'", "D'", "E'"),
}


def _role(name: str) -> str:
    name = str(name).replace("′", "'")
    if len(name) == 2 and name[1] == "p":
        name = name[0] + "'"
    return name


@dataclass
class DiagramFile:
    backend: str
    shape: str
    objects: dict[str, Obj]
    morphisms: dict[str, Mor]
    bindings: dict[str, str]
    meta: dict = field(default_factory=dict)

    def role(self, r: str) -> Mor:
        return self.morphisms[self.bindings[r]]

    def diagram(self):
        """The bound diagram: (f, g), Square, TwoSquareDiagram or FiveColumnDiagram."""
        ms = [self.role(r) for r in ROLES[self.shape]]
        if self.shape == "pair":
            return tuple(ms)
        if self.shape == "square":
            return Square(*ms, name="square S")
        if self.shape == "two-square":
            return TwoSquareDiagram(*ms)
        return FiveColumnDiagram(*ms)

    def to_dict(self) -> dict:
        objs = []
        for name, X in self.objects.items():
            if self.backend == "fgab":
                objs.append({"name": name, "rank": X.payload.n,
                             "relations": [list(r) for r in X.payload.relations]})
            else:
                objs.append({"name": name, "size": X.payload})
        mors = []
        for name, m in self.morphisms.items():
            entry = {"name": name, "dom": self._name_of(m.dom, "dom", name), "cod": self._name_of(m.cod, "cod", name)}
            if self.backend == "fgab":
                entry["matrix"] = [list(r) for r in m.payload]
            else:
                entry["table"] = list(m.payload)
            mors.append(entry)
        return {"backend": self.backend, "shape": self.shape, "objects": objs,
                "morphisms": mors, "bindings": dict(self.bindings)}

    def _name_of(self, X: Obj, end: str, mname: str) -> str:
        ends = self.meta.get("ends", {})
        if (mname, end) in ends:
            return ends[(mname, end)]
        for name, Y in self.objects.items():
            if Y == X:
                return name
        raise ValidationError(f"morphism {mname}: {end} is not a listed object")

    @classmethod
    def from_diagram(cls, backend: str, shape: str, diagram) -> "DiagramFile":
        roles = ROLES[shape]
        if shape == "pair":
            ms = list(diagram)
        elif shape == "square":
            ms = [diagram.top, diagram.left, diagram.right, diagram.bottom]
        elif shape == "two-square":
            ms = [diagram.f, diagram.g, diagram.fp, diagram.gp, diagram.a, diagram.b, diagram.c]
        else:
            ms = [getattr(diagram, k) for k in
                  ("f", "g", "h", "k", "fp", "gp", "hp", "kp", "a", "b", "c", "d", "e")]
        corners = _corners(shape, ms)
        objects = dict(zip(_OBJECT_NAMES[shape], corners))
        ends = {}
        names = list(objects)
        for r in roles:
            di, ci = _ENDS[shape][r]
            ends[(r, "dom")] = names[di]
            ends[(r, "cod")] = names[ci]
        morphisms = dict(zip(roles, ms))
        return cls(backend, shape, objects, morphisms, {r: r for r in roles}, {"ends": ends})


# (domain index, codomain index) of each role into _OBJECT_NAMES
_ENDS = {
    "pair": {"f": (0, 1), "g": (1, 2)},
    "square": {"f": (0, 1), "a": (0, 2), "b": (1, 3), "g": (2, 3)},
    "two-square": {"f": (0, 1), "g": (1, 2), "f'": (3, 4), "g'": (4, 5),
                   "a": (0, 3), "b": (1, 4), "c": (2, 5)},
    "five-column": {**{r: (i, i + 1) for i, r in enumerate(("f", "g", "h", "k"))},
                    **{r: (i + 5, i + 6) for i, r in enumerate(("f'", "g'", "h'", "k'"))},
                    **{r: (i, i + 5) for i, r in enumerate(("a", "b", "c", "d", "e"))}},
}


def _corners(shape, ms):
    ends = _ENDS[shape]
    n = len(_OBJECT_NAMES[shape])
    out = [None] * n
    for r, m in zip(ROLES[shape], ms):
        di, ci = ends[r]
        out[di], out[ci] = m.dom, m.cod
    return out


# --- parsing ---------------------------------------------------------------

def _require(d, key, where):
    if not isinstance(d, dict) or key not in d:
        raise ValidationError(f"{where}: missing '{key}'")
    return d[key]


def _int_list(x, where):
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise ValidationError(f"{where}: expected a list of integers")
    return x


def parse_diagram(data) -> DiagramFile:
    if not isinstance(data, dict):
        raise ValidationError("diagram file must be a mapping")
    backend = _require(data, "backend", "file")
    if backend not in BACKENDS:
        raise ValidationError(f"unknown backend {backend!r}")
    B = BACKENDS[backend]
    shape = _require(data, "shape", "file")
    if shape not in ROLES:
        raise ValidationError(f"unknown shape {shape!r}")
    raw_objects = _require(data, "objects", "file")
    if not isinstance(raw_objects, list) or not raw_objects:
        raise ValidationError("object list is empty")
    objects: dict[str, Obj] = {}
    for i, o in enumerate(raw_objects):
        name = str(_require(o, "name", f"object {i}"))
        if name in objects:
            raise ValidationError(f"object {name} defined twice")
        try:
            if backend == "fgab":
                rank = _require(o, "rank", f"object {name}")
                rels = o.get("relations") or []
                for r in rels:
                    _int_list(r, f"object {name} relation")
                    if len(r) != rank:
                        raise ValidationError(f"object {name}: relation length {len(r)} != rank {rank}")
                objects[name] = FGAB.group(int(rank), rels)
            else:
                objects[name] = PSET.pointed(int(_require(o, "size", f"object {name}")))
        except LambekChaseError as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(f"object {name}: {e}") from e
    raw_m = _require(data, "morphisms", "file")
    if not isinstance(raw_m, list):
        raise ValidationError("morphisms must be a list")
    morphisms: dict[str, Mor] = {}
    for i, m in enumerate(raw_m):
        name = str(_require(m, "name", f"morphism {i}"))
        if name in morphisms:
            raise ValidationError(f"morphism {name} defined twice")
        dom, cod = str(_require(m, "dom", name)), str(_require(m, "cod", name))
        for end in (dom, cod):
            if end not in objects:
                raise ValidationError(f"morphism {name}: unknown object {end}")
        key = "matrix" if backend == "fgab" else "table"
        payload = _require(m, key, f"morphism {name}")
        if backend == "fgab":
            if not isinstance(payload, list):
                raise ValidationError(f"morphism {name}: matrix must be a list of rows")
            for r in payload:
                _int_list(r, f"morphism {name} row")
        else:
            _int_list(payload, f"morphism {name} table")
        try:
            morphisms[name] = B.mor(objects[dom], objects[cod], payload)
        except LambekChaseError as e:
            raise ValidationError(f"morphism {name}: {e}") from e
    raw_b = _require(data, "bindings", "file")
    if not isinstance(raw_b, dict):
        raise ValidationError("bindings must be a mapping")
    bindings = {_role(k): str(v) for k, v in raw_b.items()}
    for r in ROLES[shape]:
        if r not in bindings:
            raise ValidationError(f"role {r} is not bound")
        if bindings[r] not in morphisms:
            raise ValidationError(f"role {r} bound to unknown morphism {bindings[r]}")
    extra = set(bindings) - set(ROLES[shape])
    if extra:
        raise ValidationError(f"roles {sorted(extra)} do not belong to shape {shape}")
    ends = {(str(m["name"]), e): str(m[e]) for m in raw_m for e in ("dom", "cod")}
    df = DiagramFile(backend, shape, objects, morphisms, bindings, {"ends": ends})
    _validate_shape(df)
    return df


def _validate_shape(df: DiagramFile):
    # corners shared between roles must be the same named object
    seen: dict[int, str] = {}
    for r in ROLES[df.shape]:
        di, ci = _ENDS[df.shape][r]
        for idx, end in ((di, "dom"), (ci, "cod")):
            name = df.meta["ends"][(df.bindings[r], end)]
            if idx in seen and seen[idx] != name:
                raise ValidationError(f"role {r}: {end} {name} should be {seen[idx]}")
            seen[idx] = name
    d = df.diagram()      # Square/TwoSquareDiagram raise "... does not commute"
    if df.shape == "pair":
        f, g = d
        if not is_null(g @ f):
            raise ValidationError("pair: g f is not null")
    elif df.shape == "two-square":
        if not is_null(d.g @ d.f):
            raise ValidationError("top row: g f is not null")
        if not is_null(d.gp @ d.fp):
            raise ValidationError("bottom row: g' f' is not null")
    elif df.shape == "five-column":
        if not d.rows_null():
            raise ValidationError("rows are not null sequences")


def loads(text: str) -> DiagramFile:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ParseError(str(e)) from e
    return parse_diagram(data)


def load_diagram(path) -> DiagramFile:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(str(e)) from e
    return loads(text)


class _FlowList(list):
    pass


def _flow(dumper, data):
    return dumper.represent_sequence("tag:yaml.org,2002:seq", data, flow_style=True)


class _Dumper(yaml.SafeDumper):
    pass


_Dumper.add_representer(_FlowList, _flow)


def dumps(df: DiagramFile) -> str:
    d = df.to_dict()
    for o in d["objects"]:
        if "relations" in o:
            o["relations"] = _FlowList(_FlowList(r) for r in o["relations"])
    for m in d["morphisms"]:
        key = "matrix" if "matrix" in m else "table"
        m[key] = _FlowList(_FlowList(r) for r in m[key]) if key == "matrix" else _FlowList(m[key])
    return yaml.dump(d, Dumper=_Dumper, sort_keys=False, default_flow_style=False, allow_unicode=False)


def save_diagram(df: DiagramFile, path):
    Path(path).write_text(dumps(df))

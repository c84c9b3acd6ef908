"""The ``homnambu/1`` JSON interchange format.

Scalars are always JSON strings in the scalar grammar, basis indices in
bracket and form keys are 1-based and strictly increasing, written as
comma-joined strings (``"1,2,3"``).  Example::

    {
      "format": "homnambu/1",
      "scalars": "polynomial",
      "parameters": ["b", "c"],
      "basis": ["x1", "x2", "x3", "x4"],
      "bracket": {"arity": 2, "entries": {"1,2": {"x3": "1", "x4": "b"}}},
      "maps": {"alpha1": [["0", "0", "0", "0"], ...]},
      "twists": ["alpha1"],
      "traces": {"tau": {"x1": "1", "x2": "1"}},
      "forms": {"omega": {"arity": 2, "entries": {"1,2": "1"}}},
      "vectors": {"a": {"x4": "1"}},
      "comment": ["free text lines"]
    }

``maps`` are matrices listed by rows, so column ``j`` is the image of basis
vector ``j``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .multilinear import HomNambuAlgebra, PForm, SkewMap
from .scalar import ParameterContext, Poly, ScalarSyntaxError, format_scalar, parse_scalar
from .space import LinearMap, Space, TraceFunctional

FORMAT = "homnambu/1"


class FileFormatError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class AlgebraFile:
    space: Space
    params: ParameterContext = field(default_factory=ParameterContext)
    bracket: SkewMap | None = None
    twists: list[str] = field(default_factory=list)
    maps: dict[str, LinearMap] = field(default_factory=dict)
    traces: dict[str, TraceFunctional] = field(default_factory=dict)
    forms: dict[str, PForm] = field(default_factory=dict)
    vectors: dict[str, tuple] = field(default_factory=dict)
    comment: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def scalar_mode(self) -> str:
        return "polynomial" if self.params.names else "rational"

    def algebra(self) -> HomNambuAlgebra:
        if self.bracket is None:
            raise FileFormatError("bracket", "file has no bracket")
        if len(self.twists) != self.bracket.arity - 1:
            raise FileFormatError("twists", f"arity {self.bracket.arity} needs "
                                            f"{self.bracket.arity - 1} twists")
        return HomNambuAlgebra(self.bracket, tuple(self.maps[t] for t in self.twists))

    def lookup(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            have = ", ".join(sorted(table)) or "none"
            raise FileFormatError(kind, f"no entry named {name!r} (have: {have})")
        return table[name]

    def sole(self, kind: str) -> str:
        """Name of the only entry of ``kind``; error when ambiguous."""
        table = getattr(self, kind)
        if len(table) != 1:
            raise FileFormatError(kind, f"expected exactly one entry, found {len(table)}; name one explicitly")
        return next(iter(table))


# -- reading --------------------------------------------------------------------


class _Reader:
    def __init__(self, data):
        self.data = data

    def scalar(self, text, where):
        if not isinstance(text, str):
            raise FileFormatError(where, "scalars must be strings")
        try:
            return parse_scalar(text, self.params)
        except ScalarSyntaxError as exc:
            raise FileFormatError(where, str(exc)) from None

    def vector(self, obj, where):
        if not isinstance(obj, dict):
            raise FileFormatError(where, "vector must map basis names to scalars")
        v = [Fraction(0)] * self.space.dim
        for name, text in obj.items():
            if name not in self.space.basis:
                raise FileFormatError(f"{where}.{name}", "unknown basis name")
            v[self.space.basis.index(name)] = self.scalar(text, f"{where}.{name}")
        return tuple(v)

    def key(self, text, arity, where):
        try:
            idx = tuple(int(t) for t in text.split(",")) if text else ()
        except ValueError:
            raise FileFormatError(where, f"bad index tuple {text!r}") from None
        if len(idx) != arity:
            raise FileFormatError(where, f"index tuple {text!r} does not have arity {arity}")
        if any(not 1 <= i <= self.space.dim for i in idx):
            raise FileFormatError(where, f"index out of range 1..{self.space.dim}")
        if any(idx[k] >= idx[k + 1] for k in range(len(idx) - 1)):
            raise FileFormatError(where, "indices must be strictly increasing")
        return tuple(i - 1 for i in idx)

    def table(self, obj, where, value):
        if not isinstance(obj, dict) or "arity" not in obj:
            raise FileFormatError(where, "expected an object with 'arity' and 'entries'")
        arity = obj["arity"]
        if not isinstance(arity, int) or arity < 1:
            raise FileFormatError(f"{where}.arity", "arity must be a positive integer")
        entries = obj.get("entries", {})
        if not isinstance(entries, dict):
            raise FileFormatError(f"{where}.entries", "entries must be an object")
        out = {}
        for k, v in entries.items():
            w = f"{where}.entries[{k!r}]"
            out[self.key(k, arity, w)] = value(v, w)
        return arity, out

    def read(self) -> AlgebraFile:
        d = self.data
        if not isinstance(d, dict):
            raise FileFormatError("<root>", "expected a JSON object")
        if d.get("format") != FORMAT:
            raise FileFormatError("format", f"expected {FORMAT!r}, got {d.get('format')!r}")
        mode = d.get("scalars", "rational")
        names = d.get("parameters", [])
        if mode not in ("rational", "polynomial"):
            raise FileFormatError("scalars", "must be 'rational' or 'polynomial'")
        if mode == "rational" and names:
            raise FileFormatError("parameters", "rational mode takes no parameters")
        try:
            self.params = ParameterContext(tuple(names))
        except ValueError as exc:
            raise FileFormatError("parameters", str(exc)) from None
        basis = d.get("basis")
        if "dimension" in d and basis is None:
            basis = [f"x{i + 1}" for i in range(d["dimension"])]
        try:
            self.space = Space(tuple(basis or ()))
        except ValueError as exc:
            raise FileFormatError("basis", str(exc)) from None
        if "dimension" in d and d["dimension"] != self.space.dim:
            raise FileFormatError("dimension", "does not match the basis length")
        f = AlgebraFile(self.space, self.params)
        if d.get("bracket") is not None:
            arity, table = self.table(d["bracket"], "bracket", self.vector)
            f.bracket = SkewMap(self.space.dim, arity, table)
        for name, rows in d.get("maps", {}).items():
            w = f"maps.{name}"
            n = self.space.dim
            if not isinstance(rows, list) or len(rows) != n or any(
                    not isinstance(r, list) or len(r) != n for r in rows):
                raise FileFormatError(w, f"expected a {n}x{n} matrix of strings")
            f.maps[name] = LinearMap.from_rows(
                [[self.scalar(x, f"{w}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)])
        f.twists = list(d.get("twists", []))
        for k, t in enumerate(f.twists):
            if t not in f.maps:
                raise FileFormatError(f"twists[{k}]", f"unknown map {t!r}")
        # an untwisted file may omit twists; a partial list is an error
        if f.bracket is not None and f.twists and len(f.twists) != f.bracket.arity - 1:
            raise FileFormatError("twists", f"arity {f.bracket.arity} needs {f.bracket.arity - 1} twists")
        for name, obj in d.get("traces", {}).items():
            f.traces[name] = TraceFunctional(self.vector(obj, f"traces.{name}"))
        for name, obj in d.get("forms", {}).items():
            arity, table = self.table(obj, f"forms.{name}", self.scalar)
            f.forms[name] = PForm(self.space.dim, arity, table)
        for name, obj in d.get("vectors", {}).items():
            f.vectors[name] = self.vector(obj, f"vectors.{name}")
        comment = d.get("comment", [])
        f.comment = [comment] if isinstance(comment, str) else list(comment)
        return f


def loads(text: str) -> AlgebraFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return _Reader(data).read()


def load(path) -> AlgebraFile:
    return loads(Path(path).read_text(encoding="utf-8"))


# -- writing --------------------------------------------------------------------


def _vec_json(space: Space, v):
    return {name: format_scalar(c) for name, c in zip(space.basis, v) if c}


def _key_json(key):
    return ",".join(str(i + 1) for i in key)


def to_dict(f: AlgebraFile) -> dict:
    out = {
        "format": FORMAT,
        "scalars": f.scalar_mode,
        "parameters": list(f.params.names),
        "dimension": f.dim,
        "basis": list(f.space.basis),
    }
    if f.bracket is not None:
        out["bracket"] = {
            "arity": f.bracket.arity,
            "entries": {_key_json(k): _vec_json(f.space, v) for k, v in f.bracket.items()},
        }
    if f.maps:
        out["maps"] = {name: [[format_scalar(x) for x in row] for row in m.rows]
                       for name, m in f.maps.items()}
    if f.twists:
        out["twists"] = list(f.twists)
    if f.traces:
        out["traces"] = {name: _vec_json(f.space, t.coeffs) for name, t in f.traces.items()}
    if f.forms:
        out["forms"] = {name: {"arity": p.arity,
                               "entries": {_key_json(k): format_scalar(v) for k, v in p.items()}}
                        for name, p in f.forms.items()}
    if f.vectors:
        out["vectors"] = {name: _vec_json(f.space, v) for name, v in f.vectors.items()}
    if f.comment:
        out["comment"] = list(f.comment)
    return out


# a JSON array of plain strings, possibly spread over several lines
_FLAT_LIST = re.compile(r'\[\s*("[^"\\\[\]]*"(?:,\s*"[^"\\\[\]]*")*)\s*\]')


def dumps(f: AlgebraFile) -> str:
    text = json.dumps(to_dict(f), indent=2, ensure_ascii=False)
    text = _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s*", ", ", m.group(1)) + "]", text)
    return text + "\n"


def dump(f: AlgebraFile, path) -> None:
    Path(path).write_text(dumps(f), encoding="utf-8")


def needs_polynomial(values) -> bool:
    return any(isinstance(v, Poly) for v in values)

"""JSON formats for complexes and constructs, plus the shipped example files."""

from __future__ import annotations

import json
from typing import Any

from duncehat import delta
from duncehat.construct import Branch, Component, Construct, Gluing, duncehat_construct
from duncehat.lattice import LatticeError, blown_up_plane, custom_lattice


class ParseError(ValueError):
    """Malformed input; ``where`` names the line or key path at fault."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None


def _expect(value, kind, where: str):
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ParseError(where, f"expected {name}, got {type(value).__name__}")
    return value


def _key(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(where, f"missing key {key!r}")
    return obj[key]


# Complexes.

def complex_from_dict(data: Any) -> delta.DeltaComplex2:
    _expect(data, dict, "$")
    vertices = _expect(_key(data, "vertices", "$"), list, "$.vertices")
    for i, v in enumerate(vertices):
        _expect(v, str, f"$.vertices[{i}]")
    edges = {}
    for e, ends in _expect(_key(data, "edges", "$"), dict, "$.edges").items():
        where = f"$.edges.{e}"
        _expect(ends, list, where)
        if len(ends) != 2 or not all(isinstance(x, str) for x in ends):
            raise ParseError(where, "expected [tail, head] vertex names")
        edges[e] = tuple(ends)
    triangles = {}
    for t, sides in _expect(_key(data, "triangles", "$"), dict, "$.triangles").items():
        where = f"$.triangles.{t}"
        _expect(sides, list, where)
        if len(sides) != 3:
            raise ParseError(where, f"expected 3 sides, got {len(sides)}")
        parsed = []
        for k, side in enumerate(sides):
            sw = f"{where}[{k}]"
            _expect(side, list, sw)
            if len(side) != 2 or not isinstance(side[0], str):
                raise ParseError(sw, "expected [edge, flag]")
            if side[1] not in ("+", "-"):
                raise ParseError(sw, f"orientation flag must be '+' or '-', got {side[1]!r}")
            parsed.append((side[0], side[1]))
        triangles[t] = tuple(parsed)
    return delta.DeltaComplex2.build(vertices, edges, triangles)


def complex_to_dict(cx: delta.DeltaComplex2) -> dict:
    return {
        "vertices": list(cx.vertices),
        "edges": {e: list(ends) for e, ends in cx.edges.items()},
        "triangles": {t: [list(s) for s in sides] for t, sides in cx.triangles.items()},
    }


def load_complex(text: str) -> delta.DeltaComplex2:
    return complex_from_dict(_load_json(text))


def dump_complex(cx: delta.DeltaComplex2) -> str:
    return _dump(complex_to_dict(cx))


# Constructs.

def _int_list(value, where: str) -> list[int]:
    _expect(value, list, where)
    for i, x in enumerate(value):
        _expect(x, int, f"{where}[{i}]")
    return value


def _lattice(desc, where: str):
    _expect(desc, dict, where)
    kind = _key(desc, "type", where)
    try:
        if kind == "blown_up_plane":
            return blown_up_plane(_expect(_key(desc, "n", where), int, f"{where}.n"))
        if kind == "gram":
            gram = _expect(_key(desc, "gram", where), list, f"{where}.gram")
            rows = [_int_list(r, f"{where}.gram[{i}]") for i, r in enumerate(gram)]
            canon = desc.get("canonical")
            if canon is not None:
                canon = _int_list(canon, f"{where}.canonical")
            labels = desc.get("labels")
            if labels is not None:
                _expect(labels, list, f"{where}.labels")
                if len(labels) != len(rows) or not all(isinstance(x, str) for x in labels):
                    raise ParseError(f"{where}.labels", "expected one name per basis element")
            return custom_lattice(rows, canon, labels)
    except LatticeError as exc:
        raise ParseError(where, str(exc)) from None
    raise ParseError(f"{where}.type", f"unknown lattice type {kind!r}")


def construct_from_dict(data: Any) -> Construct:
    _expect(data, dict, "$")
    comps = []
    for ci, c in enumerate(_expect(_key(data, "components", "$"), list, "$.components")):
        where = f"$.components[{ci}]"
        _expect(c, dict, where)
        L = _lattice(_key(c, "lattice", where), f"{where}.lattice")
        branches = []
        for bi, b in enumerate(_expect(c.get("branches", []), list, f"{where}.branches")):
            bw = f"{where}.branches[{bi}]"
            _expect(b, dict, bw)
            cls = _int_list(_key(b, "class", bw), f"{bw}.class")
            if len(cls) > L.rank:
                raise ParseError(f"{bw}.class", f"{len(cls)} coefficients for a rank {L.rank} lattice")
            nodes = _expect(b.get("nodes", 0), int, f"{bw}.nodes")
            marks = _expect(b.get("marks", []), list, f"{bw}.marks")
            for k, m in enumerate(marks):
                _expect(m, str, f"{bw}.marks[{k}]")
            branches.append(Branch(L.divisor(*cls), nodes, tuple(marks)))
        comps.append(Component(L, tuple(branches)))

    gluings = []
    for g, gl in enumerate(_expect(data.get("gluings", []), list, "$.gluings")):
        where = f"$.gluings[{g}]"
        _expect(gl, dict, where)
        pair = _expect(_key(gl, "branches", where), list, f"{where}.branches")
        if len(pair) != 2:
            raise ParseError(f"{where}.branches", "expected two [component, branch] references")
        refs = []
        for k, ref in enumerate(pair):
            ref = _int_list(ref, f"{where}.branches[{k}]")
            if len(ref) != 2:
                raise ParseError(f"{where}.branches[{k}]", "expected [component, branch]")
            refs.append(tuple(ref))
        mapping = _expect(gl.get("map", {}), dict, f"{where}.map")
        for a, b in mapping.items():
            _expect(b, str, f"{where}.map.{a}")
        gluings.append(Gluing(refs[0], refs[1], tuple(mapping.items())))

    idents = []
    for i, grp in enumerate(_expect(data.get("identifications", []), list, "$.identifications")):
        where = f"$.identifications[{i}]"
        _expect(grp, list, where)
        marks = []
        for k, m in enumerate(grp):
            mw = f"{where}[{k}]"
            _expect(m, list, mw)
            if len(m) != 3 or not isinstance(m[2], str):
                raise ParseError(mw, "expected [component, branch, label]")
            _expect(m[0], int, f"{mw}[0]")
            _expect(m[1], int, f"{mw}[1]")
            marks.append((m[0], m[1], m[2]))
        idents.append(tuple(marks))
    return Construct(tuple(comps), tuple(gluings), tuple(idents))


def _lattice_to_dict(L) -> dict:
    if L.blowups is not None:
        return {"type": "blown_up_plane", "n": L.blowups}
    return {
        "type": "gram",
        "gram": [list(r) for r in L.gram],
        "canonical": list(L.canonical),
        "labels": list(L.labels),
    }


def construct_to_dict(X: Construct) -> dict:
    return {
        "components": [
            {
                "lattice": _lattice_to_dict(c.lattice),
                "branches": [
                    {"class": list(b.divisor), "nodes": b.nodes, "marks": list(b.marks)}
                    for b in c.branches
                ],
            }
            for c in X.components
        ],
        "gluings": [
            {"branches": [list(g.first), list(g.second)], "map": dict(g.mapping)}
            for g in X.gluings
        ],
        "identifications": [[list(m) for m in grp] for grp in X.identifications],
    }


def load_construct(text: str) -> Construct:
    return construct_from_dict(_load_json(text))


def dump_construct(X: Construct) -> str:
    return _dump(construct_to_dict(X))


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


EXAMPLES = {
    "duncehat-complex": lambda: dump_complex(delta.dunce_hat()),
    "duncehat-construct": lambda: dump_construct(duncehat_construct()),
    "disc": lambda: dump_complex(delta.disc()),
    "torus": lambda: dump_complex(delta.torus()),
}


def example_text(name: str) -> str:
    if name not in EXAMPLES:
        raise KeyError(name)
    return EXAMPLES[name]()

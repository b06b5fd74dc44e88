"""JSON encodings of signatures, structures, morphisms, theories and quantales.

Output is canonical: carriers, edges and map keys are sorted, so equal values
serialize to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .core import EQ, Edge, Morphism, Signature, Structure
from .quantale import DistMatrix, Quantale
from .theory import Formula, Theory


class SchemaError(ValueError):
    pass


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def _edge_from(obj: Any, where: str) -> Edge:
    _expect(
        isinstance(obj, list) and len(obj) == 2 and isinstance(obj[0], str) and isinstance(obj[1], list),
        f"{where}: an edge is [symbol, [args...]], got {obj!r}",
    )
    _expect(all(isinstance(a, str) for a in obj[1]), f"{where}: edge arguments must be strings")
    return Edge(obj[0], tuple(obj[1]))


def _edge_to(e: Edge) -> list:
    return [e.symbol, list(e.args)]


def signature_to_json(sig: Signature) -> dict:
    return {"symbols": dict(sorted(sig.symbols.items()))}


def signature_from_json(obj: Any) -> Signature:
    _expect(isinstance(obj, dict), "signature must be an object")
    symbols = obj.get("symbols", obj)
    _expect(isinstance(symbols, dict), "signature symbols must be an object")
    try:
        return Signature(symbols)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def structure_to_json(X: Structure) -> dict:
    return {"carrier": sorted(X.carrier), "edges": [_edge_to(e) for e in sorted(X.edges)]}


def structure_from_json(obj: Any) -> Structure:
    _expect(isinstance(obj, dict) and "carrier" in obj, "structure must be an object with a carrier")
    carrier = obj["carrier"]
    _expect(isinstance(carrier, list) and all(isinstance(x, str) for x in carrier),
            "carrier must be a list of strings")
    _expect(len(set(carrier)) == len(carrier), "carrier has duplicate elements")
    edges = obj.get("edges", [])
    _expect(isinstance(edges, list), "edges must be a list")
    return Structure(frozenset(carrier), frozenset(_edge_from(e, "structure") for e in edges))


def morphism_to_json(h: Morphism) -> dict:
    return {"map": dict(sorted(h.map.items()))}


def morphism_from_json(obj: Any, dom: Structure, cod: Structure) -> Morphism:
    _expect(isinstance(obj, dict) and isinstance(obj.get("map"), dict), "morphism must be {\"map\": {...}}")
    _expect(all(isinstance(v, str) for v in obj["map"].values()), "morphism values must be strings")
    try:
        return Morphism(dom, cod, obj["map"])
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def formula_to_json(ax: Formula) -> dict:
    return {"premises": [_edge_to(p) for p in ax.premises], "conclusion": _edge_to(ax.conclusion)}


def theory_to_json(T: Theory) -> dict:
    return {
        "signature": dict(sorted(T.signature.symbols.items())),
        "axioms": [formula_to_json(ax) for ax in T.axioms],
    }


def theory_from_json(obj: Any) -> Theory:
    _expect(isinstance(obj, dict), "theory must be an object")
    sig = signature_from_json(obj.get("signature", {}))
    axioms = obj.get("axioms", [])
    _expect(isinstance(axioms, list), "axioms must be a list")
    out = []
    for i, ax in enumerate(axioms):
        _expect(isinstance(ax, dict) and "conclusion" in ax, f"axiom {i} needs a conclusion")
        premises = [_edge_from(p, f"axiom {i}") for p in ax.get("premises", [])]
        _expect(all(p.symbol != EQ for p in premises), f"axiom {i}: '=' may not occur in premises")
        out.append(Formula(tuple(premises), _edge_from(ax["conclusion"], f"axiom {i}")))
    return Theory(sig, tuple(out))


def quantale_to_json(Q: Quantale) -> dict:
    return {
        "elements": list(Q.elements),
        "le": sorted([a, b] for a, b in Q.le),
        "tensor": {f"{a},{b}": v for (a, b), v in sorted(Q.tensor.items())},
        "unit": Q.unit,
    }


def quantale_from_json(obj: Any) -> Quantale:
    _expect(isinstance(obj, dict), "quantale must be an object")
    for key in ("elements", "le", "tensor", "unit"):
        _expect(key in obj, f"quantale is missing {key!r}")
    els = obj["elements"]
    _expect(isinstance(els, list) and all(isinstance(v, str) and "," not in v for v in els),
            "quantale elements must be strings without commas")
    _expect(all(isinstance(p, list) and len(p) == 2 for p in obj["le"]), "le must be a list of pairs")
    tensor = {}
    for key, v in obj["tensor"].items():
        parts = key.split(",")
        _expect(len(parts) == 2, f"tensor key {key!r} must look like 'a,b'")
        tensor[(parts[0], parts[1])] = v
    return Quantale(tuple(els), frozenset(tuple(p) for p in obj["le"]), tensor, obj["unit"])


def distmatrix_to_json(D: DistMatrix) -> dict:
    xs = sorted(D.carrier)
    return {"carrier": xs, "d": {x: {y: D(x, y) for y in xs} for x in xs}}


def distmatrix_from_json(obj: Any) -> DistMatrix:
    _expect(isinstance(obj, dict) and "carrier" in obj and "d" in obj, "matrix needs carrier and d")
    rows = obj["d"]
    _expect(isinstance(rows, dict), "d must be an object of rows")
    d = {}
    for x, row in rows.items():
        _expect(isinstance(row, dict), f"row {x!r} must be an object")
        for y, v in row.items():
            d[(x, y)] = v
    try:
        return DistMatrix(frozenset(obj["carrier"]), d)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def load_file(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON ({exc})") from exc
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from exc

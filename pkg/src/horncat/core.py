"""Relational signatures, edges, finite structures and morphisms.

Elements and relation symbols are opaque strings.  A structure is a finite
carrier together with a set of edges ``(symbol, args)``; everything here is
immutable and every operation is a pure function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple

EQ = "="


class StructureError(ValueError):
    """Raised when a structure, edge or map does not fit its signature."""

    def __init__(self, message: str, edge: "Edge | None" = None):
        super().__init__(message)
        self.edge = edge


class UnknownSymbol(StructureError):
    pass


class ArityMismatch(StructureError):
    pass


class ForeignElement(StructureError):
    pass


class Edge(NamedTuple):
    symbol: str
    args: tuple[str, ...]

    def __str__(self):
        return f"{self.symbol}({', '.join(self.args)})"


def edge(symbol: str, *args: str) -> Edge:
    return Edge(symbol, tuple(args))


@dataclass(frozen=True)
class Signature:
    symbols: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "symbols", dict(self.symbols))
        for name, arity in self.symbols.items():
            if name == EQ:
                raise ValueError("'=' is reserved and cannot be a signature symbol")
            if not isinstance(arity, int) or arity < 1:
                raise ValueError(f"symbol {name!r} must have a positive arity, got {arity!r}")

    def __hash__(self):
        return hash(tuple(sorted(self.symbols.items())))

    def __contains__(self, name):
        return name in self.symbols

    def __iter__(self):
        return iter(sorted(self.symbols))

    def arity(self, name: str) -> int:
        return self.symbols[name]


@dataclass(frozen=True)
class Structure:
    carrier: frozenset[str]
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "carrier", frozenset(self.carrier))
        object.__setattr__(
            self, "edges", frozenset(Edge(e[0], tuple(e[1])) for e in self.edges)
        )

    def holds(self, symbol: str, *args: str) -> bool:
        return Edge(symbol, tuple(args)) in self.edges

    def edges_of(self, symbol: str) -> frozenset[Edge]:
        return frozenset(e for e in self.edges if e.symbol == symbol)

    def __len__(self):
        return len(self.carrier)

    def __str__(self):
        elems = ", ".join(sorted(self.carrier))
        rels = ", ".join(sorted(map(str, self.edges)))
        return f"{{{elems}; {rels}}}"


@dataclass(frozen=True)
class Morphism:
    """A function between carriers, together with its domain and codomain.

    Whether the function is actually a morphism of structures is checked
    separately by :func:`is_pi_morphism`.
    """

    dom: Structure
    cod: Structure
    map: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "map", dict(self.map))
        if set(self.map) != self.dom.carrier:
            missing = sorted(self.dom.carrier - set(self.map))
            extra = sorted(set(self.map) - self.dom.carrier)
            raise ForeignElement(
                f"map must be defined on exactly the domain carrier"
                f" (missing {missing}, extra {extra})"
            )
        bad = sorted(v for v in self.map.values() if v not in self.cod.carrier)
        if bad:
            raise ForeignElement(f"map values {bad} are not in the codomain carrier")

    def __hash__(self):
        return hash((self.dom, self.cod, tuple(sorted(self.map.items()))))

    def __call__(self, x: str) -> str:
        return self.map[x]

    def is_injective(self) -> bool:
        return len(set(self.map.values())) == len(self.map)

    def is_surjective(self) -> bool:
        return set(self.map.values()) == set(self.cod.carrier)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()


def structure(carrier: Iterable[str], edges: Iterable = ()) -> Structure:
    """Build a structure from loose data: edges may be ``(sym, args)`` pairs."""
    return Structure(frozenset(carrier), frozenset(Edge(s, tuple(a)) for s, a in edges))


def validate_edge(sig: Signature, e: Edge, carrier: frozenset[str] | None = None) -> None:
    if e.symbol not in sig:
        raise UnknownSymbol(f"unknown symbol {e.symbol!r} in edge {e}", e)
    if len(e.args) != sig.arity(e.symbol):
        raise ArityMismatch(
            f"edge {e} has {len(e.args)} arguments, {e.symbol!r} has arity {sig.arity(e.symbol)}",
            e,
        )
    if carrier is not None:
        for a in e.args:
            if a not in carrier:
                raise ForeignElement(f"element {a!r} of edge {e} is not in the carrier", e)


def validate_structure(sig: Signature, X: Structure) -> None:
    """Raise a :class:`StructureError` naming the first offending edge, if any."""
    for e in sorted(X.edges):
        validate_edge(sig, e, X.carrier)


def all_edges(sig: Signature, carrier: Iterable[str]) -> frozenset[Edge]:
    """Every edge of ``sig`` over ``carrier`` (the full relation)."""
    carrier = sorted(carrier)
    return frozenset(
        Edge(r, args)
        for r in sig
        for args in itertools.product(carrier, repeat=sig.arity(r))
    )


def full_structure(sig: Signature, carrier: Iterable[str]) -> Structure:
    carrier = frozenset(carrier)
    return Structure(carrier, all_edges(sig, carrier))


def transport_edge(h: Mapping[str, str], e: Edge) -> Edge:
    try:
        return Edge(e.symbol, tuple(h[a] for a in e.args))
    except KeyError as exc:
        raise ForeignElement(f"element {exc.args[0]!r} of edge {e} is outside the map's domain", e)


def transport_edge_set(h: Mapping[str, str], edges: Iterable[Edge]) -> frozenset[Edge]:
    return frozenset(transport_edge(h, e) for e in edges)


def fibers(h: Mapping[str, str]) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for x in sorted(h):
        out.setdefault(h[x], []).append(x)
    return out


def preimage_edge_set(h: Mapping[str, str], edges: Iterable[Edge]) -> frozenset[Edge]:
    """All edges ``e`` over the domain of ``h`` with ``h . e`` in ``edges``.

    Computed fiberwise: the preimage of ``R(y1..yn)`` is the product of the
    fibers over ``y1..yn``.
    """
    fib = fibers(h)
    out = set()
    for e in edges:
        pools = [fib.get(y, ()) for y in e.args]
        out.update(Edge(e.symbol, args) for args in itertools.product(*pools))
    return frozenset(out)


def identity(X: Structure) -> Morphism:
    return Morphism(X, X, {x: x for x in X.carrier})


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g . f``: first ``f``, then ``g``."""
    if f.cod.carrier != g.dom.carrier:
        raise ForeignElement("cannot compose: codomain of f is not the domain of g")
    return Morphism(f.dom, g.cod, {x: g.map[y] for x, y in f.map.items()})


def is_pi_morphism(sig: Signature, h: Morphism) -> bool:
    validate_structure(sig, h.dom)
    validate_structure(sig, h.cod)
    return transport_edge_set(h.map, h.dom.edges) <= h.cod.edges


def reflects_relations(sig: Signature, h: Morphism) -> bool:
    """True iff every edge of the codomain pulled back along ``h`` is a domain edge."""
    validate_structure(sig, h.dom)
    validate_structure(sig, h.cod)
    return preimage_edge_set(h.map, h.cod.edges) <= h.dom.edges


def functions(dom: Iterable[str], cod: Iterable[str]) -> Iterator[dict[str, str]]:
    """All total functions ``dom -> cod`` as dicts, in lexicographic order."""
    dom, cod = sorted(dom), sorted(cod)
    for values in itertools.product(cod, repeat=len(dom)):
        yield dict(zip(dom, values))


def tuple_name(parts: Iterable[str]) -> str:
    """Injective rendering of a tuple of element names as ``"(a,b,...)"``."""

    def esc(s: str) -> str:
        return (
            s.replace("\\", "\\\\").replace(",", "\\,").replace("(", "\\(").replace(")", "\\)")
        )

    return "(" + ",".join(esc(p) for p in parts) + ")"


def tagged_name(index: int, x: str) -> str:
    return f"{index}.{x}"

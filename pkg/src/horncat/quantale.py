"""Finite commutative unital quantales and the theories they generate.

A quantale ``V`` generates a signature with one binary symbol ``~v`` per
element ``v`` other than the bottom element.  ``X |= x ~v y`` reads
"the distance from x to y is at least v".  The bottom symbol is left out on
purpose: it would hold of every pair, and its premise-free axiom
``=> x ~bot y`` has two variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import EQ, Edge, Signature, Structure
from .theory import Formula, NotAModel, Theory, is_model


class QuantaleError(ValueError):
    pass


class TrivialUnit(QuantaleError):
    pass


class NotVCat(ValueError):
    pass


@dataclass(frozen=True)
class Quantale:
    elements: tuple[str, ...]
    le: frozenset[tuple[str, str]]
    tensor: Mapping[tuple[str, str], str]
    unit: str
    _joins: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "le", frozenset(tuple(p) for p in self.le))
        object.__setattr__(self, "tensor", {tuple(k): v for k, v in dict(self.tensor).items()})

    def __hash__(self):
        return hash((self.elements, self.le, tuple(sorted(self.tensor.items())), self.unit))

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.le

    def mul(self, a: str, b: str) -> str:
        return self.tensor[(a, b)]

    def join(self, a: str, b: str) -> str | None:
        key = (a, b) if a <= b else (b, a)
        if key not in self._joins:
            uppers = [u for u in self.elements if self.leq(a, u) and self.leq(b, u)]
            least = [u for u in uppers if all(self.leq(u, w) for w in uppers)]
            self._joins[key] = least[0] if len(least) == 1 else None
        return self._joins[key]

    @property
    def bottom(self) -> str | None:
        least = [b for b in self.elements if all(self.leq(b, v) for v in self.elements)]
        return least[0] if len(least) == 1 else None

    @property
    def top(self) -> str | None:
        great = [t for t in self.elements if all(self.leq(v, t) for v in self.elements)]
        return great[0] if len(great) == 1 else None

    def join_all(self, values: Iterable[str]) -> str:
        out = self.bottom
        for v in values:
            out = self.join(out, v)
        return out

    def positive(self) -> list[str]:
        """Elements strictly above bottom, in declaration order."""
        bot = self.bottom
        return [v for v in self.elements if v != bot]


# -- stock quantales ---------------------------------------------------------


def _order_from(elements, leq) -> frozenset:
    return frozenset((a, b) for a in elements for b in elements if leq(a, b))


def boolean_chain() -> Quantale:
    """``{bot < top}`` with meet as tensor and ``top`` as unit."""
    els = ("bot", "top")
    rank = {"bot": 0, "top": 1}
    return Quantale(
        els,
        _order_from(els, lambda a, b: rank[a] <= rank[b]),
        {(a, b): els[min(rank[a], rank[b])] for a in els for b in els},
        "top",
    )


def capped_chain(cap: int) -> Quantale:
    """``{0, ..., cap}`` ordered by ``>=``, truncated addition, unit ``0``.

    A finite stand-in for the Lawvere quantale: ``0`` is top, ``cap`` is bottom.
    """
    els = tuple(str(i) for i in range(cap + 1))
    return Quantale(
        els,
        _order_from(els, lambda a, b: int(a) >= int(b)),
        {(a, b): str(min(int(a) + int(b), cap)) for a in els for b in els},
        "0",
    )


def trivial_quantale() -> Quantale:
    return Quantale(("*",), frozenset({("*", "*")}), {("*", "*"): "*"}, "*")


# -- law checking ------------------------------------------------------------


@dataclass(frozen=True)
class LawViolation:
    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law} fails at {self.witness}"


def validate_quantale(Q: Quantale) -> list[LawViolation]:
    """Exhaustively check lattice, monoid and distributivity laws.

    An empty list means ``Q`` is a commutative unital quantale.  Order and
    lattice failures are reported without going on to the algebraic laws.
    """
    out: list[LawViolation] = []
    els = Q.elements
    if len(set(els)) != len(els) or not els:
        return [LawViolation("elements", tuple(els))]
    for a, b in Q.le:
        if a not in els or b not in els:
            out.append(LawViolation("order-domain", (a, b)))
    for a in els:
        if not Q.leq(a, a):
            out.append(LawViolation("reflexivity", (a,)))
    for a, b in itertools.product(els, repeat=2):
        if a != b and Q.leq(a, b) and Q.leq(b, a):
            out.append(LawViolation("antisymmetry", (a, b)))
    for a, b, c in itertools.product(els, repeat=3):
        if Q.leq(a, b) and Q.leq(b, c) and not Q.leq(a, c):
            out.append(LawViolation("transitivity", (a, b, c)))
    if out:
        return out
    if Q.bottom is None:
        out.append(LawViolation("bottom", ()))
    for a, b in itertools.combinations(els, 2):
        if Q.join(a, b) is None:
            out.append(LawViolation("join", (a, b)))
    if Q.unit not in els:
        out.append(LawViolation("unit-element", (Q.unit,)))
    for a, b in itertools.product(els, repeat=2):
        if Q.tensor.get((a, b)) not in els:
            out.append(LawViolation("tensor-total", (a, b)))
    if out:
        return out

    for a, b in itertools.combinations(els, 2):
        if Q.mul(a, b) != Q.mul(b, a):
            out.append(LawViolation("commutativity", (a, b)))
    for a, b, c in itertools.product(els, repeat=3):
        if Q.mul(Q.mul(a, b), c) != Q.mul(a, Q.mul(b, c)):
            out.append(LawViolation("associativity", (a, b, c)))
    for a in els:
        if Q.mul(Q.unit, a) != a or Q.mul(a, Q.unit) != a:
            out.append(LawViolation("unit", (a,)))
    for r in range(len(els) + 1):
        for subset in itertools.combinations(els, r):
            joined = Q.join_all(subset)
            for a in els:
                if Q.mul(a, joined) != Q.join_all(Q.mul(a, s) for s in subset):
                    out.append(LawViolation("distributivity-left", (a, subset)))
                if Q.mul(joined, a) != Q.join_all(Q.mul(s, a) for s in subset):
                    out.append(LawViolation("distributivity-right", (a, subset)))
    return out


# -- generated theories ------------------------------------------------------

FLAVORS = ("vcat", "pmet", "met")


def symbol(v: str) -> str:
    return f"~{v}"


def value_of(sym: str) -> str:
    return sym[1:]


def quantale_signature(Q: Quantale) -> Signature:
    return Signature({symbol(v): 2 for v in Q.positive()})


def gen_theory(Q: Quantale, flavor: str = "vcat") -> Theory:
    """Axioms presenting V-categories (``vcat``), symmetric pseudo-V-metric
    spaces (``pmet``) or V-metric spaces (``met``) as models.

    Tautologies (a conclusion that is one of the premises) are not emitted,
    and joins are instantiated pairwise.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
    bot, k = Q.bottom, Q.unit
    if flavor == "met" and k == bot:
        raise TrivialUnit("the met flavor needs a unit above bottom")
    pos = Q.positive()

    def rel(v, a, b):
        return Edge(symbol(v), (a, b))

    axioms: list[Formula] = []
    if k != bot:
        axioms.append(Formula((), rel(k, "x", "x")))
    for v, w in itertools.product(pos, repeat=2):
        t = Q.mul(v, w)
        if t != bot:
            axioms.append(Formula((rel(v, "x", "y"), rel(w, "y", "z")), rel(t, "x", "z")))
    for v, w in itertools.product(pos, repeat=2):
        if v != w and Q.leq(w, v):
            axioms.append(Formula((rel(v, "x", "y"),), rel(w, "x", "y")))
    for v, w in itertools.combinations(pos, 2):
        j = Q.join(v, w)
        if j not in (v, w):
            axioms.append(Formula((rel(v, "x", "y"), rel(w, "x", "y")), rel(j, "x", "y")))
    if flavor in ("pmet", "met"):
        for v in pos:
            axioms.append(Formula((rel(v, "x", "y"),), rel(v, "y", "x")))
    if flavor == "met":
        axioms.append(Formula((rel(k, "x", "y"),), Edge(EQ, ("x", "y"))))
    return Theory(quantale_signature(Q), tuple(axioms))


# -- distance matrices -------------------------------------------------------


@dataclass(frozen=True)
class DistMatrix:
    carrier: frozenset[str]
    d: Mapping[tuple[str, str], str]

    def __post_init__(self):
        object.__setattr__(self, "carrier", frozenset(self.carrier))
        object.__setattr__(self, "d", {tuple(k): v for k, v in dict(self.d).items()})
        missing = [(x, y) for x in self.carrier for y in self.carrier if (x, y) not in self.d]
        if missing:
            raise ValueError(f"distance matrix is missing entries {sorted(missing)[:3]}")

    def __hash__(self):
        return hash((self.carrier, tuple(sorted(self.d.items()))))

    def __call__(self, x: str, y: str) -> str:
        return self.d[(x, y)]


def vcat_violations(Q: Quantale, D: DistMatrix) -> list[str]:
    out = []
    for x in sorted(D.carrier):
        if not Q.leq(Q.unit, D(x, x)):
            out.append(f"d({x},{x}) is not above the unit")
    for x, y, z in itertools.product(sorted(D.carrier), repeat=3):
        if not Q.leq(Q.mul(D(x, y), D(y, z)), D(x, z)):
            out.append(f"d({x},{z}) is below d({x},{y}) * d({y},{z})")
    return out


def is_vcat(Q: Quantale, D: DistMatrix) -> bool:
    return not vcat_violations(Q, D)


def is_symmetric(D: DistMatrix) -> bool:
    return all(D(x, y) == D(y, x) for x in D.carrier for y in D.carrier)


def is_separated(Q: Quantale, D: DistMatrix) -> bool:
    return all(x == y for x in D.carrier for y in D.carrier if Q.leq(Q.unit, D(x, y)))


def is_contraction(Q: Quantale, h: Mapping[str, str], DX: DistMatrix, DY: DistMatrix) -> bool:
    return all(Q.leq(DX(x, y), DY(h[x], h[y])) for x in DX.carrier for y in DX.carrier)


def to_distance(Q: Quantale, X: Structure) -> DistMatrix:
    """``d(x, y)`` is the join of every ``v`` with ``x ~v y`` in ``X``."""
    if not is_model(gen_theory(Q, "vcat"), X):
        raise NotAModel("structure is not a model of the generated V-category theory")
    found: dict[tuple[str, str], list[str]] = {}
    for e in X.edges:
        found.setdefault(e.args, []).append(value_of(e.symbol))
    d = {(x, y): Q.join_all(found.get((x, y), ())) for x in X.carrier for y in X.carrier}
    return DistMatrix(X.carrier, d)


def from_distance(Q: Quantale, D: DistMatrix) -> Structure:
    """``x ~v y`` holds iff ``d(x, y) >= v`` (for ``v`` above bottom)."""
    bad = vcat_violations(Q, D)
    if bad:
        raise NotVCat("; ".join(bad[:3]))
    edges = frozenset(
        Edge(symbol(v), (x, y))
        for (x, y), dist in D.d.items()
        for v in Q.positive()
        if Q.leq(v, dist)
    )
    return Structure(D.carrier, edges)


# -- built-in theories -------------------------------------------------------


def preord_theory(le: str = "le") -> Theory:
    return Theory(
        Signature({le: 2}),
        (
            Formula((), Edge(le, ("x", "x"))),
            Formula((Edge(le, ("x", "y")), Edge(le, ("y", "z"))), Edge(le, ("x", "z"))),
        ),
    )


def pos_theory(le: str = "le") -> Theory:
    pre = preord_theory(le)
    anti = Formula((Edge(le, ("x", "y")), Edge(le, ("y", "x"))), Edge(EQ, ("x", "y")))
    return Theory(pre.signature, pre.axioms + (anti,))


def empty_theory(sig: Signature) -> Theory:
    return Theory(sig, ())


def builtin_theories(sig: Signature | None = None) -> dict[str, Theory]:
    """``preord``, ``pos`` and ``str`` (no axioms, over ``sig`` or ``{le: 2}``)."""
    return {
        "preord": preord_theory(),
        "pos": pos_theory(),
        "str": empty_theory(sig if sig is not None else Signature({"le": 2})),
    }

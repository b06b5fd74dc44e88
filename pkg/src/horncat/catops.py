"""Initial and final lifts, finite limits and colimits of models.

Limits are initial lifts of the limit in Set, colimits are final lifts of the
colimit in Set.  Carriers of computed objects use fixed element names:
``"(a,b)"`` for tuples (see :func:`horncat.core.tuple_name`) and ``"i.x"``
for the ``i``-th summand of a coproduct.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import (
    Morphism,
    Structure,
    all_edges,
    compose,
    functions,
    is_pi_morphism,
    preimage_edge_set,
    reflects_relations,
    tagged_name,
    transport_edge_set,
    tuple_name,
)
from .saturate import closure, is_T_relation, reflect_with_equality, require_no_equality
from .theory import NotAModel, Theory, check_variable_condition, is_model, strip_equality
from .unionfind import UnionFind


class VariableConditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class Source:
    apex: Structure
    legs: tuple[Morphism, ...]


@dataclass(frozen=True)
class Sink:
    apex: Structure
    legs: tuple[Morphism, ...]


@dataclass(frozen=True)
class CoproductResult:
    object: Structure
    insertions: tuple[Morphism, ...]


@dataclass(frozen=True)
class PullbackResult:
    object: Structure
    proj_left: Morphism
    proj_right: Morphism


@dataclass(frozen=True)
class LimitResult:
    object: Structure
    legs: tuple[Morphism, ...]


# -- lifts -------------------------------------------------------------------


def initial_lift(
    T: Theory, carrier: Iterable[str], legs: Sequence[tuple[Mapping[str, str], Structure]]
) -> Structure:
    """Structure on ``carrier`` with exactly the tuples every leg sends to an edge.

    ``legs`` are ``(function, target)`` pairs.
    """
    require_no_equality(T)
    carrier = frozenset(carrier)
    edges = all_edges(T.signature, carrier)
    for h, target in legs:
        edges = edges & preimage_edge_set(h, target.edges)
    return Structure(carrier, edges)


def final_lift(
    T: Theory, carrier: Iterable[str], legs: Sequence[tuple[Structure, Mapping[str, str]]]
) -> Structure:
    """Structure on ``carrier`` generated by the images of all legs.

    ``legs`` are ``(source, function)`` pairs.
    """
    require_no_equality(T)
    carrier = frozenset(carrier)
    image = set()
    for source, h in legs:
        image |= transport_edge_set(h, source.edges)
    return Structure(carrier, closure(T, carrier, image))


def is_initial_source(T: Theory, src: Source) -> bool:
    require_no_equality(T)
    if not all(is_pi_morphism(T.signature, h) for h in src.legs):
        return False
    lifted = initial_lift(T, src.apex.carrier, [(h.map, h.cod) for h in src.legs])
    return lifted.edges == src.apex.edges


def is_final_sink(T: Theory, snk: Sink) -> bool:
    require_no_equality(T)
    if not all(is_pi_morphism(T.signature, h) for h in snk.legs):
        return False
    lifted = final_lift(T, snk.apex.carrier, [(h.dom, h.map) for h in snk.legs])
    return lifted.edges == snk.apex.edges


def is_embedding(T: Theory, h: Morphism) -> bool:
    require_no_equality(T)
    return is_pi_morphism(T.signature, h) and h.is_injective() and reflects_relations(T.signature, h)


def is_quotient(T: Theory, h: Morphism) -> bool:
    require_no_equality(T)
    if not (is_pi_morphism(T.signature, h) and h.is_surjective()):
        return False
    return closure(T, h.cod.carrier, transport_edge_set(h.map, h.dom.edges)) == h.cod.edges


def is_isomorphism(T: Theory, h: Morphism) -> bool:
    """Bijective embedding (equivalently, bijective quotient)."""
    return h.is_bijective() and is_embedding(strip_equality(T), h)


# -- limits ------------------------------------------------------------------


def product(T: Theory, factors: Sequence[Structure]) -> LimitResult:
    """Product with projections; the empty product is the one-point full model."""
    require_no_equality(T)
    tuples = list(itertools.product(*(sorted(X.carrier) for X in factors)))
    names = {t: tuple_name(t) for t in tuples}
    carrier = frozenset(names.values())
    maps = [{names[t]: t[i] for t in tuples} for i in range(len(factors))]
    obj = initial_lift(T, carrier, [(m, X) for m, X in zip(maps, factors)])
    return LimitResult(obj, tuple(Morphism(obj, X, m) for m, X in zip(maps, factors)))


def equalizer(T: Theory, f: Morphism, g: Morphism) -> LimitResult:
    require_no_equality(T)
    if f.dom != g.dom or f.cod != g.cod:
        raise ValueError("equalizer needs parallel morphisms")
    carrier = frozenset(x for x in f.dom.carrier if f(x) == g(x))
    inc = {x: x for x in carrier}
    obj = initial_lift(T, carrier, [(inc, f.dom)])
    return LimitResult(obj, (Morphism(obj, f.dom, inc),))


def pullback(T: Theory, f: Morphism, g: Morphism) -> PullbackResult:
    require_no_equality(T)
    if f.cod != g.cod:
        raise ValueError("pullback needs a common codomain")
    pairs = [(a, b) for a in sorted(f.dom.carrier) for b in sorted(g.dom.carrier) if f(a) == g(b)]
    names = {p: tuple_name(p) for p in pairs}
    left = {names[p]: p[0] for p in pairs}
    right = {names[p]: p[1] for p in pairs}
    obj = initial_lift(T, names.values(), [(left, f.dom), (right, g.dom)])
    return PullbackResult(obj, Morphism(obj, f.dom, left), Morphism(obj, g.dom, right))


# -- colimits ----------------------------------------------------------------


def disjoint_union(family: Sequence[Structure]) -> CoproductResult:
    """Tagged disjoint union with the plain union of transported edges."""
    maps = [{x: tagged_name(i, x) for x in X.carrier} for i, X in enumerate(family)]
    carrier = frozenset(v for m in maps for v in m.values())
    edges = frozenset().union(*(transport_edge_set(m, X.edges) for m, X in zip(maps, family)))
    obj = Structure(carrier, edges)
    return CoproductResult(obj, tuple(Morphism(X, obj, m) for m, X in zip(maps, family)))


def coproduct(T: Theory, family: Sequence[Structure], *, strict: bool = True) -> CoproductResult:
    """Coproduct of models of ``T``.

    With ``strict`` the theory must pass the variable condition, the plain
    union of summand edges is used, and it is asserted to be closed (and a
    model of ``T`` when ``T`` has equality).  Without ``strict`` the general
    final lift is taken, followed by a reflection when ``T`` has equality.
    """
    base = strip_equality(T)
    union = disjoint_union(family)
    if strict:
        violations = check_variable_condition(T)
        if violations:
            raise VariableConditionViolated("; ".join(map(str, violations)))
        if not is_T_relation(base, union.object.carrier, union.object.edges):
            raise NotAModel("union of summand edges is not closed under the theory")
        if T.uses_equality and not is_model(T, union.object):
            raise NotAModel("coproduct of models fails an equality axiom")
        return union

    lifted = final_lift(base, union.object.carrier, [(X, s.map) for X, s in zip(family, union.insertions)])
    insertions = tuple(Morphism(X, lifted, s.map) for X, s in zip(family, union.insertions))
    if not T.uses_equality:
        return CoproductResult(lifted, insertions)
    refl = reflect_with_equality(T, lifted)
    return CoproductResult(refl.model, tuple(compose(refl.quotient, s) for s in insertions))


def coequalizer(T: Theory, f: Morphism, g: Morphism) -> Morphism:
    """Quotient ``Y -> Q`` of the codomain identifying ``f(x)`` with ``g(x)``.

    Classes are named by their least element.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise ValueError("coequalizer needs parallel morphisms")
    Y = f.cod
    uf = UnionFind(sorted(Y.carrier))
    for x in sorted(f.dom.carrier):
        uf.union(f(x), g(x))
    q = uf.mapping()
    base = strip_equality(T)
    Q = final_lift(base, set(q.values()), [(Y, q)])
    quotient = Morphism(Y, Q, q)
    if not T.uses_equality:
        return quotient
    refl = reflect_with_equality(T, Q)
    return compose(refl.quotient, quotient)


# -- bounded definitional checks ---------------------------------------------


def enumerate_models(T: Theory, bound: int, prefix: str = "y") -> list[Structure]:
    """Every model of ``T`` on the carriers ``{y0..y(k-1)}`` for ``k <= bound``."""
    out = []
    for k in range(bound + 1):
        carrier = [f"{prefix}{i}" for i in range(k)]
        universe = sorted(all_edges(T.signature, carrier))
        for mask in range(1 << len(universe)):
            X = Structure(frozenset(carrier), frozenset(e for j, e in enumerate(universe) if mask >> j & 1))
            if is_model(T, X):
                out.append(X)
    return out


def _lifts(dom: Structure, cod: Structure, h: Mapping[str, str]) -> bool:
    return transport_edge_set(h, dom.edges) <= cod.edges


def definitionally_initial(T: Theory, src: Source, test_objects: Sequence[Structure]) -> bool:
    """Initiality quantified over the given test objects and all functions into the apex."""
    for Y in test_objects:
        for h in functions(Y.carrier, src.apex.carrier):
            direct = _lifts(Y, src.apex, h)
            via_legs = all(_lifts(Y, leg.cod, {y: leg(h[y]) for y in h}) for leg in src.legs)
            if direct != via_legs:
                return False
    return True


def definitionally_final(T: Theory, snk: Sink, test_objects: Sequence[Structure]) -> bool:
    for Y in test_objects:
        for h in functions(snk.apex.carrier, Y.carrier):
            direct = _lifts(snk.apex, Y, h)
            via_legs = all(_lifts(leg.dom, Y, {x: h[leg(x)] for x in leg.dom.carrier}) for leg in snk.legs)
            if direct != via_legs:
                return False
    return True


def homs(T: Theory, A: Structure, X: Structure) -> list[Morphism]:
    return [Morphism(A, X, h) for h in functions(A.carrier, X.carrier) if _lifts(A, X, h)]


def pullback_universal(T: Theory, pb: PullbackResult, f: Morphism, g: Morphism, test_objects) -> bool:
    """Every commuting cone from a test object factors uniquely through the pullback."""
    A, B = f.dom, g.dom
    for Y in test_objects:
        for p in homs(T, Y, A):
            for q in homs(T, Y, B):
                if any(f(p(y)) != g(q(y)) for y in Y.carrier):
                    continue
                mediators = [
                    u for u in homs(T, Y, pb.object)
                    if all(pb.proj_left(u(y)) == p(y) and pb.proj_right(u(y)) == q(y) for y in Y.carrier)
                ]
                if len(mediators) != 1:
                    return False
    return True


def coproduct_universal(T: Theory, cop: CoproductResult, test_objects) -> bool:
    """Every cocone into a test object has exactly one mediating morphism."""
    family = [s.dom for s in cop.insertions]
    for Z in test_objects:
        for cocone in itertools.product(*(homs(T, X, Z) for X in family)):
            mediators = [
                u for u in homs(T, cop.object, Z)
                if all(u(s(x)) == h(x) for s, h in zip(cop.insertions, cocone) for x in s.dom.carrier)
            ]
            if len(mediators) != 1:
                return False
    return True


def coequalizer_universal(T: Theory, q: Morphism, f: Morphism, g: Morphism, test_objects) -> bool:
    for Z in test_objects:
        for k in homs(T, f.cod, Z):
            if any(k(f(x)) != k(g(x)) for x in f.dom.carrier):
                continue
            mediators = [u for u in homs(T, q.cod, Z) if all(u(q(y)) == k(y) for y in f.cod.carrier)]
            if len(mediators) != 1:
                return False
    return True


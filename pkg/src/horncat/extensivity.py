"""Instance-level checks that coproducts are universal and disjoint,
that products distribute over them, and the connected-object apparatus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .catops import (
    CoproductResult,
    Sink,
    coproduct,
    disjoint_union,
    homs,
    is_final_sink,
    is_isomorphism,
    product,
    pullback,
)
from .core import Edge, Morphism, Structure, UnknownSymbol, is_pi_morphism, transport_edge_set
from .saturate import closure, free_model, reflect_with_equality
from .serialize import morphism_from_json, morphism_to_json, structure_from_json, structure_to_json
from .theory import Theory, check_variable_condition, strip_equality


@dataclass
class ExtensivityReport:
    universality_ok: bool = True
    disjointness_ok: bool = True
    witnesses: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.universality_ok and self.disjointness_ok

    def merge(self, other: "ExtensivityReport") -> "ExtensivityReport":
        return ExtensivityReport(
            self.universality_ok and other.universality_ok,
            self.disjointness_ok and other.disjointness_ok,
            self.witnesses + other.witnesses,
        )

    def as_json(self) -> dict:
        return {
            "universality_ok": self.universality_ok,
            "disjointness_ok": self.disjointness_ok,
            "witnesses": self.witnesses,
        }


def _coproduct(T: Theory, family: Sequence[Structure]) -> CoproductResult:
    # the final lift is the coproduct for any theory; the plain union only
    # under the variable condition
    return coproduct(T, family, strict=not check_variable_condition(T))


def union_closure_gap(T: Theory, family: Sequence[Structure]) -> frozenset[Edge]:
    """Edges derivable from the plain disjoint union but missing from it."""
    union = disjoint_union(family).object
    return closure(strip_equality(T), union.carrier, union.edges) - union.edges


def check_coproduct_edge_formula(T: Theory, family: Sequence[Structure]) -> bool:
    return not union_closure_gap(T, family)


def check_universality(T: Theory, family: Sequence[Structure], f: Morphism) -> ExtensivityReport:
    """Pull ``f: Y -> coproduct`` back along every insertion and check the
    pulled-back maps ``P_i -> Y`` form a coproduct of ``Y``.
    """
    base = strip_equality(T)
    cop = _coproduct(T, family)
    if f.cod != cop.object:
        raise ValueError("f must land in the coproduct of the family")
    Y = f.dom
    report = ExtensivityReport()

    def fail(reason, **extra):
        report.universality_ok = False
        report.witnesses.append({
            "check": "universality",
            "reason": reason,
            "domain": structure_to_json(Y),
            "morphism": morphism_to_json(f),
            **extra,
        })

    if not is_pi_morphism(T.signature, f):
        fail("f is not a morphism")
        return report

    pbs = [pullback(base, s, f) for s in cop.insertions]
    legs = [pb.proj_right for pb in pbs]
    owner: dict[str, int] = {}
    for i, t in enumerate(legs):
        for p in sorted(t.dom.carrier):
            y = t(p)
            if y in owner:
                fail("pulled-back images overlap", element=y, summands=[owner[y], i])
                return report
            owner[y] = i
    if set(owner) != set(Y.carrier):
        fail("pulled-back images do not cover Y", missing=sorted(Y.carrier - set(owner)))
        return report

    image = frozenset().union(*(transport_edge_set(t.map, t.dom.edges) for t in legs))
    if image != Y.edges:
        missing = sorted(Y.edges - image)
        fail("edges of Y are not the union of pulled-back edges", missing=[[e.symbol, list(e.args)] for e in missing])

    inner = _coproduct(T, [pb.object for pb in pbs])
    comparison = {}
    for ins, t in zip(inner.insertions, legs):
        for p in ins.dom.carrier:
            comparison[ins(p)] = t(p)
    c = Morphism(inner.object, Y, comparison)
    if not (is_pi_morphism(T.signature, c) and is_isomorphism(T, c)):
        fail("comparison map from the coproduct of pullbacks is not an isomorphism",
             comparison=morphism_to_json(c))
    return report


def check_disjointness(T: Theory, family: Sequence[Structure]) -> bool:
    return disjointness_report(T, family).disjointness_ok


def disjointness_report(T: Theory, family: Sequence[Structure]) -> ExtensivityReport:
    base = strip_equality(T)
    cop = _coproduct(T, family)
    report = ExtensivityReport()
    for i, si in enumerate(cop.insertions):
        for j, sj in enumerate(cop.insertions):
            if i >= j:
                continue
            pb = pullback(base, si, sj)
            if pb.object.carrier:
                report.disjointness_ok = False
                report.witnesses.append({
                    "check": "disjointness",
                    "summands": [i, j],
                    "pullback": structure_to_json(pb.object),
                })
    return report


def check_extensivity(T: Theory, family: Sequence[Structure], maps: Sequence[Morphism] = ()) -> ExtensivityReport:
    report = disjointness_report(T, family)
    for f in maps:
        report = report.merge(check_universality(T, family, f))
    return report


def replay_witness(T: Theory, family: Sequence[Structure], witness: dict) -> bool:
    """Re-run the check a witness came from; True if it still fails."""
    if witness["check"] == "disjointness":
        i, j = witness["summands"]
        cop = _coproduct(T, family)
        return bool(pullback(strip_equality(T), cop.insertions[i], cop.insertions[j]).object.carrier)
    Y = structure_from_json(witness["domain"])
    f = morphism_from_json(witness["morphism"], Y, _coproduct(T, family).object)
    return not check_universality(T, family, f).universality_ok


def canonical_distributor(T: Theory, X: Structure, family: Sequence[Structure]) -> Morphism:
    """The comparison ``sum_i (X x Y_i) -> X x (sum_i Y_i)``."""
    base = strip_equality(T)
    prods = [product(base, [X, Y]) for Y in family]
    lhs = coproduct(T, [p.object for p in prods])
    cop = coproduct(T, family)
    rhs = product(base, [X, cop.object])
    by_pair = {(rhs.legs[0](r), rhs.legs[1](r)): r for r in rhs.object.carrier}
    m = {}
    for i, (p, ins) in enumerate(zip(prods, lhs.insertions)):
        for e in p.object.carrier:
            m[ins(e)] = by_pair[(p.legs[0](e), cop.insertions[i](p.legs[1](e)))]
    return Morphism(lhs.object, rhs.object, m)


def check_distributivity(T: Theory, X: Structure, family: Sequence[Structure]) -> bool:
    canon = canonical_distributor(T, X, family)
    return is_pi_morphism(T.signature, canon) and is_isomorphism(T, canon)


def representing_object(T: Theory, R: str) -> Structure:
    """The free model on a single ``R``-edge ``R(1, ..., n)``."""
    if R not in T.signature:
        raise UnknownSymbol(f"{R!r} is not in the signature")
    n = T.signature.arity(R)
    names = tuple(str(i) for i in range(1, n + 1))
    X = Structure(frozenset(names), frozenset({Edge(R, names)}))
    if T.uses_equality:
        return reflect_with_equality(T, X).model
    return free_model(T, X)


def hom_set(T: Theory, A: Structure, X: Structure) -> list[Morphism]:
    return homs(T, A, X)


def hom_count(T: Theory, A: Structure, X: Structure) -> int:
    return len(homs(T, A, X))


def check_connected(T: Theory, A: Structure, family: Sequence[Structure]) -> bool:
    """Does ``hom(A, -)`` send this coproduct to a disjoint union of hom-sets?"""
    cop = coproduct(T, family)
    into = homs(T, A, cop.object)
    if len(into) != sum(hom_count(T, A, X) for X in family):
        return False
    for h in into:
        through = 0
        for X, s in zip(family, cop.insertions):
            back = {v: x for x, v in s.map.items()}
            if all(h(a) in back for a in A.carrier):
                g = {a: back[h(a)] for a in A.carrier}
                if transport_edge_set(g, A.edges) <= X.edges:
                    through += 1
        if through != 1:
            return False
    return True


def final_density_sink(T: Theory, X: Structure) -> tuple[Sink, bool]:
    """One leg ``R_T -> X`` per edge of ``X``; returns the sink and whether it is final."""
    base = strip_equality(T)
    legs = []
    for e in sorted(X.edges):
        rep = representing_object(base, e.symbol)
        legs.append(Morphism(rep, X, {str(k + 1): a for k, a in enumerate(e.args)}))
    sink = Sink(X, tuple(legs))
    return sink, is_final_sink(base, sink)

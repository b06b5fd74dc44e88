"""Closure of edge sets under a Horn theory, free models and reflections.

:func:`closure` is semi-naive: after the first round, an axiom is only
matched with at least one premise drawn from the edges derived in the
previous round.  :func:`naive_closure` re-matches everything against the
whole edge set every round and is kept as an oracle for tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ._match import EdgeIndex, compile_plan, extend_free, instantiate, run_plan, unify
from .core import Edge, Morphism, Structure, transport_edge_set
from .theory import (
    Theory,
    equality_axioms,
    is_model,
    premise_valuations,
    strip_equality,
    vars_of,
    vars_of_set,
)
from .unionfind import UnionFind


class EqualityAxiomPresent(ValueError):
    pass


def require_no_equality(T: Theory) -> None:
    for i, ax in enumerate(T.axioms):
        if ax.uses_equality:
            raise EqualityAxiomPresent(f"axiom {i} ({ax}) concludes an equality; strip it first")


@dataclass(frozen=True)
class Derivation:
    round: int
    axiom: int
    valuation: tuple[tuple[str, str], ...]
    edge: Edge

    def as_json(self):
        return {
            "round": self.round,
            "axiom": self.axiom,
            "valuation": dict(self.valuation),
            "edge": [self.edge.symbol, list(self.edge.args)],
        }


@dataclass
class SaturationTrace:
    rounds: list[Derivation] = field(default_factory=list)
    final_edges: frozenset[Edge] = frozenset()


def _axiom_plans(T: Theory):
    """Per axiom: one (pivot premise, plan for the rest, free variables) per premise."""
    plans = []
    for ax in T.axioms:
        free_all = sorted(vars_of(ax.conclusion) - vars_of_set(ax.premises))
        entries = []
        for k, pivot in enumerate(ax.premises):
            rest = ax.premises[:k] + ax.premises[k + 1:]
            entries.append((pivot, compile_plan(rest, pivot.args)))
        plans.append((entries, free_all))
    return plans


def closure(T: Theory, carrier: Iterable[str], edges: Iterable[Edge], *, trace: bool = False):
    """The least edge set containing ``edges`` that is closed under ``T``.

    Returns a frozenset, or ``(frozenset, SaturationTrace)`` when ``trace``.
    """
    require_no_equality(T)
    carrier = sorted(carrier)
    seed = sorted(Edge(e[0], tuple(e[1])) for e in edges)
    index = EdgeIndex(seed)
    log = SaturationTrace() if trace else None
    plans = _axiom_plans(T)

    delta: dict[str, list[tuple]] = {}
    for e in seed:
        delta.setdefault(e.symbol, []).append(e.args)
    rnd = 0
    while True:
        pending: dict[Edge, None] = {}

        def emit(i, val, ax):
            c = instantiate(ax.conclusion, val)
            if c not in index and c not in pending:
                pending[c] = None
                if log is not None:
                    log.rounds.append(Derivation(rnd, i, tuple(sorted(val.items())), c))

        for i, ax in enumerate(T.axioms):
            entries, free = plans[i]
            if not ax.premises:
                if rnd == 0:
                    for val in extend_free({}, free, carrier):
                        emit(i, val, ax)
                continue
            for pivot, rest in entries:
                for args in delta.get(pivot.symbol, ()):
                    start = unify(pivot.args, args, {})
                    if start is None:
                        continue
                    for val in run_plan(rest, index, start):
                        for full in extend_free(val, free, carrier):
                            emit(i, full, ax)
        if not pending:
            break
        delta = {}
        for e in pending:
            index.add(e)
            delta.setdefault(e.symbol, []).append(e.args)
        rnd += 1

    result = index.edges()
    if log is not None:
        log.final_edges = result
        return result, log
    return result


def naive_closure(T: Theory, carrier: Iterable[str], edges: Iterable[Edge]) -> frozenset[Edge]:
    """Reference fixpoint: match every axiom against the full edge set each round."""
    require_no_equality(T)
    carrier = sorted(carrier)
    current = set(edges)

    def matches(premises, by_symbol, val):
        if not premises:
            yield val
            return
        head, tail = premises[0], premises[1:]
        for args in by_symbol.get(head.symbol, ()):
            ok = dict(val)
            for v, a in zip(head.args, args):
                if ok.setdefault(v, a) != a:
                    break
            else:
                yield from matches(tail, by_symbol, ok)

    while True:
        by_symbol: dict[str, list[tuple]] = {}
        for e in current:
            by_symbol.setdefault(e.symbol, []).append(e.args)
        added = set()
        for ax in T.axioms:
            for val in matches(list(ax.premises), by_symbol, {}):
                missing = sorted({v for v in ax.conclusion.args if v not in val})
                for full in extend_free(val, missing, carrier):
                    c = Edge(ax.conclusion.symbol, tuple(full[v] for v in ax.conclusion.args))
                    if c not in current:
                        added.add(c)
        if not added:
            return frozenset(current)
        current |= added


def replay_trace(T: Theory, seed: Iterable[Edge], trace: SaturationTrace) -> bool:
    """Check each recorded derivation against the edges known before it."""
    known = set(seed)
    for d in trace.rounds:
        ax = T.axioms[d.axiom]
        val = dict(d.valuation)
        if any(instantiate(p, val) not in known for p in ax.premises):
            return False
        if instantiate(ax.conclusion, val) != d.edge:
            return False
        known.add(d.edge)
    return known == set(trace.final_edges)


def is_T_relation(T: Theory, carrier: Iterable[str], edges: Iterable[Edge]) -> bool:
    require_no_equality(T)
    return is_model(T, Structure(frozenset(carrier), frozenset(edges)))


def free_model(T: Theory, X: Structure) -> Structure:
    return Structure(X.carrier, closure(T, X.carrier, X.edges))


@dataclass(frozen=True)
class ReflectionResult:
    quotient: Morphism
    model: Structure


def reflect_with_equality(T: Theory, X: Structure) -> ReflectionResult:
    """Reflect ``X`` into the models of ``T`` (equality axioms allowed).

    Alternates closure under the equality-free axioms with merging every pair
    of elements some equality axiom forces together.  Merged classes are named
    by their least element.
    """
    base = strip_equality(T)
    eqs = equality_axioms(T)
    h = {x: x for x in X.carrier}
    carrier = frozenset(X.carrier)
    edges = frozenset(X.edges)
    while True:
        edges = closure(base, carrier, edges)
        index = EdgeIndex(sorted(edges))
        uf = UnionFind(sorted(carrier))
        merged = False
        for ax in eqs:
            a, b = ax.conclusion.args
            for val in premise_valuations(ax, index, sorted(carrier)):
                merged |= uf.union(val[a], val[b])
        if not merged:
            break
        step = uf.mapping()
        h = {x: step[y] for x, y in h.items()}
        carrier = frozenset(step.values())
        edges = transport_edge_set(step, edges)
    model = Structure(carrier, edges)
    return ReflectionResult(Morphism(X, model, h), model)

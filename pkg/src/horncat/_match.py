"""Indexed edge store and conjunctive premise matching.

A premise list is compiled into a *plan*: the premises in evaluation order,
each annotated with the argument positions already bound when it is reached.
Lookups on bound positions go through hash indexes built on demand and kept
up to date as edges are added.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

from .core import Edge

Valuation = dict


class EdgeIndex:
    def __init__(self, edges: Iterable[Edge] = ()):
        # insertion-ordered, so iteration is deterministic
        self._by_symbol: dict[str, dict[tuple, None]] = {}
        self._indexes: dict[tuple[str, tuple[int, ...]], dict[tuple, list[tuple]]] = {}
        for e in edges:
            self.add(e)

    def __contains__(self, e: Edge) -> bool:
        rows = self._by_symbol.get(e.symbol)
        return rows is not None and e.args in rows

    def __len__(self):
        return sum(len(rows) for rows in self._by_symbol.values())

    def add(self, e: Edge) -> bool:
        rows = self._by_symbol.setdefault(e.symbol, {})
        if e.args in rows:
            return False
        rows[e.args] = None
        for (sym, positions), table in self._indexes.items():
            if sym == e.symbol:
                table.setdefault(tuple(e.args[k] for k in positions), []).append(e.args)
        return True

    def rows(self, symbol: str):
        return self._by_symbol.get(symbol, {}).keys()

    def lookup(self, symbol: str, positions: tuple[int, ...], key: tuple) -> Sequence[tuple]:
        if not positions:
            return list(self.rows(symbol))
        table = self._indexes.get((symbol, positions))
        if table is None:
            table = {}
            for args in self.rows(symbol):
                table.setdefault(tuple(args[k] for k in positions), []).append(args)
            self._indexes[(symbol, positions)] = table
        return table.get(key, ())

    def edges(self) -> frozenset[Edge]:
        return frozenset(Edge(s, a) for s, rows in self._by_symbol.items() for a in rows)


def _shared(premise: Edge, bound: set) -> int:
    return len(set(premise.args) & bound)


def compile_plan(premises: Sequence[Edge], bound: Iterable[str] = ()):
    """Order premises greedily by how many of their variables are already bound.

    Ties go to the earlier premise.  Each step carries the positions that are
    bound on arrival, which is what the index lookup keys on.
    """
    bound = set(bound)
    remaining = list(premises)
    plan = []
    while remaining:
        best = max(range(len(remaining)), key=lambda i: (_shared(remaining[i], bound), -i))
        p = remaining.pop(best)
        positions = tuple(k for k, v in enumerate(p.args) if v in bound)
        plan.append((p.symbol, p.args, positions))
        bound.update(p.args)
    return plan


def unify(pattern: tuple[str, ...], args: tuple, val: Valuation) -> Valuation | None:
    new = dict(val)
    for v, a in zip(pattern, args):
        got = new.get(v)
        if got is None:
            new[v] = a
        elif got != a:
            return None
    return new


def run_plan(plan, index: EdgeIndex, val: Valuation, i: int = 0) -> Iterator[Valuation]:
    if i == len(plan):
        yield val
        return
    symbol, pattern, positions = plan[i]
    key = tuple(val[pattern[k]] for k in positions)
    for args in index.lookup(symbol, positions, key):
        new = unify(pattern, args, val)
        if new is not None:
            yield from run_plan(plan, index, new, i + 1)


def extend_free(val: Valuation, free: Sequence[str], carrier: Sequence[str]) -> Iterator[Valuation]:
    """Extend ``val`` over variables it does not bind, ranging over ``carrier``."""
    if not free:
        yield val
        return
    for values in itertools.product(carrier, repeat=len(free)):
        new = dict(val)
        new.update(zip(free, values))
        yield new


def instantiate(e: Edge, val: Valuation) -> Edge:
    return Edge(e.symbol, tuple(val[v] for v in e.args))

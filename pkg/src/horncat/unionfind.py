"""Disjoint sets whose representative is always the least member."""

from __future__ import annotations

from typing import Iterable


class UnionFind:
    def __init__(self, items: Iterable[str] = ()):
        self._parent: dict[str, str] = {}
        for x in items:
            self._parent[x] = x

    def find(self, x: str) -> str:
        parent = self._parent.setdefault(x, x)
        if parent == x:
            return x
        root = self.find(parent)
        self._parent[x] = root
        return root

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        lo, hi = (ra, rb) if ra < rb else (rb, ra)
        self._parent[hi] = lo
        return True

    def classes(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for x in sorted(self._parent):
            out.setdefault(self.find(x), []).append(x)
        return out

    def mapping(self) -> dict[str, str]:
        return {x: self.find(x) for x in self._parent}

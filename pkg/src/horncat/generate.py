"""Seeded random theories, structures, models and morphisms for checks.

Every function takes an explicit ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random
from typing import Sequence

from .core import Edge, Morphism, Signature, Structure, all_edges, preimage_edge_set
from .quantale import DistMatrix, Quantale
from .saturate import closure, free_model, reflect_with_equality
from .theory import Formula, Theory, strip_equality


def random_signature(rng: random.Random, max_symbols: int = 3, max_arity: int = 3) -> Signature:
    n = rng.randint(1, max_symbols)
    return Signature({f"r{i}": rng.randint(1, max_arity) for i in range(n)})


def random_theory(
    rng: random.Random,
    sig: Signature | None = None,
    *,
    max_symbols: int = 3,
    max_arity: int = 3,
    max_axioms: int = 6,
    max_premises: int = 3,
    n_vars: int = 4,
) -> Theory:
    """An equality-free theory; conclusions mostly reuse premise variables."""
    if sig is None:
        sig = random_signature(rng, max_symbols, max_arity)
    pool = [f"x{i}" for i in range(n_vars)]
    syms = sorted(sig.symbols)
    axioms = []
    for _ in range(rng.randint(0, max_axioms)):
        premises = []
        for _ in range(rng.randint(0, max_premises)):
            r = rng.choice(syms)
            premises.append(Edge(r, tuple(rng.choice(pool) for _ in range(sig.arity(r)))))
        used = sorted({v for p in premises for v in p.args})
        c = rng.choice(syms)
        source = used if used and rng.random() < 0.9 else pool
        axioms.append(Formula(tuple(premises), Edge(c, tuple(rng.choice(source) for _ in range(sig.arity(c))))))
    return Theory(sig, tuple(axioms))


def random_structure(
    rng: random.Random, sig: Signature, *, max_size: int = 5, min_size: int = 0,
    density: float | None = None, prefix: str = "a",
) -> Structure:
    size = rng.randint(min_size, max_size)
    carrier = [f"{prefix}{i}" for i in range(size)]
    if density is None:
        density = rng.choice([0.05, 0.15, 0.3])
    edges = [e for e in sorted(all_edges(sig, carrier)) if rng.random() < density]
    return Structure(frozenset(carrier), frozenset(edges))


def random_model(rng: random.Random, T: Theory, **kw) -> Structure:
    X = random_structure(rng, T.signature, **kw)
    if T.uses_equality:
        return reflect_with_equality(T, X).model
    return free_model(T, X)


def random_family(
    rng: random.Random, T: Theory, *, max_members: int = 3, max_size: int = 4, min_members: int = 0,
) -> list[Structure]:
    n = rng.randint(min_members, max_members)
    return [random_model(rng, T, max_size=max_size, prefix=f"m{i}_") for i in range(n)]


def random_function(rng: random.Random, dom: Sequence[str], cod: Sequence[str]) -> dict[str, str]:
    cod = sorted(cod)
    return {x: rng.choice(cod) for x in sorted(dom)}


def random_morphism_into(
    rng: random.Random, T: Theory, Z: Structure, *, max_size: int = 4, density: float = 0.5,
) -> Morphism:
    """A random model ``Y`` of ``T`` with a morphism ``Y -> Z``.

    ``Z`` must be a model.  Edges of ``Y`` are drawn from the preimage of
    ``E(Z)``, which is closed, so closing them keeps the map a morphism.
    """
    size = rng.randint(0, max_size) if Z.carrier else 0
    carrier = [f"y{i}" for i in range(size)]
    g = random_function(rng, carrier, Z.carrier)
    allowed = sorted(preimage_edge_set(g, Z.edges))
    seed = [e for e in allowed if rng.random() < density]
    base = strip_equality(T)
    Y = Structure(frozenset(carrier), closure(base, carrier, seed))
    if not T.uses_equality:
        return Morphism(Y, Z, g)
    refl = reflect_with_equality(T, Y)
    f = {refl.quotient(y): g[y] for y in carrier}
    return Morphism(refl.model, Z, f)


def random_vcat_matrix(rng: random.Random, Q: Quantale, size: int, *, symmetric: bool = False) -> DistMatrix:
    """Random matrix pushed up to the least V-category above it."""
    carrier = [f"p{i}" for i in range(size)]
    weights = [3 if v == Q.bottom else 1 for v in Q.elements]
    d = {(x, y): rng.choices(Q.elements, weights)[0] for x in carrier for y in carrier}
    if symmetric:
        for i, x in enumerate(carrier):
            for y in carrier[i:]:
                d[(y, x)] = d[(x, y)]
    for x in carrier:
        d[(x, x)] = Q.join(d[(x, x)], Q.unit)
    changed = True
    while changed:
        changed = False
        for x in carrier:
            for y in carrier:
                for z in carrier:
                    j = Q.join(d[(x, z)], Q.mul(d[(x, y)], d[(y, z)]))
                    if j != d[(x, z)]:
                        d[(x, z)] = j
                        changed = True
    return DistMatrix(frozenset(carrier), d)

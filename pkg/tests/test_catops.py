import itertools
import random

import pytest

from horncat.catops import (
    NotAModel,
    Sink,
    Source,
    VariableConditionViolated,
    coequalizer,
    coequalizer_universal,
    coproduct,
    coproduct_universal,
    definitionally_final,
    definitionally_initial,
    enumerate_models,
    equalizer,
    final_lift,
    homs,
    initial_lift,
    is_embedding,
    is_final_sink,
    is_initial_source,
    is_isomorphism,
    is_quotient,
    product,
    pullback,
    pullback_universal,
)
from horncat.core import (
    Morphism,
    Structure,
    all_edges,
    edge,
    functions,
    identity,
    is_pi_morphism,
    structure,
    tuple_name,
)
from horncat.generate import random_model, random_morphism_into, random_theory
from horncat.quantale import pos_theory, preord_theory
from horncat.saturate import EqualityAxiomPresent, closure, free_model
from horncat.theory import Theory, formula, is_model
from oracles import is_iso_by_search, naive_fixpoint
from strategies import LE, chain, le

PRE = preord_theory()
POS = pos_theory()


def componentwise(A, B):
    """Product order by direct tuple enumeration."""
    pts = list(itertools.product(sorted(A.carrier), sorted(B.carrier)))
    return {
        edge("le", tuple_name(p), tuple_name(q))
        for p in pts
        for q in pts
        if A.holds("le", p[0], q[0]) and B.holds("le", p[1], q[1])
    }


def test_initial_lift_examples():
    assert initial_lift(PRE, "ab", []).edges == all_edges(LE, "ab")
    X = chain("a", "b", "c")
    assert initial_lift(PRE, X.carrier, [(identity(X).map, X)]) == X
    A, B = chain("0", "1"), chain("p", "q")
    res = product(PRE, [A, B])
    assert res.object.edges == componentwise(A, B)
    with pytest.raises(EqualityAxiomPresent):
        initial_lift(POS, "ab", [])


def test_final_lift_examples():
    assert final_lift(PRE, "ab", []).edges == naive_fixpoint(PRE, "ab", [])
    assert final_lift(PRE, "ab", []).edges == {edge("le", "a", "a"), edge("le", "b", "b")}
    X = chain("a", "b")
    assert final_lift(PRE, X.carrier, [(X, identity(X).map)]) == X
    glued = final_lift(PRE, "abc", [(chain("u", "v"), {"u": "a", "v": "b"}), (chain("s", "t"), {"s": "b", "t": "c"})])
    assert glued.holds("le", "a", "c")
    assert glued.edges == naive_fixpoint(PRE, "abc", le(("a", "b"), ("b", "c")))


def test_initiality_examples():
    A, C = chain("a", "b"), chain("0", "1")
    pb = pullback(PRE, Morphism(A, C, {"a": "0", "b": "1"}), identity(C))
    assert is_initial_source(PRE, Source(pb.object, (pb.proj_left, pb.proj_right)))
    cop = coproduct(PRE, [A, C])
    assert is_final_sink(PRE, Sink(cop.object, cop.insertions))
    discrete = free_model(PRE, structure("ab"))
    inj = Morphism(discrete, C, {"a": "0", "b": "1"})
    assert not is_initial_source(PRE, Source(discrete, (inj,)))


def test_embedding_and_quotient_examples():
    cop = coproduct(PRE, [chain("a", "b"), chain("c")])
    assert all(is_embedding(PRE, s) for s in cop.insertions)
    X = structure("abc", le(("a", "b"), ("b", "c")))
    star = free_model(PRE, X)
    q = Morphism(X, star, {x: x for x in X.carrier})
    assert is_quotient(PRE, q)
    assert star.edges == closure(PRE, X.carrier, X.edges)
    discrete = free_model(PRE, structure("ab"))
    bij = Morphism(discrete, chain("0", "1"), {"a": "0", "b": "1"})
    assert bij.is_bijective() and not is_embedding(PRE, bij)
    assert not is_isomorphism(PRE, bij)


def test_product_examples():
    terminal = product(PRE, [])
    assert len(terminal.object.carrier) == 1 and terminal.object.edges == all_edges(LE, terminal.object.carrier)
    sq = product(PRE, [chain("0", "1"), chain("0", "1")])
    assert len(sq.object.carrier) == 4 and len(sq.object.edges) == 9
    assert sq.object.edges == componentwise(chain("0", "1"), chain("0", "1"))


def test_equalizer_examples():
    X, Y = chain("a", "b", "c"), chain("0", "1")
    f = Morphism(X, Y, {"a": "0", "b": "1", "c": "1"})
    whole = equalizer(PRE, f, f)
    assert whole.object == X and whole.legs[0].map == {x: x for x in X.carrier}
    g = Morphism(X, Y, {"a": "0", "b": "0", "c": "1"})
    part = equalizer(PRE, f, g)
    assert part.object == chain("a", "c")


def test_pullback_examples():
    A, C = chain("a", "b", "c"), chain("0", "1")
    f = Morphism(A, C, {"a": "0", "b": "0", "c": "1"})
    along_id = pullback(PRE, f, identity(C))
    assert is_iso_by_search(along_id.object, A)
    cop = coproduct(PRE, [chain("a", "b"), chain("c", "d")])
    assert pullback(PRE, cop.insertions[0], cop.insertions[1]).object.carrier == frozenset()
    point = structure(["*"], le(("*", "*")))
    two = chain("0", "1")
    fib = pullback(PRE, Morphism(two, point, {"0": "*", "1": "*"}), Morphism(two, point, {"0": "*", "1": "*"}))
    assert fib.object == product(PRE, [two, two]).object


def test_pullback_edge_formula():
    rng = random.Random(11)
    for _ in range(50):
        C = random_model(rng, PRE, max_size=3, min_size=1)
        f = random_morphism_into(rng, PRE, C, max_size=3)
        g = random_morphism_into(rng, PRE, C, max_size=3)
        pb = pullback(PRE, f, g)
        pairs = [(a, b) for a in f.dom.carrier for b in g.dom.carrier if f(a) == g(b)]
        assert pb.object.carrier == {tuple_name(p) for p in pairs}
        for p, q in itertools.product(pairs, repeat=2):
            want = f.dom.holds("le", p[0], q[0]) and g.dom.holds("le", p[1], q[1])
            assert pb.object.holds("le", tuple_name(p), tuple_name(q)) == want
        assert pullback_universal(PRE, pb, f, g, enumerate_models(PRE, 2))


def test_coproduct_examples():
    empty = coproduct(PRE, [])
    assert empty.object == Structure(frozenset(), frozenset()) and empty.insertions == ()
    cop = coproduct(PRE, [chain("a", "b"), chain("a", "b")])
    assert cop.object.carrier == {"0.a", "0.b", "1.a", "1.b"}
    assert cop.object.edges == closure(PRE, cop.object.carrier, cop.object.edges)
    assert not any(e.args[0][0] != e.args[1][0] for e in cop.object.edges)
    posets = coproduct(POS, [chain("a", "b"), chain("c")])
    assert is_model(POS, posets.object)


def test_coproduct_rejects_violating_theory():
    T = Theory(LE, (formula(le(("x", "x2"), ("y", "y2")), ("le", ("x", "y"))),))
    with pytest.raises(VariableConditionViolated):
        coproduct(T, [chain("a"), chain("b")])
    lifted = coproduct(T, [chain("a"), chain("b")], strict=False)
    assert lifted.object.holds("le", "0.a", "1.b")
    assert is_final_sink(T, Sink(lifted.object, lifted.insertions))


def test_strict_coproduct_flags_non_models():
    # a summand that is not a model makes the union unclosed
    with pytest.raises(NotAModel):
        coproduct(PRE, [structure("a")])


def test_coproduct_universal_property():
    tests = enumerate_models(PRE, 2)
    for fam in ([], [chain("a")], [chain("a", "b"), chain("c")], [free_model(PRE, structure("ab"))]):
        assert coproduct_universal(PRE, coproduct(PRE, fam), tests)
    assert coproduct_universal(POS, coproduct(POS, [chain("a"), chain("b")]), enumerate_models(POS, 2))


def test_coequalizer_examples():
    Y = chain("a", "b")
    X = chain("p")
    f = Morphism(X, Y, {"p": "a"})
    same = coequalizer(PRE, f, f)
    assert same.is_bijective() and same.cod == Y
    # a 2-cycle glued from the twisted inclusions collapses to a point
    cyc = structure("ab", le(("a", "b"), ("b", "a"), ("a", "a"), ("b", "b")))
    pt = Morphism(X, cyc, {"p": "a"})
    qt = Morphism(X, cyc, {"p": "b"})
    q = coequalizer(PRE, pt, qt)
    assert q.cod == structure("a", le(("a", "a")))


def test_pos_coequalizer_collapses_forced_cycle():
    Y = coproduct(POS, [chain("a", "b"), chain("c", "d")]).object
    X = structure("pq")
    f = Morphism(X, Y, {"p": "0.a", "q": "0.b"})
    g = Morphism(X, Y, {"p": "1.d", "q": "1.c"})
    q = coequalizer(POS, f, g)
    assert q.cod == structure(["0.a"], le(("0.a", "0.a")))
    pre = coequalizer(PRE, f, g)
    assert len(pre.cod.carrier) == 2 and len(pre.cod.edges) == 4
    assert coequalizer_universal(POS, q, f, g, enumerate_models(POS, 2))
    assert coequalizer_universal(PRE, pre, f, g, enumerate_models(PRE, 2))
    assert is_quotient(PRE, pre)


def test_coequalizer_random_is_quotient_and_universal():
    rng = random.Random(5)
    tests = enumerate_models(PRE, 2)
    for _ in range(40):
        Y = random_model(rng, PRE, max_size=3, min_size=1)
        f = random_morphism_into(rng, PRE, Y, max_size=2)
        g = Morphism(f.dom, Y, {x: rng.choice(sorted(Y.carrier)) for x in f.dom.carrier})
        if not is_pi_morphism(LE, g):
            continue
        q = coequalizer(PRE, f, g)
        assert is_quotient(PRE, q)
        assert coequalizer_universal(PRE, q, f, g, tests)


def test_lifts_make_initial_sources_and_final_sinks():
    rng = random.Random(1)
    for _ in range(100):
        T = random_theory(rng, max_symbols=2, max_arity=2, max_axioms=3)
        targets = [random_model(rng, T, max_size=3, min_size=1, prefix=f"t{i}_") for i in range(rng.randint(0, 2))]
        S = ["s0", "s1", "s2"][: rng.randint(0, 3)]
        legs = [({s: rng.choice(sorted(Y.carrier)) for s in S}, Y) for Y in targets]
        X = initial_lift(T, S, legs)
        assert is_model(T, X)
        assert is_initial_source(T, Source(X, tuple(Morphism(X, Y, h) for h, Y in legs)))
        sources = [random_model(rng, T, max_size=3, prefix=f"u{i}_") for i in range(rng.randint(0, 2))]
        S2 = ["z0", "z1", "z2"]
        sink_legs = [(Y, {y: rng.choice(S2) for y in Y.carrier}) for Y in sources]
        Z = final_lift(T, S2, sink_legs)
        assert is_model(T, Z)
        assert is_final_sink(T, Sink(Z, tuple(Morphism(Y, Z, h) for Y, h in sink_legs)))


def test_prop_criteria_match_definitions_on_samples():
    rng = random.Random(2)
    tests = enumerate_models(PRE, 2)
    for _ in range(60):
        A = random_model(rng, PRE, max_size=3, prefix="a")
        B = random_model(rng, PRE, max_size=3, min_size=1, prefix="b")
        h = Morphism(A, B, {a: rng.choice(sorted(B.carrier)) for a in A.carrier})
        if not is_pi_morphism(LE, h):
            continue
        assert is_initial_source(PRE, Source(A, (h,))) == definitionally_initial(PRE, Source(A, (h,)), tests)
        assert is_final_sink(PRE, Sink(B, (h,))) == definitionally_final(PRE, Sink(B, (h,)), tests)


def test_isomorphisms_are_bijective_embeddings_and_quotients():
    models = enumerate_models(PRE, 3, prefix="m")
    for A in models:
        for B in models:
            if len(A.carrier) != len(B.carrier):
                continue
            for h in functions(A.carrier, B.carrier):
                m = Morphism(A, B, h)
                if not (is_pi_morphism(LE, m) and m.is_bijective()):
                    continue
                inv = {v: k for k, v in h.items()}
                has_inverse = is_pi_morphism(LE, Morphism(B, A, inv))
                assert is_isomorphism(PRE, m) == has_inverse
                assert is_embedding(PRE, m) == has_inverse
                assert is_quotient(PRE, m) == has_inverse


def test_homs_counts_by_enumeration():
    A, X = chain("a", "b"), chain("0", "1", "2")
    assert len(homs(PRE, A, X)) == 6
    assert len(homs(PRE, Structure(frozenset(), frozenset()), X)) == 1

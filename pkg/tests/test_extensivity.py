import json
import random

import pytest

from horncat.catops import coproduct, pullback
from horncat.core import Morphism, Signature, Structure, UnknownSymbol, edge, identity, structure
from horncat.extensivity import (
    canonical_distributor,
    check_connected,
    check_coproduct_edge_formula,
    check_disjointness,
    check_distributivity,
    check_extensivity,
    check_universality,
    final_density_sink,
    hom_count,
    hom_set,
    replay_witness,
    representing_object,
    union_closure_gap,
)
from horncat.generate import random_family, random_model, random_morphism_into
from horncat.quantale import boolean_chain, gen_theory, pos_theory, preord_theory
from horncat.saturate import closure
from horncat.theory import Theory, formula
from oracles import is_iso_by_search
from strategies import LE, chain, le

PRE = preord_theory()
POS = pos_theory()
EMPTY = Theory(LE, ())
SPLIT = Theory(LE, (formula(le(("x", "x2"), ("y", "y2")), ("le", ("x", "y"))),))
PR = Signature({"P": 1, "R": 2})
LINK = Theory(PR, (formula([("P", ("x",)), ("P", ("y",))], ("R", ("x", "y"))),))


def test_edge_formula_examples():
    assert check_coproduct_edge_formula(PRE, [chain("a", "b"), chain("c")])
    assert check_coproduct_edge_formula(PRE, [])
    fam = [structure("a", le(("a", "a"))), structure("b", le(("b", "b")))]
    assert not check_coproduct_edge_formula(SPLIT, fam)
    assert edge("le", "0.a", "1.b") in union_closure_gap(SPLIT, fam)


def test_universality_identity_and_single_component():
    fam = [chain("a", "b"), chain("c")]
    cop = coproduct(PRE, fam)
    assert check_universality(PRE, fam, identity(cop.object)).ok
    Y = chain("p", "q", "r")
    f = Morphism(Y, cop.object, {"p": "0.a", "q": "0.b", "r": "0.b"})
    P1 = pullback(PRE, cop.insertions[0], f).object
    P2 = pullback(PRE, cop.insertions[1], f).object
    assert is_iso_by_search(P1, Y) and P2.carrier == frozenset()
    report = check_universality(PRE, fam, f)
    assert report.ok and report.witnesses == []


def test_universality_rejects_foreign_maps():
    fam = [chain("a")]
    with pytest.raises(ValueError):
        check_universality(PRE, fam, identity(chain("z")))


def test_disjointness_examples():
    assert check_disjointness(PRE, [chain("a", "b"), chain("c")])
    assert check_disjointness(PRE, [Structure(frozenset(), frozenset()), chain("c")])
    assert check_disjointness(PRE, [chain("a")])
    assert check_disjointness(POS, [chain("a"), chain("a"), chain("a", "b")])


def test_link_theory_breaks_universality_with_replayable_witness():
    fam = [structure("a", [("P", ("a",)), ("R", ("a", "a"))]), structure("b", [("P", ("b",)), ("R", ("b", "b"))])]
    assert not check_coproduct_edge_formula(LINK, fam)
    cop = coproduct(LINK, fam, strict=False)
    Y = structure("uv", [("P", ("u",)), ("R", ("u", "u")), ("R", ("u", "v"))])
    f = Morphism(Y, cop.object, {"u": "0.a", "v": "1.b"})
    report = check_extensivity(LINK, fam, [f])
    assert report.disjointness_ok and not report.universality_ok
    assert report.witnesses
    for w in json.loads(json.dumps(report.as_json()))["witnesses"]:
        assert replay_witness(LINK, fam, w)


def test_random_extensivity_over_vcat():
    rng = random.Random(0)
    T = gen_theory(boolean_chain(), "vcat")
    for _ in range(60):
        fam = random_family(rng, T, max_members=3, max_size=3)
        Z = coproduct(T, fam).object
        maps = [random_morphism_into(rng, T, Z, max_size=3)] if Z.carrier else []
        report = check_extensivity(T, fam, maps)
        assert report.ok, report.witnesses


def test_distributivity_examples():
    X = chain("x", "y")
    assert check_distributivity(PRE, X, [chain("a", "b")])
    point = structure(["*"], le(("*", "*")))
    fam = [chain("a", "b"), chain("c")]
    assert check_distributivity(PRE, point, fam)
    canon = canonical_distributor(PRE, point, fam)
    assert is_iso_by_search(canon.dom, coproduct(PRE, fam).object)
    big = canonical_distributor(PRE, X, [chain("a", "b"), chain("c", "d")])
    assert len(big.dom.carrier) == 8 and big.is_bijective()
    assert check_distributivity(PRE, X, [chain("a", "b"), chain("c", "d")])
    assert check_distributivity(POS, X, [chain("a", "b"), chain("c", "d")])


def test_representing_objects():
    assert representing_object(PRE, "le") == structure(["1", "2"], le(("1", "2"), ("1", "1"), ("2", "2")))
    assert representing_object(EMPTY, "le") == structure(["1", "2"], le(("1", "2")))
    T = gen_theory(boolean_chain(), "vcat")
    got = representing_object(T, "~top")
    want = closure(T, ["1", "2"], [edge("~top", "1", "2")])
    assert got.edges == want and len(want) == 3
    with pytest.raises(UnknownSymbol):
        representing_object(PRE, "nope")


def test_hom_count_examples():
    R = representing_object(PRE, "le")
    X = chain("0", "1", "2")
    assert hom_count(PRE, R, X) == 6 == len(X.edges_of("le"))
    assert hom_count(PRE, Structure(frozenset(), frozenset()), X) == 1
    point = structure(["*"], le(("*", "*")))
    assert hom_count(PRE, chain("a", "b", "c"), point) == 1
    assert len(hom_set(PRE, R, X)) == 6


def test_connected_examples():
    R = representing_object(PRE, "le")
    assert check_connected(PRE, R, [chain("a", "b"), chain("c")])
    discrete = structure("ab")
    pts = [structure("p"), structure("q")]
    assert hom_count(EMPTY, discrete, coproduct(EMPTY, pts).object) == 4
    assert not check_connected(EMPTY, discrete, pts)
    assert check_connected(EMPTY, discrete, [structure("p")])


def test_final_density_examples():
    empty = Structure(frozenset(), frozenset())
    sink, ok = final_density_sink(PRE, empty)
    assert sink.legs == () and ok
    sink, ok = final_density_sink(EMPTY, structure("ab"))
    assert sink.legs == () and ok
    sink, ok = final_density_sink(PRE, chain("a", "b"))
    assert len(sink.legs) == 3 and ok
    R = representing_object(PRE, "le")
    sink, ok = final_density_sink(PRE, R)
    assert ok and any(leg.map == {"1": "1", "2": "2"} for leg in sink.legs)


def test_representables_random():
    rng = random.Random(9)
    for T in (PRE, POS, gen_theory(boolean_chain(), "pmet")):
        for _ in range(40):
            X = random_model(rng, T, max_size=3)
            for r in T.signature:
                R = representing_object(T, r)
                assert hom_count(T, R, X) == len(X.edges_of(r))
            sink, ok = final_density_sink(T, X)
            assert ok and len(sink.legs) == len(X.edges)

"""Sampling universality and disjointness of coproducts, and where they break."""
import random

from horncat import check_variable_condition, edge, formula, free_model, preord_theory, structure
from horncat.core import Signature
from horncat.extensivity import check_extensivity, union_closure_gap
from horncat.generate import random_structure
from horncat.theory import Theory

rng = random.Random(0)
P = preord_theory()
family = [free_model(P, random_structure(rng, P.signature, max_size=3, prefix=p)) for p in ("u", "v")]
report = check_extensivity(P, family)
print("Preord:", report.as_json())

# a premise pair with no shared variable links distinct summands
LE = Signature({"le": 2})
split = Theory(LE, (formula([("le", ("x", "x2")), ("le", ("y", "y2"))], ("le", ("x", "y"))),))
print("variable condition:", [(v.axiom, v.clause) for v in check_variable_condition(split)])
A = structure("a", [edge("le", "a", "a")])
B = structure("b", [edge("le", "b", "b")])
gap = union_closure_gap(split, [A, B])
print("edges the plain union is missing:", sorted((e.symbol, e.args) for e in gap))

"""Preorders, posets and what equality buys you."""
from horncat import (
    coequalizer, coproduct, edge, free_model, is_model, pos_theory, preord_theory,
    product, reflect_with_equality, structure,
)
from horncat.core import Morphism


def show(title, X):
    rel = sorted(e.args for e in X.edges)
    print(f"{title}: carrier={sorted(X.carrier)} le={rel}")


P, Q = preord_theory(), pos_theory()

X = structure("abc", [edge("le", "a", "b"), edge("le", "b", "c")])
show("raw", X)
show("free preorder", free_model(P, X))

# a two-cycle is a fine preorder but collapses in Pos
cyc = structure("ab", [edge("le", x, y) for x in "ab" for y in "ab"])
print("cycle is a preorder:", is_model(P, cyc), "| a poset:", is_model(Q, cyc))
res = reflect_with_equality(Q, cyc)
show("poset reflection", res.model)
print("quotient map:", res.quotient.map)

two = free_model(P, structure("01", [edge("le", "0", "1")]))
show("2 x 2", product(P, [two, two]).object)
show("2 + 2", coproduct(P, [two, two]).object)

# glue the bottom of one chain to the top of the other
S = coproduct(P, [two, two])
pt = free_model(P, structure("p", []))
f = Morphism(pt, S.object, {"p": "0.1"})
g = Morphism(pt, S.object, {"p": "1.0"})
show("glued", coequalizer(P, f, g).cod)

"""Quantale-valued distances as Horn theories."""
import random

from horncat import (
    boolean_chain, capped_chain, from_distance, gen_theory, is_model, reflect_with_equality,
    to_distance, validate_quantale,
)
from horncat.generate import random_structure

for Q in (boolean_chain(), capped_chain(2)):
    print(Q.elements, "laws broken:", validate_quantale(Q))
    for flavor in ("vcat", "pmet", "met"):
        try:
            T = gen_theory(Q, flavor)
        except Exception as exc:
            print(f"  {flavor}: {type(exc).__name__}")
            continue
        print(f"  {flavor}: {len(T.axioms)} axioms over {sorted(T.signature.symbols)}")

Q = capped_chain(2)
T = gen_theory(Q, "met")
rng = random.Random(1)
for _ in range(200):
    # sparse random edges, then the least metric space they generate
    X = reflect_with_equality(T, random_structure(rng, T.signature, max_size=3, density=0.2)).model
    assert is_model(T, X)
    if len(X.carrier) == 3:
        D = to_distance(Q, X)
        print("a 3-point metric space:", {f"{a}{b}": D.d[a, b] for a, b in sorted(D.d)})
        assert from_distance(Q, D) == X
        break

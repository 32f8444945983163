"""Irreducible factorisation and common refinements of product decompositions."""

from fiberorder import (
    build_ok_poset,
    build_pk_poset,
    chain,
    common_refinement,
    factor_once,
    irreducible_factorization,
    is_irreducible,
    product,
)

P = product([chain(2), chain(2), chain(3)])
fact = irreducible_factorization(P)
print("factors of C2 x C2 x C3:", [len(F) for F in fact.factors])
print("splits:", [(len(Q), len(R)) for Q, R in factor_once(P)])

G = product([chain(2), chain(3)])
Z = common_refinement(G, [chain(2), chain(3)], [chain(3), chain(2)])
print("refinement grid sizes:", [[len(c) for c in row] for row in Z])

for k in (1, 2, 3):
    for m in (1, 2):
        print(f"O-grid({k},{m}) irreducible: {is_irreducible(build_ok_poset(k, m))}",
              f" P-grid({k},{m}) irreducible: {is_irreducible(build_pk_poset(k, m))}")

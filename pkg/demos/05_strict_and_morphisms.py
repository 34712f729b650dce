"""
Strictness and applicative morphisms
====================================

Any pca sits inside a strict one on the same carrier.
"""

from pcalab import K1_PCA, apply, strict_pca, laws_check, random_triples
from pcalab import builtin_oracle, oracle_pca, identity_spec, inclusion_spec, compose
from pcalab import check_applicative, check_decider
from pcalab.k1 import SUCC

P = K1_PCA
A = strict_pca(P)
print(A.name, " k' =", A.show(A.k), " s' =", A.show(A.s))

rep = laws_check(A, random_triples(A, 50, 1), 10**5, strict=True)
print("strict laws:", rep.lines()[-1], f"({rep.witnessed} witnessed)")

# [4] carries K1 application over
e = A.code(4)
print("[4] succ 7 ->", apply(A, apply(A, e, SUCC, 100).value, 7, 100))

# the inclusion K1 -> K1[double] is a decidable morphism
q = oracle_pca(P, builtin_oracle("double", P))
iota = inclusion_spec(P, q)
pairs = [(SUCC, 3), (P.kit.i, 5)]
print("iota applicative:", check_applicative(iota, pairs, 10**6).lines()[-1])
print("iota decidable:", check_decider(iota, 10**6).lines()[-1])
print("iota . id:", check_applicative(compose(identity_spec(P), iota), pairs, 10**6).lines()[-1])

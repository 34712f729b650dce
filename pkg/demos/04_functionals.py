"""
Type-2 functionals and S1-S9
============================

A[F] answers a query v with F applied to the function indexed by v.
"""

from pcalab import K1_PCA, apply_functional, at_zero, bounded_E, constant_index, lift_index
from pcalab import query_index, s19_apply, S19Machine, seq, compile_s19_to_k1f
from pcalab.k1 import PRED, SUCC
from pcalab.s19 import check_extensional_equiv, pr_to_s19
from pcalab.toolkit import pr_add

P = K1_PCA
q = query_index(P)

for c in (0, 4, 9):
    print("at_zero(const", c, ") =", apply_functional(P, at_zero(), q, constant_index(P, c), 10**6))

# exists m < 8 with g(m) = 0 ?
for name, g in (("succ", SUCC), ("pred", PRED)):
    out, depth = apply_functional(P, bounded_E(8), q, lift_index(P, g), 10**6)
    print(f"E8({name}) = {out.value} at depth {depth}")

# S1-S9: <1,1> is successor; <8,1,h> applies F to k |-> h(k, n)
M = S19Machine(at_zero())
print("<1,1> =", seq(1, 1), " {<1,1>}(4) =", s19_apply(M, seq(1, 1), [4]))
e = seq(8, 1, pr_to_s19(pr_add()))
print("{<8,1,add>}(6) =", s19_apply(M, e, [6]))

# the same program compiled into K1[F]
rep = check_extensional_equiv(compile_s19_to_k1f(e), e, at_zero(), range(5), 10**6)
print("\n".join(rep.lines()))

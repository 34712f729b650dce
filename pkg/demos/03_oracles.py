"""
Computing relative to an oracle
===============================

K1[f] has the same codes as K1; application talks to f through dialogues.
"""

from pcalab import K1_PCA, apply_oracle, builtin_oracle, oracle_pca, query_index
from pcalab.oracle import lift_through, oracle_queries
from pcalab.core import Const, eval_term
from pcalab.k1 import SUCC

P = K1_PCA
double = builtin_oracle("double", P)

out, log = apply_oracle(P, double, query_index(P), 7, 10**6)
print(out)
print("\n".join(log.lines(P)))

# a partial oracle makes the application undefined
half = builtin_oracle("half", P)
out, log = apply_oracle(P, half, query_index(P), 3, 10**6)
print(out, "|", log.lines(P)[-1])

# two oracles, nested either way round
for a, b in (("double", "succ"), ("succ", "double")):
    inner = oracle_pca(P, builtin_oracle(a, P))
    q = oracle_pca(inner, builtin_oracle(b, inner))
    H = oracle_queries(q)
    f, g, s = Const(H["double"]), Const(H["succ"]), Const(lift_through(q, SUCC))
    vals = [eval_term(q, s(f(g(Const(n)))), 4 * 10**6).value for n in range(5)]
    print(q.name, "s(f(g n)) =", vals)

"""
Fixpoints and primitive recursion
=================================

Every pca has a fixpoint combinator, so numerals support full recursion.
"""

from pcalab import K1_PCA, Fuel, V, abstract
from pcalab.core import Const
from pcalab.toolkit import Comp, Mu, Proj, pr_eval, pr_mul, pr_sub

P = K1_PCA
kit = P.kit


def call(f, *args):
    fuel = Fuel(10**7)
    for a in args:
        f = P.app(f, a, fuel)
    return f


# f = <e n> if n = 0 then 1 else n + e(n - 1); e = fix f
e, n = V("e n")
Z, Pr, Ad = Const(kit.iszero), Const(kit.pred), Const(kit.add)
f = abstract(P, kit.ifte(Z(n), Const(kit.numeral(1)), Ad(n, e(Pr(n)))), "e n")
fix = kit.fixpoint(f)
for m in range(6):
    print(m, kit.decode_numeral(call(fix, kit.numeral(m)), Fuel(10**6)))

# ceiling square root as a bounded search, compiled to a numeral program
root = Mu(Comp(pr_sub(), (Proj(2, 2), Comp(pr_mul(), (Proj(1, 2), Proj(1, 2))))))
prog = kit.compile_pr(root)
for m in (0, 1, 5, 9, 10):
    got = kit.decode_numeral(call(prog, kit.numeral(m)), Fuel(10**6))
    print(f"ceil sqrt {m} = {got} (host {pr_eval(root, [m], Fuel(10**6))})")

"""
Kleene's first model and the combinator toolkit
===============================================

Codes are naturals; application runs a small tag machine on a step budget.
"""

from pcalab import K1_PCA, Fuel, V, abstract, apply
from pcalab.k1 import IFZ, K, PRED, S, SUCC, code, show_code

P = K1_PCA
print("k =", K, " s =", S, " succ =", SUCC, " pred =", PRED, " ifz =", IFZ)

# s k k is the identity; it takes four rule firings on any argument
i = P.kit.i
print("i =", i, " i 41 ->", apply(P, i, 41, 10))
print("with 3 steps:", apply(P, i, 41, 3))

# tags from 10 up are inert: the machine reports divergence rather than running dry
print("code(10) 1 ->", apply(P, code(10), 1, 10))

# bracket abstraction: <x y> y x
x, y = V("x y")
swap = abstract(P, y(x), "x y")
print("swap =", show_code(swap, 60))
print("swap 4 succ ->", apply(P, apply(P, swap, 4, 100).value, SUCC, 100))

# Curry numerals and arithmetic on them
kit = P.kit
three, four = kit.numeral(3), kit.numeral(4)
out = apply(P, apply(P, kit.mul, three, 10**6).value, four, 10**6)
print("3 * 4 =", kit.decode_numeral(out.value, Fuel(10**6)))

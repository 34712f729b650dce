import pytest
from hypothesis import given, settings, strategies as st

from pcalab.core import Const, Fuel, Value, Var, apply, eval_term, substitute
from pcalab.k1 import K1_PCA, PRED, SUCC
from pcalab.toolkit import (Comp, Mu, PrimRec, Proj, Succ, Zero, V, abstract, bracket, lam,
                            pr_add, pr_eval, pr_monus, pr_mul, pr_pred, pr_sub)

P = K1_PCA
kit = P.kit


def run(f, *args, fuel=10**6):
    fu = Fuel(fuel)
    for a in args:
        f = P.app(f, a, fu)
    return f


def num(n):
    return kit.numeral(n)


def test_bracket_shapes():
    x = Var("x")
    assert bracket(P, x, "x") == Const(kit.i)
    # <x>y = k y,  <x>(x y) = s i (k y)
    assert str(bracket(P, V("y"), "x")) == "0 y"
    assert str(bracket(P, x(V("y")), "x")) == "3 10 (0 y)"


def test_abstraction_applies():
    x, y = V("x y")
    swap = abstract(P, y(x), "x y")
    assert run(swap, 5, 15) == 6


def test_partial_applications_always_denote():
    # <x y z> (x x) y z applied to a diverging-ish argument stays defined
    x, y, z = V("x y z")
    e = abstract(P, x(x)(y, z), "x y z")
    out = apply(P, e, 28, 100)
    assert isinstance(out, Value)


def test_booleans_and_pairs():
    assert run(kit.T, 1, 2) == 1
    assert run(kit.F, 1, 2) == 2
    pr = kit.mk_pair(7, 9)
    assert run(kit.p0, pr) == 7 and run(kit.p1, pr) == 9
    assert kit.split(pr, Fuel(10**5)) == (7, 9)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 60))
def test_numerals(n):
    assert kit.decode_numeral(num(n), Fuel(10**6)) == n
    assert run(kit.succ, num(n)) == num(n + 1)
    assert run(kit.pred, num(n)) == num(max(n - 1, 0))
    assert run(kit.iszero, num(n)) == (kit.T if n == 0 else kit.F)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8))
def test_numeral_arithmetic(m, n):
    assert run(kit.add, num(m), num(n)) == num(m + n)
    assert run(kit.mul, num(m), num(n)) == num(m * n)
    assert run(kit.monus, num(m), num(n)) == num(max(m - n, 0))
    assert run(kit.eq_num, num(m), num(n)) == (kit.T if m == n else kit.F)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 100), max_size=5), st.lists(st.integers(0, 100), max_size=4))
def test_tuples(u, v):
    tu, tv = kit.tuple(u), kit.tuple(v)
    dec = lambda t: kit.decode_tuple(t, Fuel(10**6))
    assert dec(tu) == u
    assert run(kit.length, tu) == num(len(u))
    assert dec(run(kit.concat, tu, tv)) == u + v
    for i in range(len(u)):
        assert run(kit.proj, num(i), tu) == u[i]
        assert dec(run(kit.prefix, num(i), tu)) == u[:i]
        assert dec(run(kit.drop, num(i), tu)) == u[i:]
    assert dec(run(kit.single, 5)) == [5]


def test_empty_tuple():
    assert kit.empty == kit.tuple([])


def test_fixpoint_law():
    # f = <e n> n : then (fix f) a = a
    e, n = V("e n")
    f = abstract(P, n, "e n")
    fix = kit.fixpoint(f)
    assert run(fix, 33) == 33
    assert run(fix, 33) == run(run(f, fix), 33)


def test_internal_Y():
    e, n = V("e n")
    fact_like = abstract(P, kit.ifte(Const(kit.iszero)(n), Const(num(1)),
                                     Const(kit.add)(n, e(Const(kit.pred)(n)))), "e n")
    tri = run(kit.Y, fact_like)
    assert run(tri, num(4)) == num(11)


CORPUS = {
    "add": (pr_add(), lambda x, y: x + y),
    "mul": (pr_mul(), lambda x, y: x * y),
    "pred": (pr_pred(), lambda x: max(x - 1, 0)),
    "sub": (pr_sub(), lambda x, y: max(x - y, 0)),
    "monus": (pr_monus(), lambda y, x: max(x - y, 0)),
    "mu": (Mu(Comp(pr_sub(), (Proj(2, 2), Comp(Succ(), (Proj(1, 2),))))), lambda x: max(x - 1, 0)),
}


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_host_reference_semantics(name):
    d, ref = CORPUS[name]
    for args in [(3,), (0,), (5,)] if d.arity == 1 else [(3, 4), (0, 2), (6, 1)]:
        assert pr_eval(d, list(args), Fuel(10**6)) == ref(*args)


@pytest.mark.parametrize("name", ["add", "pred", "sub", "mu"])
def test_pr_compiler(name):
    d, ref = CORPUS[name]
    f = kit.compile_pr(d)
    cases = [(3,), (0,), (5,)] if d.arity == 1 else [(3, 2), (0, 2), (4, 1)]
    for args in cases:
        assert run(f, *map(num, args), fuel=10**7) == num(ref(*args))


def test_arity_mismatch_rejected():
    with pytest.raises(ValueError):
        pr_eval(pr_add(), [1], Fuel(10))
    with pytest.raises(ValueError):
        Proj(3, 2)


def test_zero_and_primrec_basics():
    assert pr_eval(Zero(2), [4, 5], Fuel(10)) == 0
    assert pr_eval(PrimRec(Zero(0), Comp(Succ(), (Proj(2, 2),))), [7], Fuel(100)) == 7


def test_lam_keeps_other_variables():
    t = lam(P, "x", V("x")(V("y")))
    out = eval_term(P, substitute(t, {"y": 5})(Const(SUCC)), 100)
    assert out == Value(6)


def test_pred_constant():
    assert run(PRED, 4) == 3

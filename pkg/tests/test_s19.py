import pytest
from hypothesis import given, settings, strategies as st

from pcalab.core import Divergent, Fuel, Value, apply
from pcalab.k1 import K1_PCA, to_int
from pcalab.oracle import apply_functional, at_zero, bounded_E, self_apply
from pcalab.s19 import (S19Machine, app1_t, check_extensional_equiv, compile_s19_to_k1f,
                        drop_t, instantiate, pack, pr_to_s19, read_index, s19_apply, s_ab_t,
                        s19_pca, seq)
from pcalab.toolkit import Comp, Proj, Succ, pr_add, pr_eval, pr_mul, pr_pred

M = S19Machine(at_zero(), 10**5)
SUCC_I = seq(1, 1)


def run(e, *args, m=M):
    out = s19_apply(m, e, list(args))
    return to_int(out.value) if isinstance(out, Value) else out


def test_succ_index_is_25():
    assert SUCC_I == 25 and read_index("<1,1>") == 25
    assert run(25, 4) == 5


@settings(max_examples=40)
@given(st.integers(0, 20), st.integers(0, 20), st.integers(0, 20))
def test_clauses(a, b, c):
    assert run(seq(1, 1), a) == a + 1                                    # S1
    assert run(seq(2, 2, c), a, b) == c                                  # S2
    assert run(seq(3, 3), a, b, c) == a                                  # S3
    assert run(seq(4, 1, seq(3, 2), SUCC_I), a) == a + 1                 # S4: g(h(n), n)
    add = seq(5, 2, seq(3, 1), seq(6, 3, 1, instantiate(drop_t(SUCC_I, 1, 2))))
    assert run(add, a, b) == a + b                                       # S5
    assert run(seq(6, 3, 2, seq(3, 3)), a, b, c) == c                    # S6
    assert run(seq(9, 1, 1), SUCC_I, a, b) == a + 1                      # S9


def test_s8_with_at_zero():
    # F(lambda k. k + n) at zero is n
    add_k = pr_to_s19(pr_add())
    e = seq(8, 1, add_k)
    assert run(e, 7) == 7


def test_s8_bounded_E():
    m = S19Machine(bounded_E(4), 10**5)
    # lambda k. pred(k) + n is zero somewhere below 4 iff n == 0
    h = pr_to_s19(Comp(pr_add(), (Comp(pr_pred(), (Proj(1, 2),)), Proj(2, 2))))
    e = seq(8, 1, h)
    assert run(e, 0, m=m) == 0
    assert run(e, 3, m=m) == 1


def test_s7_and_unknown_tags_diverge():
    assert isinstance(run(seq(7, 1, 0), 3), Divergent)
    assert isinstance(run(seq(12, 1), 3), Divergent)
    assert isinstance(run(seq(1, 1), 3, 4), Divergent)


@pytest.mark.parametrize("d,ref", [(pr_add(), lambda x, y: x + y), (pr_mul(), lambda x, y: x * y),
                                   (pr_pred(), lambda x: max(x - 1, 0)),
                                   (Comp(pr_add(), (Proj(1, 1), Succ())), lambda x: 2 * x + 1)])
def test_pr_translation(d, ref):
    e = pr_to_s19(d)
    for args in ([3], [0], [6]) if d.arity == 1 else ([3, 4], [0, 5], [2, 0]):
        assert run(e, *args) == ref(*args) == pr_eval(d, args, Fuel(10**5))


def test_app1_template():
    assert run(instantiate(app1_t(SUCC_I)), 9) == 10


def test_s19_k_small():
    # the index arithmetic is unary, so only small first arguments are affordable
    p = s19_pca(at_zero())
    for a in (0, 1, 2):
        f = Fuel(10**6)
        assert p.app(p.app(p.k, a, f), 8, f) == a


def test_s_template():
    # the index s a b computes, built directly
    sab = instantiate(s_ab_t(), [seq(2, 1, SUCC_I), seq(3, 1)])
    assert run(sab, 4) == 5


def test_compiled_agrees():
    for F in (at_zero(), self_apply(), bounded_E(4)):
        for e in (SUCC_I, seq(2, 1, 9), seq(3, 1)):
            rep = check_extensional_equiv(compile_s19_to_k1f(e), e, F, range(4), 10**6)
            assert rep.ok and rep.undecided == 0, rep.lines()


def test_compiled_multi_arity():
    c = compile_s19_to_k1f(seq(3, 2), 2)
    out, _ = apply_functional(K1_PCA, at_zero(), c, pack([4, 6]), 10**6)
    assert out == Value(4)


def test_interpreter_charges_fuel():
    out = s19_apply(S19Machine(at_zero(), 1), seq(4, 1, seq(3, 2), SUCC_I), [1])
    assert not isinstance(out, Value)
    assert isinstance(apply(s19_pca(at_zero()), 25, 3, 10), Value)

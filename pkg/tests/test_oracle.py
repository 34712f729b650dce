import pytest
from hypothesis import given, settings, strategies as st

from pcalab.core import Divergent, Exhausted, Value, apply, laws_check, random_triples
from pcalab.k1 import K1_PCA, SUCC, code
from pcalab.oracle import (Dialogue, apply_functional, apply_oracle, at_zero, bounded_E,
                           builtin_functional, builtin_oracle, combine_functionals,
                           constant_index, decider, functional_pca, lift_index, lift_through,
                           oracle_pca, oracle_queries, query_index, self_apply)

P = K1_PCA
double = builtin_oracle("double", P)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 200))
def test_query_index_asks_once(n):
    out, log = apply_oracle(P, double, query_index(P), n, 10**6)
    assert out == Value(2 * n)
    assert log.rounds == [(n, 2 * n)] and log.status == "HALT"


def test_lift_has_no_rounds():
    out, log = apply_oracle(P, double, lift_index(P, SUCC), 9, 10**6)
    assert out == Value(10) and log.rounds == []


def test_transcript_lines():
    _, log = apply_oracle(P, double, query_index(P), 7, 10**6)
    assert log.lines(P) == ["ROUND 0 QUERY 7 ANSWER 14", "HALT 14"]


def test_partial_oracle_undefined():
    half = builtin_oracle("half", P)
    out, log = apply_oracle(P, half, query_index(P), 3, 10**6)
    assert isinstance(out, Divergent)
    assert log.status == "ORACLE-UNDEFINED" and log.lines(P)[-1] == "ORACLE-UNDEFINED 3"


def test_bad_reply_diverges():
    # k: reply is "k u", not a literal pair
    out, log = apply_oracle(P, double, 0, 3, 10**6)
    assert isinstance(out, Divergent) and log.status == "DIVERGENT"


def test_exhaustion():
    out, log = apply_oracle(P, double, query_index(P), 3, 50)
    assert isinstance(out, Exhausted) and log.lines(P) == ["EXHAUSTED"]


def test_unknown_oracle():
    with pytest.raises(KeyError):
        builtin_oracle("nope")


def test_relative_combinators():
    q = oracle_pca(P, double)
    assert apply(q, q.kit.i, 5, 10**6) == Value(5)
    kab = apply(q, q.k, 4, 10**6).value
    assert apply(q, kab, 9, 10**6) == Value(4)
    pr = q.kit.mk_pair(3, 8)
    assert apply(q, q.kit.p0, pr, 10**6) == Value(3)
    assert apply(q, q.kit.p1, pr, 10**6) == Value(8)


def test_decider_maps_booleans():
    q = oracle_pca(P, double)
    d = decider(P, q)
    assert apply(q, d, P.kit.T, 10**6) == Value(q.kit.T)
    assert apply(q, d, P.kit.F, 10**6) == Value(q.kit.F)


def test_oracle_laws_small():
    q = oracle_pca(P, double)
    rep = laws_check(q, random_triples(q, 20, 1), 10**5)
    assert rep.ok, rep.lines()


def test_nested_queries():
    inner = oracle_pca(P, builtin_oracle("double", P))
    outer = oracle_pca(inner, builtin_oracle("succ", P))
    H = oracle_queries(outer)
    assert set(H) == {"double", "succ"}
    assert apply(outer, H["succ"], 4, 10**6) == Value(5)
    assert apply(outer, H["double"], 4, 4 * 10**6) == Value(8)
    assert apply(outer, lift_through(outer, SUCC), 4, 4 * 10**6) == Value(5)


def test_functionals_at_zero():
    for c in range(4):
        out, depth = apply_functional(P, at_zero(), query_index(P), constant_index(P, c), 10**6)
        assert out == Value(c) and depth == 1


def test_self_apply():
    # g = lifted succ: F(g) = g(g(0)) = 2
    out, depth = apply_functional(P, self_apply(), query_index(P), lift_index(P, SUCC), 10**6)
    assert out == Value(2) and depth == 1


def test_bounded_E_strict_probes():
    F = bounded_E(3)
    # identity: g(0) = 0 so the answer is 0
    out, _ = apply_functional(P, F, query_index(P), lift_index(P, P.kit.i), 10**6)
    assert out == Value(0)
    # constant 5: never zero, answer 1
    out, _ = apply_functional(P, F, query_index(P), constant_index(P, 5), 10**6)
    assert out == Value(1)
    # non-applicable g: the probe diverges, so does F
    out, _ = apply_functional(P, F, query_index(P), code(12), 10**6)
    assert isinstance(out, Divergent)


def test_depth_budget():
    out, _ = apply_functional(P, at_zero(), query_index(P), constant_index(P, 1), 10**6, depth=0)
    assert isinstance(out, Exhausted)


def test_combined_functional_names():
    H = combine_functionals(at_zero(), self_apply())
    assert H.name == "pair(at_zero,self_apply)" and H.query_bound == 3
    assert builtin_functional("bounded_E(4)").name == "bounded_E(4)"
    with pytest.raises(KeyError):
        builtin_functional("sup")


def test_functional_trace():
    log = Dialogue()
    apply_functional(P, at_zero(), query_index(P), constant_index(P, 6), 10**6, log=log)
    assert log.lines(P)[-1] == "HALT 6"


def test_functional_pca_names():
    assert functional_pca(P, bounded_E(8)).name == "k1[bounded_E(8)]"
    assert oracle_pca(P, double).name == "k1[double]"

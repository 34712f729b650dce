from pcalab.k1 import K1_PCA, SUCC, code
from pcalab.morphisms import (MorphismSpec, Report, check_applicative, check_decider,
                              check_effective_operation, check_I1, check_preorder, compose,
                              functional_on_host, identity_spec, inclusion_spec)
from pcalab.oracle import (at_zero, builtin_oracle, constant_index, functional_pca, lift_index,
                           oracle_pca, query_index)
from pcalab.core import Value

P = K1_PCA
PAIRS = [(SUCC, 3), (P.kit.i, 7), (P.k, 2), (code(3, 0), 0)]


def test_identity():
    ms = identity_spec(P)
    assert check_applicative(ms, PAIRS, 10**5).ok
    assert check_decider(ms, 10**5).ok


def test_wrong_realizer_fails():
    ms = identity_spec(P)
    bad = MorphismSpec(P, P, ms.relation, P.k, None, "bad")
    rep = check_applicative(bad, PAIRS, 10**5)
    assert not rep.ok and rep.lines()[-1] == f"FAIL {len(rep.failures)} of {rep.checked}"
    assert check_decider(bad, 100).lines()[-1] == "FAIL 1 of 0"


def test_inclusion_and_composition():
    q = oracle_pca(P, builtin_oracle("double", P))
    iota = inclusion_spec(P, q)
    assert check_applicative(iota, PAIRS, 10**6).ok
    assert check_decider(iota, 10**6).ok
    both = compose(identity_spec(P), iota)
    assert check_applicative(both, PAIRS[:2], 10**6).ok
    assert both.name == "iota_k1[double].id_k1"


def test_compose_rejects_mismatch():
    import pytest
    q = oracle_pca(P, builtin_oracle("double", P))
    with pytest.raises(ValueError):
        compose(inclusion_spec(P, q), identity_spec(P))


def test_preorder():
    ms = identity_spec(P)
    assert check_preorder(ms, ms, P.kit.i, [0, 3, SUCC]).ok
    assert not check_preorder(ms, ms, SUCC, [0, 3]).ok


def test_I1():
    assert check_I1(P, SUCC, lambda n: n + 1, range(10), 100).ok
    assert not check_I1(P, SUCC, lambda n: n, range(3), 100).ok
    assert check_I1(P, SUCC, lambda n: None, range(3), 100).checked == 0


def test_functional_on_host():
    assert functional_on_host(at_zero(), lambda n: n + 4, 100) == Value(4)


def test_effective_operation():
    q = functional_pca(P, at_zero())
    e = query_index(P)
    idx = [(constant_index(P, c), lambda n, c=c: c) for c in range(3)]
    idx.append((lift_index(P, SUCC), lambda n: n + 1))
    rep = check_effective_operation(q, e, at_zero(), idx, 10**6)
    assert rep.ok and rep.checked == 4


def test_report_lines():
    r = Report(2)
    r.fail("x", "1", "2")
    assert r.lines() == ["FAIL x expected 1 got 2", "FAIL 1 of 2"]

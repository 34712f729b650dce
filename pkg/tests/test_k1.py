from math import isqrt

from hypothesis import given, settings, strategies as st

from pcalab.core import Divergent, Fuel, Value, apply, laws_check, random_triples
from pcalab.k1 import (IFZ, K, K1_PCA, LIMIT, PRED, SUCC, S, PairCode, canonical, code,
                       decode_seq, encode_seq, k1_apply, pair_nat, parse_code, pred_code,
                       show_code, succ_code, to_int, unpair_nat)


# reference semantics on plain integers, written independently
def ref_pair(x, y):
    return (x + y) * (x + y + 1) // 2 + y


def ref_unpair(n):
    w = isqrt(2 * n)
    while w * (w + 1) // 2 > n:
        w -= 1
    y = n - w * (w + 1) // 2
    return w - y, y


def ref_apply(n, m, steps):
    steps[0] -= 1
    if steps[0] < 0:
        return "EXHAUSTED"
    tag, x = ref_unpair(n)
    if tag == 0:
        return ref_pair(1, m)
    if tag == 1:
        return x
    if tag == 2:
        return ref_pair(3, m)
    if tag == 3:
        return ref_pair(4, ref_pair(x, m))
    if tag == 4:
        a, b = ref_unpair(x)
        l = ref_apply(a, m, steps)
        if l in ("EXHAUSTED", "DIVERGENT"):
            return l
        r = ref_apply(b, m, steps)
        if r in ("EXHAUSTED", "DIVERGENT"):
            return r
        return ref_apply(l, r, steps)
    if tag == 5:
        return m + 1
    if tag == 6:
        return max(m - 1, 0)
    if tag == 7:
        return ref_pair(8, m)
    if tag == 8:
        return ref_pair(9, ref_pair(x, m))
    if tag == 9:
        c, a = ref_unpair(x)
        return a if c == 0 else m
    return "DIVERGENT"


def test_frozen_primitive_codes():
    # K0 = <0,0>, S0 = <2,0> so S = 3, SUCC = <5,0> = 15, PRED = <6,0> = 21, IFZ = <7,0> = 28
    assert (K, S, SUCC, PRED, IFZ) == (0, 3, 15, 21, 28)
    # i = s k k = S2(pair(0, 0)) = pair(4, 0) = 10, F = k i = pair(1, 10) = 76
    assert K1_PCA.kit.i == 10
    assert K1_PCA.kit.F == 76
    assert K1_PCA.kit.T == 0


def test_worked_applications():
    assert apply(K1_PCA, SUCC, 7, 10) == Value(8)
    assert apply(K1_PCA, PRED, 0, 10) == Value(0)
    assert apply(K1_PCA, 10, 7, 10) == Value(7)
    assert isinstance(apply(K1_PCA, code(10), 1, 10), Divergent)


@settings(max_examples=300)
@given(st.integers(0, 2000), st.integers(0, 2000))
def test_pairing_matches_reference(x, y):
    assert pair_nat(x, y) == ref_pair(x, y)
    assert unpair_nat(ref_pair(x, y)) == (x, y)


@settings(max_examples=300)
@given(st.integers(0, 3000), st.integers(0, 3000))
def test_machine_matches_reference(n, m):
    steps = [200]
    want = ref_apply(n, m, steps)
    got = k1_apply(n, m, 200)
    if want == "EXHAUSTED":
        assert not isinstance(got, Value)
    elif want == "DIVERGENT":
        assert isinstance(got, Divergent)
    else:
        assert got == Value(canonical(want))


@settings(max_examples=200)
@given(st.integers(0, 2**200))
def test_big_codes_are_canonical(n):
    c = canonical(n)
    assert (type(c) is int) == (n < LIMIT)
    assert to_int(c) == n
    assert to_int(succ_code(c)) == n + 1
    assert to_int(pred_code(c)) == max(n - 1, 0)
    assert parse_code(show_code(c)) == c


def test_paircode_equality_is_structural():
    a = pair_nat(2**40, 2**40)
    b = pair_nat(2**40, 2**40)
    assert isinstance(a, PairCode) and a == b and hash(a) == hash(b)
    assert a != pair_nat(2**40, 2**40 + 1)


@given(st.lists(st.integers(0, 10**30), max_size=6))
def test_sequence_coding_roundtrip(items):
    assert [to_int(x) for x in decode_seq(encode_seq([canonical(i) for i in items]))] == items


def test_sequence_frozen():
    # <1,1> = pair(2, pair(1, pair(1, 0))) = pair(2, 4) = 25
    assert encode_seq([1, 1]) == 25
    assert parse_code("<1,1>") == 25
    assert parse_code("#(2, 4)") == 25


def test_show_abbreviates():
    big = encode_seq([encode_seq([2**70, 5]), 3])
    assert show_code(big).startswith("#(")
    assert show_code(big, 10).endswith("...")


def test_k1_laws():
    rep = laws_check(K1_PCA, random_triples(K1_PCA, 100, 3), 10**5)
    assert rep.ok, rep.lines()


def test_k1_fuel_per_rule():
    # s k k 5: S2 fires, K0 twice, K1 once = 4 rule firings
    f = Fuel(4)
    assert K1_PCA.app(10, 5, f) == 5 and f.remaining == 0

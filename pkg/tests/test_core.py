import random

import pytest
from hypothesis import given, settings, strategies as st

from pcalab.core import (EXHAUSTED, App, Const, ConsistentSoFar, Divergent, Diverges, Fuel,
                         FreeVariableError, OutOfFuel, Pca, TrivialPca, Value, Var, Violated,
                         Witnessed, apply, apps, compare_outcomes, eval_term, free_vars,
                         kleene_refines, laws_check, random_triples, run_fueled, show_term,
                         substitute, unwrap)


class Counter(Pca):
    """Toy structure: k = 'k', s = 's'; naturals apply by addition, 'loop' never stops."""
    name = "toy"
    k, s = "k", "s"

    def app(self, a, b, fuel):
        fuel.tick()
        if a == "loop":
            while True:
                fuel.tick()
        if a == "bad":
            raise Diverges("bad")
        if isinstance(a, int) and isinstance(b, int):
            return a + b
        raise Diverges("no rule")


def test_fuel_ticks_and_runs_out():
    f = Fuel(3)
    f.tick()
    f.tick(2)
    assert f.remaining == 0
    with pytest.raises(OutOfFuel):
        f.tick()
    with pytest.raises(ValueError):
        Fuel(-1)


def test_outcomes():
    p = Counter()
    assert apply(p, 2, 3, 10) == Value(5)
    assert apply(p, "loop", 0, 100) == EXHAUSTED
    out = apply(p, "bad", 0, 10)
    assert isinstance(out, Divergent) and out.reason == "bad"
    assert Divergent("x") == Divergent("y")


def test_unwrap_roundtrip():
    for o in (Value(1), EXHAUSTED, Divergent("r")):
        assert run_fueled(lambda f: unwrap(o), 5) == o


def test_shared_fuel_across_a_term():
    p = Counter()
    t = apps(1, 2)
    assert eval_term(p, App(Const(1), t), 2) == Value(4)
    assert eval_term(p, App(Const(1), t), 1) == EXHAUSTED


def test_terms():
    x, y = Var("x"), Var("y")
    t = x(y, Const(3))
    assert free_vars(t) == {"x", "y"}
    assert show_term(t) == "x y 3"
    assert show_term(Const(1)(x(y))) == "1 (x y)"
    assert free_vars(substitute(t, {"x": 1})) == {"y"}
    with pytest.raises(FreeVariableError):
        eval_term(Counter(), t, 10)


def test_refinement_verdicts():
    p = Counter()
    assert compare_outcomes(p, Value(1), Value(1)) == Witnessed(1)
    assert isinstance(compare_outcomes(p, Value(1), Value(2)), Violated)
    assert isinstance(compare_outcomes(p, Divergent(), Value(2)), Violated)
    assert compare_outcomes(p, EXHAUSTED, Value(2)) == ConsistentSoFar()
    assert compare_outcomes(p, Value(2), Divergent()) == ConsistentSoFar()
    assert kleene_refines(p, apps(1, 1), apps(2, 0), 10) == Witnessed(2)


def test_trivial_laws():
    p = TrivialPca()
    rep = laws_check(p, random_triples(p, 10), 100, strict=True)
    assert rep.ok and rep.witnessed == 10
    assert rep.lines() == ["PASS"]


def test_laws_report_failure_lines():
    rep = laws_check(Counter(), [(1, 2, 3)], 100)
    assert not rep.ok
    assert rep.lines()[-1] == "FAIL 2 of 1"


@settings(max_examples=50)
@given(st.integers(0, 10**6), st.integers(1, 40))
def test_seeded_sampling_is_reproducible(seed, n):
    p = TrivialPca()
    assert random_triples(p, n, seed) == random_triples(p, n, seed)


@given(st.integers(0, 50), st.integers(0, 50))
def test_fuel_is_monotone(a, b):
    # more fuel never turns a value into something else
    p = Counter()
    t = apps(a, b)
    small, big = eval_term(p, t, 1), eval_term(p, t, 100)
    if isinstance(small, Value):
        assert big == small


def test_random_is_not_global():
    random.seed(1)
    a = random_triples(TrivialPca(), 3, 7)
    random.seed(2)
    assert random_triples(TrivialPca(), 3, 7) == a

"""Relativized structures: ``A[f]`` through f-dialogues, ``A[F]`` through
recursive dialogues.

Application ``a ._f b`` runs the dialogue loop::

    u := []
    r := a ([b] * u)            in the base
    r = p T c   ->  halt with c
    r = p F v   ->  append f(v) to u and repeat

For a type-2 functional ``F`` the answer to a query ``v`` is ``F(g)`` where
``g`` is the function ``w |-> v ._F w``, itself computed by dialogues one
level deeper.  The depth budget plays the role of the stage index.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable

from .core import (EXHAUSTED, Const, Divergent, Diverges, Fuel, OutOfFuel, Outcome, Pca,
                   Value, run_fueled, unwrap)
from .toolkit import Kit, V, abstract, lam

OracleFn = Callable[[Any, Fuel], Outcome]

DEFAULT_DEPTH = 64


# -- transcripts ---------------------------------------------------------------

@dataclass
class Dialogue:
    rounds: list = field(default_factory=list)   # (query, answer) pairs
    status: str = "EXHAUSTED"  # HALT | EXHAUSTED | ORACLE-UNDEFINED | DIVERGENT
    value: Any = None          # halting value, or the query f was undefined at
    reason: str = ""

    def lines(self, p: Pca) -> list[str]:
        out = [f"ROUND {i} QUERY {p.show(q)} ANSWER {p.show(a)}"
               for i, (q, a) in enumerate(self.rounds)]
        if self.status in ("HALT", "ORACLE-UNDEFINED"):
            out.append(f"{self.status} {p.show(self.value)}")
        elif self.status == "DIVERGENT":
            out.append(f"DIVERGENT {self.reason}".rstrip())
        else:
            out.append("EXHAUSTED")
        return out


class _Undefined(Exception):
    def __init__(self, query, outcome: Outcome):
        super().__init__(query)
        self.query = query
        self.outcome = outcome


def _dialogue(p: Pca, probe: OracleFn, a, b, fuel: Fuel, log: Dialogue | None):
    kit = p.kit
    answers: list = []
    while True:
        u = kit.tuple([b, *answers], fuel)
        r = p.app(a, u, fuel)
        parts = kit.split(r, fuel)
        if parts is None:
            raise Diverges(f"round {len(answers)}: reply is not a pair")
        head, c = parts
        if p.equal(head, kit.T):
            return c
        if not p.equal(head, kit.F):
            raise Diverges(f"round {len(answers)}: reply head is not a boolean")
        out = probe(c, fuel)
        if not isinstance(out, Value):
            raise _Undefined(c, out)
        answers.append(out.value)
        if log is not None:
            log.rounds.append((c, out.value))


def _run(p: Pca, probe: OracleFn, a, b, fuel: Fuel, log: Dialogue | None):
    try:
        return _dialogue(p, probe, a, b, fuel, log)
    except _Undefined as exc:
        if log is not None:
            log.status, log.value = "ORACLE-UNDEFINED", exc.query
        return unwrap(exc.outcome)


def apply_oracle(p: Pca, f: OracleFn, a, b, fuel: int | Fuel) -> tuple[Outcome, Dialogue]:
    """``a ._f b`` with its transcript."""
    log = Dialogue()
    out = run_fueled(lambda fu: _run(p, f, a, b, fu, log), fuel)
    _close(log, out)
    return out, log


def _close(log: Dialogue, out: Outcome):
    if log.status == "ORACLE-UNDEFINED":
        return
    if isinstance(out, Value):
        log.status, log.value = "HALT", out.value
    elif isinstance(out, Divergent):
        log.status, log.reason = "DIVERGENT", out.reason


# -- the relativizing combinators ------------------------------------------------

def query_index(p: Pca):
    """``q`` with ``q ._f v ~= f(v)``: ask once, then return the answer.

    On ``[v]`` it replies ``p F v``; on ``[v, a, ..]`` it replies ``p T a``.
    The length numeral ``n`` is told apart by ``p0 (p1 n)``, which is ``T``
    exactly for ``n = 1``, so no recursion is needed.
    """
    def build():
        kit = p.kit
        u = V("u")
        PR, P0, P1 = (Const(x) for x in (kit.pair, kit.p0, kit.p1))
        one = P0(P1(P0(u)))
        ask = PR(Const(kit.F), P0(P1(u)))
        done = PR(Const(kit.T), P0(P1(P1(u))))
        return abstract(p, one(ask, done), "u")
    return p.memo("query_index", build)


def _lifter(p: Pca):
    """``L = <a u> p T (a (proj 0 u))``, so ``L a`` is the lift of ``a``."""
    def build():
        kit = p.kit
        a, u = V("a u")
        C = Const
        body = C(kit.pair)(C(kit.T), a(C(kit.p0)(C(kit.p1)(u))))
        return abstract(p, body, "a u")
    return p.memo("lifter", build)


def lift_index(p: Pca, a):
    """``a'`` with ``a' ._f b ~= a b`` for every oracle: never queries."""
    return _build_app(p, _lifter(p), a)


def _build_app(p: Pca, f, x):
    out = run_fueled(lambda fu: p.app(f, x, fu), 10**6)
    if not isinstance(out, Value):
        raise RuntimeError(f"{p.name}: partial application failed to denote")
    return out.value


def oracle_k(p: Pca):
    """``<u> p T (L (k (proj 0 u)))``."""
    def build():
        kit = p.kit
        u = V("u")
        C = Const
        body = C(kit.pair)(C(kit.T), C(_lifter(p))(C(p.k)(C(kit.p0)(C(kit.p1)(u)))))
        return abstract(p, body, "u")
    return p.memo("oracle_k", build)


def _tail(p: Pca):
    """``[a1 .. an] |-> [a2 .. an]`` in constant time: ``p (p1 n) (p1 body)``."""
    def build():
        kit = p.kit
        t = V("t")
        PR, P0, P1 = (Const(x) for x in (kit.pair, kit.p0, kit.p1))
        return abstract(p, PR(P1(P0(t)), P1(P1(t))), "t")
    return p.memo("tail", build)


def _runner(p: Pca):
    """``RUN f q ans``: continue sub-dialogue ``f`` from query tuple ``q``.

    Feeds it the answers in the tuple ``ans`` one by one.  Returns
    ``p T (p c rest)`` when it halts with ``c``, leaving ``rest`` unconsumed,
    or ``p F v`` when it asks ``v`` beyond the supplied answers.  Only a
    sub-dialogue that actually asks pays for extending ``q``.
    """
    def build():
        kit = p.kit
        C = Const
        PR, P0, P1, T, F = (C(x) for x in (kit.pair, kit.p0, kit.p1, kit.T, kit.F))
        e, f, q, ans, r = V("e f q ans r")
        empty = P0(P0(ans))
        head = P0(P1(ans))
        more = C(kit.concat)(q, C(kit.single)(head))
        check_body = kit.ifte(
            P0(r),
            PR(T, PR(P1(r), ans)),
            kit.ifte(empty, PR(F, P1(r)), e(f, more, C(_tail(p))(ans))))
        check = abstract(p, check_body, "e f q ans r")
        return kit.recursive("e f q ans", C(check)(e, f, q, ans, f(q)))
    return p.memo("runner", build)


def _bind(p: Pca):
    """``BIND r k``: on a halted sub-dialogue ``p T (p c rest)`` continue with ``k c rest``."""
    def build():
        kit = p.kit
        PR, P0, P1 = (Const(x) for x in (kit.pair, kit.p0, kit.p1))
        r, k = V("r k")
        return abstract(p, kit.ifte(P0(r), k(P0(P1(r)), P1(P1(r))), r), "r k")
    return p.memo("bind", build)


def _fin(p: Pca):
    """``FIN r``: the reply of a finished (or still asking) sub-dialogue."""
    def build():
        kit = p.kit
        PR, P0, P1, T = (Const(x) for x in (kit.pair, kit.p0, kit.p1, kit.T))
        r = V("r")
        return abstract(p, kit.ifte(P0(r), PR(T, P0(P1(r))), r), "r")
    return p.memo("fin", build)


def oracle_s(p: Pca):
    """``s_f = <u> p T (S1 (head u))`` with ``S1 = <a u> p T (S2 a (head u))``.

    ``S2 a b`` answers ``[c] * ans`` by threading the three sub-dialogues
    ``a c``, ``b c`` and ``x y`` through the common answer list.
    """
    def build():
        kit = p.kit
        C = Const
        PR, P0, P1, T = (C(x) for x in (kit.pair, kit.p0, kit.p1, kit.T))
        RUN, ONE, B, FIN = C(_runner(p)), C(kit.single), C(_bind(p)), C(_fin(p))
        a, b, u, x, y, rest, rest2 = V("a b u x y rest rest2")
        c = P0(P1(u))
        third = lam(p, "y rest2", FIN(RUN(x, ONE(y), rest2)))
        second = lam(p, "x rest", B(RUN(b, ONE(c), rest), third))
        body = B(RUN(a, ONE(c), C(_tail(p))(u)), second)
        s2 = abstract(p, body, "a b u")
        s1 = abstract(p, PR(T, C(s2)(a, P0(P1(u)))), "a u")
        return abstract(p, PR(T, C(s1)(P0(P1(u)))), "u")
    return p.memo("oracle_s", build)


def _selector(p: Pca, arg):
    """``<u> FIN (RUN (head u) [arg] (tail u))``: ``z |-> z ._f arg``."""
    kit = p.kit
    C = Const
    P0, P1 = C(kit.p0), C(kit.p1)
    u = V("u")
    run = C(_runner(p))(P0(P1(u)), C(kit.single)(C(arg)), C(_tail(p))(u))
    return abstract(p, C(_fin(p))(run), "u")


def _pairing(p: Pca):
    """Relative pairing ``x |-> y |-> z |-> (z ._f x) ._f y`` with two sub-dialogues."""
    def build():
        kit = p.kit
        C = Const
        P0, P1, ONE = C(kit.p0), C(kit.p1), C(kit.single)
        RUN, B, FIN = C(_runner(p)), C(_bind(p)), C(_fin(p))
        x, y, u, c, rest = V("x y u c rest")
        second = lam(p, "c rest", FIN(RUN(c, ONE(y), rest)))
        w = abstract(p, B(RUN(P0(P1(u)), ONE(x), C(_tail(p))(u)), second), "x y u")
        lifter = C(_lifter(p))
        return lift_index(p, abstract(p, lifter(C(w)(x)), "x"))
    return p.memo("relative_pair", build)


class RelativeKit(Kit):
    """Kit of a relativization ``A[f]`` or ``A[F]`` of ``A``.

    ``i``, pairing and projections are dialogue programs written directly
    over ``A`` rather than abstractions over the relative ``k`` and ``s``;
    they satisfy the same equations with far fewer sub-dialogues.
    """

    def __init__(self, q: Pca):
        super().__init__(q)
        self.base = q.base

    @cached_property
    def i(self):
        return lift_index(self.base, self.base.kit.i)

    @cached_property
    def pair(self):
        return _pairing(self.base)

    @cached_property
    def p0(self):
        return _selector(self.base, self.T)

    @cached_property
    def p1(self):
        return _selector(self.base, self.F)


# -- A[f] ------------------------------------------------------------------------

class OraclePca(Pca):
    """``A[f]``: same carrier as ``A``, application by f-dialogues."""

    def __init__(self, base: Pca, f: OracleFn, name: str | None = None):
        self.base = base
        self.f = f
        self.name = name or f"{base.name}[{getattr(f, '__name__', 'f')}]"

    @property
    def k(self):
        return oracle_k(self.base)

    @property
    def s(self):
        return oracle_s(self.base)

    def app(self, a, b, fuel):
        return _run(self.base, self.f, a, b, fuel, None)

    @cached_property
    def kit(self):
        return RelativeKit(self)

    def equal(self, a, b):
        return self.base.equal(a, b)

    def show(self, a):
        return self.base.show(a)

    def brief(self, a, limit: int = 80):
        return self.base.brief(a, limit)

    def read(self, text):
        return self.base.read(text)

    def nat(self, n):
        return self.base.nat(n)

    def to_nat(self, x):
        return self.base.to_nat(x)

    def sample(self, rng: random.Random):
        return _sample_relative(self, rng)

    @property
    def is_trivial(self):
        return self.base.is_trivial


def _sample_relative(q: Pca, rng: random.Random):
    """Base data, lifted base programs, and the structure's own combinators."""
    base = q.base
    roll = rng.random()
    if roll < 0.15:
        return base.sample(rng)
    if roll < 0.6:
        return lift_index(base, base.sample(rng))
    pool = [q.k, q.s, query_index(base), q.kit.i]
    x = rng.choice(pool)
    if roll < 0.8:
        return x
    out = run_fueled(lambda fu: q.app(x, rng.choice(pool + [base.sample(rng)]), fu), 10**4)
    return out.value if isinstance(out, Value) else x


def oracle_pca(p: Pca, f: OracleFn, name: str | None = None) -> OraclePca:
    return OraclePca(p, f, name)


def lift_through(q: Pca, a):
    """Lift an element of the innermost base through every oracle layer of ``q``."""
    if not isinstance(q, OraclePca):
        return a
    return lift_index(q.base, lift_through(q.base, a))


def oracle_queries(q: Pca) -> dict:
    """Oracle name -> an index in ``q`` of that oracle, for nested ``A[f][g]..``.

    The outermost oracle is asked directly; inner ones through lifted
    query indices of the layer that owns them.
    """
    if not isinstance(q, OraclePca):
        return {}
    out = {name: lift_index(q.base, e) for name, e in oracle_queries(q.base).items()}
    out[getattr(q.f, "__name__", "f")] = query_index(q.base)
    return out


# -- builtin oracles (naturals as carrier data) ------------------------------------

def host_oracle(name: str, fn: Callable[[int], int | None], p: Pca | None = None) -> OracleFn:
    """Wrap a host partial function on naturals; ``None`` means undefined."""
    def oracle(v, fuel: Fuel) -> Outcome:
        try:
            fuel.tick()
        except OutOfFuel:
            return EXHAUSTED
        n = p.to_nat(v) if p is not None else v
        if not isinstance(n, int):
            return Divergent(f"{name}: query is not a natural")
        out = fn(n)
        if out is None:
            return Divergent(f"{name} undefined at {n}")
        return Value(p.nat(out) if p is not None else out)
    oracle.__name__ = name
    return oracle


ORACLES: dict[str, Callable[[int], int | None]] = {
    "double": lambda n: 2 * n,
    "identity": lambda n: n,
    "succ": lambda n: n + 1,
    "square": lambda n: n * n,
    "half": lambda n: n // 2 if n % 2 == 0 else None,   # partial: odd inputs undefined
    "undef5": lambda n: None if n == 5 else n,
}


def builtin_oracle(name: str, p: Pca | None = None) -> OracleFn:
    if name not in ORACLES:
        raise KeyError(f"unknown oracle {name!r}; known: {', '.join(sorted(ORACLES))}")
    return host_oracle(name, ORACLES[name], p)


# -- A[F] ------------------------------------------------------------------------

class Handle:
    """The function ``w |-> v ._F w`` handed to a functional."""

    def __init__(self, p: Pca, call: Callable[[Any, Fuel], Outcome], bound: int | None):
        self.p = p
        self._call = call
        self._bound = bound
        self.probes: dict = {}

    def __call__(self, w, fuel: Fuel) -> Outcome:
        key = w
        if key in self.probes:
            return self.probes[key]
        if self._bound is not None and len(self.probes) >= self._bound:
            return Divergent("functional exceeded its query bound")
        out = self._call(w, fuel)
        self.probes[key] = out
        return out

    def nat(self, n: int):
        return self.p.nat(n)

    def is_zero(self, x) -> bool:
        return self.p.to_nat(x) == 0

    def pair(self, x, y, fuel: Fuel):
        return self.p.kit.mk_pair(x, y, fuel)


@dataclass(frozen=True)
class Functional:
    name: str
    fn: Callable[[Handle, Fuel], Outcome]
    query_bound: int

    def __call__(self, h: Handle, fuel: Fuel) -> Outcome:
        return self.fn(h, fuel)


def at_zero() -> Functional:
    return Functional("at_zero", lambda g, fuel: g(g.nat(0), fuel), 1)


def self_apply() -> Functional:
    def fn(g, fuel):
        x = g(g.nat(0), fuel)
        return g(x.value, fuel) if isinstance(x, Value) else x
    return Functional("self_apply", fn, 2)


def bounded_E(n: int) -> Functional:
    """``0`` if ``g(m) = 0`` for some ``m < n``, else ``1``; strict in each probe."""
    def fn(g, fuel):
        for m in range(n):
            r = g(g.nat(m), fuel)
            if not isinstance(r, Value):
                return r
            if g.is_zero(r.value):
                return Value(g.nat(0))
        return Value(g.nat(1))
    return Functional(f"bounded_E({n})", fn, n)


def combine_functionals(F: Functional, G: Functional) -> Functional:
    """``H(g) = p F(g) G(g)``."""
    def fn(g, fuel):
        x = F(g, fuel)
        if not isinstance(x, Value):
            return x
        y = G(g, fuel)
        if not isinstance(y, Value):
            return y
        return run_fueled(lambda fu: g.pair(x.value, y.value, fu), fuel)
    return Functional(f"pair({F.name},{G.name})", fn, F.query_bound + G.query_bound)


def builtin_functional(name: str) -> Functional:
    if name == "at_zero":
        return at_zero()
    if name == "self_apply":
        return self_apply()
    if name.startswith("bounded_E"):
        digits = name[len("bounded_E"):].strip("()_")
        return bounded_E(int(digits) if digits else 8)
    raise KeyError(f"unknown functional {name!r}; known: at_zero, self_apply, bounded_E(N)")


def _functional_probe(p: Pca, F: Functional, depth: int, used: list) -> OracleFn:
    """Oracle answering query ``v`` with ``F(w |-> v ._F w)`` one level down."""
    def probe(v, fuel: Fuel) -> Outcome:
        if depth <= 0:
            return EXHAUSTED
        def call(w, fu):
            inner = [0]
            out = run_fueled(lambda f2: _functional_run(p, F, v, w, f2, depth - 1, inner, None), fu)
            used[0] = max(used[0], 1 + inner[0])
            return out
        used[0] = max(used[0], 1)
        try:
            fuel.tick()
        except OutOfFuel:
            return EXHAUSTED
        return F(Handle(p, call, F.query_bound), fuel)
    return probe


def _functional_run(p, F, a, b, fuel, depth, used, log):
    return _run(p, _functional_probe(p, F, depth, used), a, b, fuel, log)


def apply_functional(p: Pca, F: Functional, a, b, fuel: int | Fuel,
                     depth: int = DEFAULT_DEPTH, log: Dialogue | None = None) -> tuple[Outcome, int]:
    """``a ._F b`` with at most ``depth`` nested levels; returns the depth used."""
    used = [0]
    out = run_fueled(lambda fu: _functional_run(p, F, a, b, fu, depth, used, log), fuel)
    if log is not None:
        _close(log, out)
    return out, used[0]


class FunctionalPca(Pca):
    """``A[F]``: application by recursive dialogues up to a fixed depth."""

    def __init__(self, base: Pca, F: Functional, depth: int = DEFAULT_DEPTH):
        self.base = base
        self.F = F
        self.depth = depth
        self.name = f"{base.name}[{F.name}]"

    @property
    def k(self):
        return oracle_k(self.base)

    @property
    def s(self):
        return oracle_s(self.base)

    def app(self, a, b, fuel):
        return _functional_run(self.base, self.F, a, b, fuel, self.depth, [0], None)

    @cached_property
    def kit(self):
        return RelativeKit(self)

    def equal(self, a, b):
        return self.base.equal(a, b)

    def show(self, a):
        return self.base.show(a)

    def brief(self, a, limit: int = 80):
        return self.base.brief(a, limit)

    def read(self, text):
        return self.base.read(text)

    def nat(self, n):
        return self.base.nat(n)

    def to_nat(self, x):
        return self.base.to_nat(x)

    def sample(self, rng: random.Random):
        return _sample_relative(self, rng)

    @property
    def is_trivial(self):
        return self.base.is_trivial


def functional_pca(p: Pca, F: Functional, depth: int = DEFAULT_DEPTH) -> FunctionalPca:
    return FunctionalPca(p, F, depth)


def decider(p: Pca, q: Pca):
    """Lifted ``<x> x T' F'`` sending the booleans of ``p`` to those of ``q``.

    ``q`` is a relativization of ``p``; it decides the inclusion ``p -> q``.
    """
    x = V("x")
    return lift_index(p, abstract(p, x(q.kit.T, q.kit.F), "x"))


def constant_index(p: Pca, c):
    """An index of the constant function ``c`` in any relativization of ``p``."""
    return lift_index(p, _build_app(p, p.k, c))


__all__ = [
    "Dialogue", "apply_oracle", "query_index", "lift_index", "oracle_k", "oracle_s",
    "OraclePca", "oracle_pca", "RelativeKit", "lift_through", "oracle_queries", "host_oracle",
    "builtin_oracle", "ORACLES",
    "Handle", "Functional", "at_zero", "self_apply", "bounded_E", "combine_functionals",
    "builtin_functional", "apply_functional", "FunctionalPca", "functional_pca",
    "decider", "constant_index", "DEFAULT_DEPTH",
]

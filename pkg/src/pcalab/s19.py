"""Kleene's schemata S1-S9 relative to a functional, and a compiler into K1[F].

Indices are sequence codes ``<x1..xk> = pair(k, pair(x1, .. pair(xk, 0)))``
held in the canonical K1 representation, so very large indices stay cheap.
Schemata (``r`` is the number of arguments)::

    <1,1>(n)                    = n + 1
    <2,r,m>(n1..nr)             = m
    <3,r>(n1..nr)               = n1
    <4,r,g,h>(ns)              ~= {g}({h}(ns), ns)
    <5,r,g,h>(0, ns)           ~= {g}(ns)
    <5,r,g,h>(k+1, ns)         ~= {h}(k, {<5,r,g,h>}(k, ns), ns)
    <6,r,k,g>(n1..nr)          ~= {g}(n(k+1), n1..nk, n(k+2)..nr)    1 <= k < r
    <8,r,h>(ns)                ~= F(lambda k. {h}(k, ns))
    <9,k,l>(m, n1..n(k+l))     ~= {m}(n1..nk)

S7 does not exist.  The paper's forms are S2 and S8 with ``r = 1`` and S5
with ``r = 2``; other arities are a conservative generalization.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Sequence

from .core import (Const, Divergent, Diverges, Exhausted, Fuel, OutOfFuel, Outcome, Pca, Term,
                   Value, run_fueled)
from .k1 import (IFZ, K, K1_PCA, PRED, SUCC, PairCode, canonical, decode_seq, encode_seq,
                 parse_code, show_code, succ_code, to_int, unpair_nat)
from .oracle import DEFAULT_DEPTH, Functional, Handle, apply_functional
from .toolkit import (Comp, Const_, Mu, PRDef, PrimRec, Proj, Succ, Zero, V, abstract,
                      bracket, lam, pr_add)


def seq(*items):
    return encode_seq(items)


_DECODED: dict = {}


def decode_index(e) -> list | None:
    """Components of a schema index, or ``None`` if it is not one."""
    try:
        return _DECODED[e]
    except KeyError:
        pass
    except TypeError:
        return None
    if type(e) is not int and not isinstance(e, PairCode):
        return None
    n, _ = unpair_nat(e)
    d = decode_seq(e, max_len=4) if type(n) is int and 2 <= n <= 4 else None
    if len(_DECODED) < 1 << 16:
        _DECODED[e] = d
    return d


def _small(x) -> int | None:
    return x if type(x) is int else None


# -- the interpreter -------------------------------------------------------------

@dataclass(frozen=True)
class S19Machine:
    F: Functional
    fuel: int = 100_000
    depth: int = DEFAULT_DEPTH


def s19_apply(m: S19Machine, e, args: Sequence) -> Outcome:
    args = [canonical(a) for a in args]
    return run_fueled(lambda fu: _s19(m.F, e, args, fu, m.depth), m.fuel)


def _s19(F: Functional, e, args: list, fuel: Fuel, depth: int):
    """One unit of fuel per clause application."""
    fuel.tick()
    d = decode_index(e)
    if d is None:
        raise Diverges("not a schema index")
    tag, r = d[0], len(args)
    if tag == 1 and d == [1, 1] and r == 1:
        return succ_code(args[0])
    if tag == 2 and len(d) == 3 and d[1] == r:
        return d[2]
    if tag == 3 and len(d) == 2 and d[1] == r and r >= 1:
        return args[0]
    if tag == 4 and len(d) == 4 and d[1] == r:
        v = _s19(F, d[3], args, fuel, depth)
        return _s19(F, d[2], [v, *args], fuel, depth)
    if tag == 5 and len(d) == 4 and d[1] == r and r >= 1:
        k, ns = _small(args[0]), args[1:]
        if k is None:
            fuel.tick(fuel.remaining + 1)
        acc = _s19(F, d[2], ns, fuel, depth)
        for i in range(k):
            fuel.tick()
            acc = _s19(F, d[3], [i, acc, *ns], fuel, depth)
        return acc
    if tag == 6 and len(d) == 4 and d[1] == r:
        k = _small(d[2])
        if k is not None and 1 <= k < r:
            return _s19(F, d[3], [args[k], *args[:k], *args[k + 1:]], fuel, depth)
    if tag == 8 and len(d) == 3 and d[1] == r:
        return _apply_F(F, d[2], args, fuel, depth)
    if tag == 9 and len(d) == 3:
        k, l = _small(d[1]), _small(d[2])
        if k is not None and l is not None and r == 1 + k + l:
            return _s19(F, args[0], args[1:1 + k], fuel, depth)
    raise Diverges(f"schema {tag if type(tag) is int else '?'} does not apply to {r} arguments")


def _apply_F(F: Functional, h, args: list, fuel: Fuel, depth: int):
    if depth <= 0:
        raise OutOfFuel

    def call(k, fu):
        return run_fueled(lambda f2: _s19(F, h, [canonical(k), *args], f2, depth - 1), fu)

    out = F(Handle(S19_NATS, call, F.query_bound), fuel)
    if isinstance(out, Value):
        return out.value
    if isinstance(out, Divergent):
        raise Diverges(out.reason)
    raise OutOfFuel


class _Nats(Pca):
    """Naturals as functional data (only ``nat``/``to_nat`` are used)."""
    name = "nat"

    def nat(self, n):
        return canonical(n)

    def to_nat(self, x):
        try:
            return to_int(x)
        except OutOfFuel:
            return None

    def show(self, a):
        return show_code(a)


S19_NATS = _Nats()


# -- index templates and the sub-compiler from PRDef ---------------------------

@dataclass(frozen=True)
class Hole:
    """Placeholder for the ``i``-th parameter of a template."""
    i: int


@dataclass(frozen=True, eq=False)
class Seq:
    """A template node; compared by identity so shared subtrees stay cheap."""
    items: tuple


def S(*items) -> Seq:
    return Seq(tuple(items))


def instantiate(t, env: Sequence = ()):
    """The index denoted by a template, holes filled from ``env``."""
    done: dict[int, Any] = {}
    stack = [t]
    while stack:
        u = stack[-1]
        if not isinstance(u, Seq) or id(u) in done:
            stack.pop()
            continue
        todo = [x for x in u.items if isinstance(x, Seq) and id(x) not in done]
        if todo:
            stack.extend(todo)
            continue
        stack.pop()
        done[id(u)] = encode_seq([_leaf(x, env, done) for x in u.items])
    return _leaf(t, env, done)


def _leaf(x, env, done):
    if isinstance(x, Seq):
        return done[id(x)]
    if isinstance(x, Hole):
        return canonical(env[x.i])
    return canonical(x)


def drop_t(f, j: int, k: int) -> Seq:
    """``(v1..vj, n1..nk) |-> {f}(v1..vj)``."""
    return S(4, j + k, S(9, j, k), S(2, j + k, f))


def ignore_t(g, t: int, r: int):
    """``(v1..vt, n1..nr) |-> {g}(n1..nr)``: rotate the n's forward, then drop."""
    if t == 0:
        return g
    out = drop_t(g, r, t)
    for _ in range(r):
        out = S(6, t + r, t + r - 1, out)
    return out


def _by_identity(fn):
    """Memoize on the identity of the arguments (keeping them alive)."""
    table: dict = {}

    def wrapper(*args):
        key = tuple(id(a) for a in args)
        if key not in table:
            table[key] = (args, fn(*args))
        return table[key][1]
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_by_identity
def pr_template(d: PRDef):
    """Index template of an S1-S6 program for a primitive recursive ``d``.

    ``Const_`` may carry a :class:`Hole` as its value; minimization is not
    expressible with S1-S6 and is rejected.
    """
    if isinstance(d, Zero):
        return S(2, d.arity, 0)
    if isinstance(d, Const_):
        return S(2, d.arity, d.n)
    if isinstance(d, Succ):
        return S(1, 1)
    if isinstance(d, Proj):
        return S(3, d.k) if d.i == 1 else S(6, d.k, d.i - 1, S(3, d.k))
    if isinstance(d, Comp):
        k, m = d.arity, len(d.gs)
        out = drop_t(pr_template(d.f), m, k)
        for j in range(m):
            # innermost first: arguments are (v(j+2)..v(m), ns); prepend g(j+1)(ns)
            h = ignore_t(pr_template(d.gs[j]), m - 1 - j, k)
            out = S(4, k + m - 1 - j, out, h)
        return out
    if isinstance(d, PrimRec):
        return S(5, d.arity, pr_template(d.base), pr_template(d.step))
    if isinstance(d, Mu):
        raise ValueError("minimization has no S1-S6 program")
    raise TypeError(f"not a PRDef: {d!r}")


def pr_to_s19(d: PRDef):
    return instantiate(pr_template(d))


def pr_tri() -> PRDef:
    """``tri(n) = n(n+1)/2``."""
    step = Comp(pr_add(), (Comp(Succ(), (Proj(1, 2),)), Proj(2, 2)))
    return PrimRec(Zero(0), step)


def pr_pair() -> PRDef:
    """Cantor pairing ``pair(x, y) = tri(x + y) + y``."""
    return _PAIR


_PAIR = Comp(pr_add(), (Comp(pr_tri(), (pr_add(),)), Proj(2, 2)))


@_by_identity
def quote(t, arity: int) -> PRDef:
    """A primitive recursive description computing the template's index."""
    if isinstance(t, Hole):
        return Proj(t.i + 1, arity)
    if isinstance(t, Seq):
        body = Const_(0, arity)
        for x in reversed(t.items):
            body = Comp(pr_pair(), (quote(x, arity), body))
        return Comp(pr_pair(), (Const_(len(t.items), arity), body))
    return Const_(t, arity)


def app1_t(x) -> Seq:
    """``n |-> {x}(n)``."""
    return S(4, 1, S(9, 1, 0), S(2, 1, x))


def k_apply_t(a=Hole(0)) -> Seq:
    """``k a``: the constant function ``a``."""
    return S(2, 1, a)


def s_ab_t(a=Hole(0), b=Hole(1)) -> Seq:
    """``s a b``: ``c |-> {{a}(c)}({b}(c))``."""
    inner = S(4, 2, S(9, 1, 1), ignore_t(app1_t(a), 1, 1))
    return S(4, 1, inner, app1_t(b))


def s_a_t():
    """``s a``: the index of ``b |-> s a b``, as a template in ``a``."""
    body = Comp(quote(s_ab_t(), 2), (Const_(Hole(0), 1), Proj(1, 1)))
    return pr_template(body)


_CACHE: dict = {}


def s19_k():
    if "k" not in _CACHE:
        _CACHE["k"] = pr_to_s19(quote(k_apply_t(), 1))
    return _CACHE["k"]


def s19_s():
    if "s" not in _CACHE:
        _CACHE["s"] = pr_to_s19(quote(s_a_t(), 1))
    return _CACHE["s"]


# -- K1^F ------------------------------------------------------------------------

class S19Pca(Pca):
    """``K1^F``: naturals with ``e . n = {e}(n)``."""

    def __init__(self, F: Functional, depth: int = DEFAULT_DEPTH):
        self.F = F
        self.depth = depth
        self.name = f"k1^{F.name}"

    @property
    def k(self):
        return s19_k()

    @property
    def s(self):
        return s19_s()

    def app(self, a, b, fuel):
        return _s19(self.F, a, [b], fuel, self.depth)

    def show(self, a):
        return show_code(a)

    def brief(self, a, limit: int = 80):
        return show_code(a, limit)

    def read(self, text):
        return read_index(text)

    def nat(self, n):
        return canonical(n)

    def to_nat(self, x):
        return S19_NATS.to_nat(x)

    def sample(self, rng: random.Random):
        roll = rng.random()
        if roll < 0.4:
            return rng.randrange(30)
        pool = [seq(1, 1), seq(3, 1), seq(2, 1, rng.randrange(10)), self.k, self.s,
                instantiate(app1_t(seq(1, 1)))]
        return rng.choice(pool)


def s19_pca(F: Functional, depth: int = DEFAULT_DEPTH) -> S19Pca:
    return S19Pca(F, depth)


read_index = parse_code


# -- the compiler into K1[F] --------------------------------------------------------

class _K1Lib:
    """Evaluator combinators over K1.

    An evaluator takes an argument list and the list of oracle answers not
    yet consumed; it returns ``DONE v rest = p T (p v rest)`` or, when it
    needs an answer that is not there, ``NEED q = p F q``.  Lists here are
    cons lists ``nil = p T T``, ``cons x l = p F (p x l)`` of raw naturals.
    """

    def __init__(self):
        self.p = K1_PCA
        self.kit = K1_PCA.kit

    def ab(self, names, body):
        return abstract(self.p, body, names)

    def rec(self, names, body):
        return self.kit.recursive(names, body)

    def ifz(self, c: Term, then: Term, other: Term) -> Term:
        """Lazy test of a raw natural against zero."""
        x = "_z"
        return Const(IFZ)(c, bracket(self.p, then, x), bracket(self.p, other, x), Const(K))

    def ifte(self, c, then, other):
        return self.kit.ifte(c, then, other)

    @cached_property
    def c(self):
        kit = self.kit
        names = dict(T=kit.T, F=kit.F, PR=kit.pair, P0=kit.p0, P1=kit.p1,
                     SUCC=SUCC, PRED=PRED)
        return {k: Const(v) for k, v in names.items()}

    # lists
    @cached_property
    def nil(self):
        return self.kit.mk_pair(self.kit.T, self.kit.T)

    @cached_property
    def cons(self):
        x, l = V("x l")
        c = self.c
        return self.ab("x l", c["PR"](c["F"], c["PR"](x, l)))

    @cached_property
    def head(self):
        l = V("l")
        return self.ab("l", self.c["P0"](self.c["P1"](l)))

    @cached_property
    def tail(self):
        l = V("l")
        return self.ab("l", self.c["P1"](self.c["P1"](l)))

    @cached_property
    def loop(self):
        """``loop x`` never returns."""
        e, x = V("e x")
        return self.rec("e x", e(x))

    def diverge(self) -> Term:
        return Const(self.loop)(Const(0))

    # raw arithmetic
    @cached_property
    def eqr(self):
        e, a, b = V("e a b")
        c = self.c
        body = self.ifz(a, self.ifz(b, c["T"], c["F"]),
                        self.ifz(b, c["F"], e(c["PRED"](a), c["PRED"](b))))
        return self.rec("e a b", body)

    @cached_property
    def ltr(self):
        e, a, b = V("e a b")
        c = self.c
        body = self.ifz(b, c["F"], self.ifz(a, c["T"], e(c["PRED"](a), c["PRED"](b))))
        return self.rec("e a b", body)

    @cached_property
    def addr(self):
        e, a, b = V("e a b")
        c = self.c
        return self.rec("e a b", self.ifz(a, b, c["SUCC"](e(c["PRED"](a), b))))

    @cached_property
    def length(self):
        e, l = V("e l")
        c = self.c
        return self.rec("e l", self.ifte(c["P0"](l), Const(0),
                                         c["SUCC"](e(Const(self.tail)(l)))))

    def _walk(self, name, base_of, step_of):
        e, k, l = V("e k l")
        H, Tl = Const(self.head), Const(self.tail)
        return self.rec("e k l", self.ifz(k, base_of(H, Tl, l),
                                          step_of(H, Tl, l, e(self.c["PRED"](k), Tl(l)))))

    @cached_property
    def nth(self):
        return self._walk("nth", lambda H, Tl, l: H(l), lambda H, Tl, l, r: r)

    @cached_property
    def delete(self):
        cons = Const(self.cons)
        return self._walk("del", lambda H, Tl, l: Tl(l), lambda H, Tl, l, r: cons(H(l), r))

    @cached_property
    def take(self):
        cons, nil = Const(self.cons), Const(self.nil)
        return self._walk("take", lambda H, Tl, l: nil, lambda H, Tl, l, r: cons(H(l), r))

    # dialogue plumbing
    @cached_property
    def done(self):
        v, a = V("v a")
        c = self.c
        return self.ab("v a", c["PR"](c["T"], c["PR"](v, a)))

    @cached_property
    def bind(self):
        r, k = V("r k")
        c = self.c
        P0, P1 = c["P0"], c["P1"]
        return self.ab("r k", self.ifte(P0(r), k(P0(P1(r)), P1(P1(r))), r))

    @cached_property
    def to_cons(self):
        e, n, b = V("e n b")
        kit, c = self.kit, self.c
        conv = self.rec("e n b", self.ifte(Const(kit.iszero)(n), Const(self.nil),
                                           Const(self.cons)(c["P0"](b), e(Const(kit.pred)(n), c["P1"](b)))))
        u = V("u")
        return self.ab("u", Const(conv)(c["P0"](u), c["P1"](u)))

    @cached_property
    def runf(self):
        """``RUNF H args``: the dialogue program ``k |-> {h}(k, args)``."""
        H, args, u, r = V("H args u r")
        kit, c = self.kit, self.c
        P0, P1, PR = c["P0"], c["P1"], c["PR"]
        top = self.ab("r", self.ifte(P0(r), PR(c["T"], P0(P1(r))), PR(c["F"], P1(r))))
        first = Const(kit.proj)(Const(kit.zero), u)
        answers = Const(self.to_cons)(Const(kit.drop)(Const(kit.numeral(1)), u))
        return self.ab("H args u", Const(top)(H(Const(self.cons)(first, args), answers)))

    # schemata
    @cached_property
    def s1(self):
        args, ans = V("args ans")
        return self.ab("args ans", Const(self.done)(self.c["SUCC"](Const(self.head)(args)), ans))

    @cached_property
    def s2(self):
        m, args, ans = V("m args ans")
        return self.ab("m args ans", Const(self.done)(m, ans))

    @cached_property
    def s3(self):
        args, ans = V("args ans")
        return self.ab("args ans", Const(self.done)(Const(self.head)(args), ans))

    @cached_property
    def s4(self):
        G, H, args, ans, v, rest = V("G H args ans v rest")
        then = lam(self.p, "v rest", G(Const(self.cons)(v, args), rest))
        return self.ab("G H args ans", Const(self.bind)(H(args, ans), then))

    @cached_property
    def s5(self):
        e, G, H, args, ans, v, rest = V("e G H args ans v rest")
        hd, tl, cons = Const(self.head), Const(self.tail), Const(self.cons)
        k = self.c["PRED"](hd(args))
        then = lam(self.p, "v rest", H(cons(k, cons(v, tl(args))), rest))
        step = Const(self.bind)(e(G, H, cons(k, tl(args)), ans), then)
        return self.rec("e G H args ans", self.ifz(hd(args), G(tl(args), ans), step))

    @cached_property
    def s6(self):
        k, G, args, ans = V("k G args ans")
        moved = Const(self.cons)(Const(self.nth)(k, args), Const(self.delete)(k, args))
        return self.ab("k G args ans", G(moved, ans))

    @cached_property
    def s8(self):
        H, args, ans = V("H args ans")
        c = self.c
        hd, tl = Const(self.head), Const(self.tail)
        need = c["PR"](c["F"], Const(self.runf)(H, args))
        return self.ab("H args ans", self.ifte(c["P0"](ans), need, Const(self.done)(hd(ans), tl(ans))))

    @cached_property
    def s9(self):
        U, k, args, ans = V("U k args ans")
        hd, tl = Const(self.head), Const(self.tail)
        return self.ab("U k args ans", U(hd(args), Const(self.take)(k, tl(args)), ans))

    @cached_property
    def take_then(self):
        """``take_then E k args ans = E (take k args) ans``."""
        E, k, args, ans = V("E k args ans")
        return self.ab("E k args ans", E(Const(self.take)(k, args), ans))

    @cached_property
    def mismatch(self):
        """Evaluator for an index applied to the wrong number of arguments."""
        return abstract(self.p, self.diverge(), "args ans")

    # runtime decoding, for indices that are only known as data (S9)
    @cached_property
    def unpair(self):
        """Cantor unpairing by walking the enumeration: ``p x y``."""
        e, x, y, n = V("e x y n")
        c = self.c
        S_, P_ = c["SUCC"], c["PRED"]
        body = self.ifz(n, c["PR"](x, y),
                        self.ifz(x, e(S_(y), Const(0), P_(n)), e(P_(x), S_(y), P_(n))))
        walk = self.rec("e x y n", body)
        n = V("n")
        return self.ab("n", Const(walk)(Const(0), Const(0), n))

    @cached_property
    def decode(self):
        e, k, b, d, m = V("e k b d m")
        c = self.c
        UNP = Const(self.unpair)
        cell = lam(self.p, "d", Const(self.cons)(c["P0"](d), e(c["PRED"](k), c["P1"](d))))
        body = self.ifz(k, self.ifz(b, Const(self.nil), self.diverge()), cell(UNP(b)))
        items = self.rec("e k b", body)
        split = lam(self.p, "d", Const(items)(c["P0"](d), c["P1"](d)))
        return self.ab("m", split(UNP(m)))

    @cached_property
    def universal(self):
        """``U m args ans``: run the index ``m`` given at run time."""
        u, m, args, ans, it = V("u m args ans it")
        c = self.c
        EQ, LT, ADD, LEN, NTH = (Const(x) for x in (self.eqr, self.ltr, self.addr, self.length, self.nth))
        n = lambda i: Const(i)
        get = lambda i: NTH(n(i), it)
        r = LEN(args)
        L = LEN(it)

        def all_of(*conds):
            out = conds[-1]
            for cond in reversed(conds[:-1]):
                out = self.ifte(cond, out, c["F"])
            return out

        def case(cond, action):
            return self.ifte(cond, action, self.diverge())

        S = {i: Const(x) for i, x in
             ((1, self.s1), (2, self.s2), (3, self.s3), (4, self.s4), (5, self.s5),
              (6, self.s6), (8, self.s8), (9, self.s9))}
        cases = {
            1: case(all_of(EQ(L, n(2)), EQ(get(1), n(1)), EQ(r, n(1))), S[1](args, ans)),
            2: case(all_of(EQ(L, n(3)), EQ(get(1), r)), S[2](get(2), args, ans)),
            3: case(all_of(EQ(L, n(2)), EQ(get(1), r), LT(n(0), r)), S[3](args, ans)),
            4: case(all_of(EQ(L, n(4)), EQ(get(1), r)), S[4](u(get(2)), u(get(3)), args, ans)),
            5: case(all_of(EQ(L, n(4)), EQ(get(1), r), LT(n(0), r)),
                    S[5](u(get(2)), u(get(3)), args, ans)),
            6: case(all_of(EQ(L, n(4)), EQ(get(1), r), LT(n(0), get(2)), LT(get(2), r)),
                    S[6](get(2), u(get(3)), args, ans)),
            8: case(all_of(EQ(L, n(3)), EQ(get(1), r)), S[8](u(get(2)), args, ans)),
            9: case(all_of(EQ(L, n(3)), EQ(r, c["SUCC"](ADD(get(1), get(2))))),
                    S[9](u, get(1), args, ans)),
        }
        tag = get(0)
        body = self.diverge()
        for t in sorted(cases, reverse=True):
            body = self.ifte(EQ(tag, n(t)), cases[t], body)
        dispatch = lam(self.p, "it", body)
        return self.rec("u m args ans", dispatch(Const(self.decode)(m)))

    def apply(self, f, *xs):
        fuel = Fuel(10**6)
        for x in xs:
            f = self.p.app(f, x, fuel)
        return f


def _lib() -> _K1Lib:
    return K1_PCA.memo("s19_lib", _K1Lib)


def compile_evaluator(e, arity: int):
    """The K1 evaluator for ``{e}`` on ``arity`` arguments."""
    memo = K1_PCA.memo("s19_compiled", dict)
    key = (e, arity)
    if key not in memo:
        memo[key] = _compile(e, arity)
    return memo[key]


def _compile(e, r: int):
    L = _lib()
    d = decode_index(e)
    if d is None:
        raise ValueError(f"malformed S1-S9 index {show_code(e, 80)}")
    tag = d[0]
    mismatch = L.mismatch
    if tag == 1:
        return L.s1 if d == [1, 1] and r == 1 else mismatch
    if tag == 2 and len(d) == 3:
        return L.apply(L.s2, d[2]) if d[1] == r else mismatch
    if tag == 3 and len(d) == 2:
        return L.s3 if d[1] == r and r >= 1 else mismatch
    if tag == 4 and len(d) == 4:
        if d[1] != r:
            return mismatch
        g, h = decode_index(d[2]), decode_index(d[3])
        if (g is not None and h is not None and g[0] == 9 and h[0] == 2 and len(g) == 3
                and len(h) == 3 and h[1] == r and _small(g[1]) is not None
                and _small(g[2]) is not None and g[1] + g[2] == r):
            # <4,r,<9,j,l>,<2,r,f>>: the index f is a compile-time constant
            return L.apply(L.take_then, compile_evaluator(h[2], g[1]), g[1])
        return L.apply(L.s4, compile_evaluator(d[2], r + 1), compile_evaluator(d[3], r))
    if tag == 5 and len(d) == 4:
        if d[1] != r or r < 1:
            return mismatch
        return L.apply(L.s5, compile_evaluator(d[2], r - 1), compile_evaluator(d[3], r + 1))
    if tag == 6 and len(d) == 4:
        k = _small(d[2])
        if d[1] != r or k is None or not 1 <= k < r:
            return mismatch
        return L.apply(L.s6, k, compile_evaluator(d[3], r))
    if tag == 8 and len(d) == 3:
        return L.apply(L.s8, compile_evaluator(d[2], r + 1)) if d[1] == r else mismatch
    if tag == 9 and len(d) == 3:
        k, l = _small(d[1]), _small(d[2])
        if k is None or l is None or r != 1 + k + l:
            return mismatch
        return L.apply(L.s9, L.universal, k)
    raise ValueError(f"unknown schema tag in {show_code(e, 80)}")


def compile_s19_to_k1f(e, arity: int = 1):
    """A K1 program ``c`` with ``c ._F input ~= {e}(args)`` for every ``F``.

    For ``arity == 1`` the input is the raw natural ``n``; otherwise it is
    the K1 tuple ``[n1 .. nk]`` of raw naturals.
    """
    L = _lib()
    E = compile_evaluator(e, arity)
    if arity == 1:
        return L.apply(L.runf, E, L.nil)
    u = V("u")
    kit = L.kit
    r = V("r")
    P0, P1, PR = L.c["P0"], L.c["P1"], L.c["PR"]
    top = abstract(L.p, L.ifte(P0(r), PR(L.c["T"], P0(P1(r))), PR(L.c["F"], P1(r))), "r")
    args = Const(L.to_cons)(Const(kit.proj)(Const(kit.zero), u))
    answers = Const(L.to_cons)(Const(kit.drop)(Const(kit.numeral(1)), u))
    return abstract(L.p, Const(top)(Const(E)(args, answers)), "u")


def pack(args: Sequence):
    """The K1[F] input standing for an argument list (see compile_s19_to_k1f)."""
    if len(args) == 1:
        return canonical(args[0])
    return K1_PCA.kit.tuple([canonical(a) for a in args])


# -- extensional comparison ------------------------------------------------------

@dataclass
class EquivReport:
    agree: int = 0
    undecided: int = 0
    disagreements: list = None

    def __post_init__(self):
        if self.disagreements is None:
            self.disagreements = []

    @property
    def ok(self) -> bool:
        return not self.disagreements

    @property
    def total(self) -> int:
        return self.agree + self.undecided + len(self.disagreements)

    def lines(self) -> list[str]:
        out = [f"FAIL {n} expected {v} got {w}" for n, v, w in self.disagreements]
        out.append(f"agree {self.agree} undecided {self.undecided} disagree {len(self.disagreements)}")
        out.append("PASS" if self.ok else "FAIL")
        return out


def _show(o: Outcome) -> str:
    if isinstance(o, Value):
        return show_code(o.value, 80)
    return "DIVERGENT" if isinstance(o, Divergent) else "EXHAUSTED"


def check_extensional_equiv(a, e, F: Functional, samples: Sequence, fuel: int,
                            depth: int = DEFAULT_DEPTH) -> EquivReport:
    """Compare ``a ._F n`` in K1[F] with ``{e}(n)`` for each sample ``n``."""
    rep = EquivReport()
    for n in samples:
        got, _ = apply_functional(K1_PCA, F, a, canonical(n), fuel, depth)
        want = s19_apply(S19Machine(F, fuel, depth), e, [n])
        if isinstance(got, Exhausted) or isinstance(want, Exhausted):
            rep.undecided += 1
        elif isinstance(got, Value) and isinstance(want, Value) and got.value != want.value:
            rep.disagreements.append((n, _show(want), _show(got)))
        elif isinstance(got, Value) != isinstance(want, Value):
            rep.disagreements.append((n, _show(want), _show(got)))
        else:
            rep.agree += 1
    return rep


__all__ = [
    "seq", "decode_index", "S19Machine", "s19_apply", "Hole", "Seq", "S", "instantiate",
    "pr_template", "pr_to_s19", "pr_tri", "pr_pair", "quote", "drop_t", "ignore_t", "app1_t",
    "k_apply_t", "s_ab_t", "s_a_t", "s19_k", "s19_s", "S19Pca", "s19_pca", "read_index",
    "compile_evaluator", "compile_s19_to_k1f", "pack", "EquivReport",
    "check_extensional_equiv",
]

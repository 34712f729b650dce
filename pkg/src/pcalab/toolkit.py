"""Bracket abstraction and the standard combinator library over any pca.

Abstraction follows the textbook scheme with no eta step::

    <x>x      = s k k
    <x>a      = k a            (a a constant or another variable)
    <x>(t u)  = s (<x>t) (<x>u)

so ``(<x1..xn>t) a1 .. a(n-1)`` always denotes.  Closed ``s A B`` / ``k a``
nodes produced along the way are evaluated on the spot; this never runs a
user application, only partial applications of ``s`` and ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .core import (App, Const, Diverges, FreeVariableError, Fuel, OutOfFuel, Pca, Term, Var,
                   evaluate, free_vars)

BUILD_FUEL = 10**7


class ConstructionError(RuntimeError):
    pass


def _build(p: Pca, t: Term):
    try:
        return evaluate(p, t, Fuel(BUILD_FUEL))
    except (OutOfFuel, Diverges) as exc:
        raise ConstructionError(f"{p.name}: combinator construction failed ({exc!r})")


def bracket(p: Pca, t: Term, x: str) -> Term:
    """``<x>t`` as a term (free variables other than ``x`` stay free)."""
    if isinstance(t, Var) and t.name == x:
        return Const(p.kit.i)
    if isinstance(t, (Const, Var)):
        if isinstance(t, Const):
            return Const(_build(p, App(Const(p.k), t)))
        return App(Const(p.k), t)
    f = bracket(p, t.fun, x)
    a = bracket(p, t.arg, x)
    node = App(App(Const(p.s), f), a)
    if isinstance(f, Const) and isinstance(a, Const):
        return Const(_build(p, node))
    return node


def lam(p: Pca, names: Sequence[str] | str, body: Term) -> Term:
    """``<x1 .. xn>body`` by right-to-left iteration of :func:`bracket`."""
    if isinstance(names, str):
        names = names.split()
    for x in reversed(names):
        body = bracket(p, body, x)
    return body


def abstract(p: Pca, t: Term, names: Sequence[str] | str):
    """The element ``<x1 .. xn>t``."""
    if isinstance(names, str):
        names = names.split()
    extra = free_vars(t) - set(names)
    if extra:
        raise FreeVariableError(f"unbound variables {sorted(extra)} in abstraction")
    return _build(p, lam(p, names, t))


def _fresh(*terms: Term) -> str:
    used = set()
    for t in terms:
        used |= free_vars(t)
    n = 0
    while f"_x{n}" in used:
        n += 1
    return f"_x{n}"


def V(names: str):
    """``V("a b")`` -> ``(Var("a"), Var("b"))``; a single name gives one Var."""
    vs = tuple(Var(n) for n in names.split())
    return vs[0] if len(vs) == 1 else vs


# -- partial recursive function descriptions ----------------------------------

class PRDef:
    arity: int


@dataclass(frozen=True)
class Zero(PRDef):
    arity: int = 1


@dataclass(frozen=True)
class Succ(PRDef):
    arity: int = 1


@dataclass(frozen=True)
class Proj(PRDef):
    """``Proj(i, k)``: the ``i``-th of ``k`` arguments, counting from 1."""
    i: int
    k: int

    def __post_init__(self):
        if not 1 <= self.i <= self.k:
            raise ValueError(f"projection index {self.i} out of 1..{self.k}")

    @property
    def arity(self):
        return self.k


@dataclass(frozen=True)
class Comp(PRDef):
    f: PRDef
    gs: tuple

    def __post_init__(self):
        if self.f.arity != len(self.gs):
            raise ValueError(f"composition: outer arity {self.f.arity} but {len(self.gs)} inner")
        if len({g.arity for g in self.gs}) > 1:
            raise ValueError("composition: inner functions disagree on arity")

    @property
    def arity(self):
        return self.gs[0].arity if self.gs else 0


@dataclass(frozen=True)
class PrimRec(PRDef):
    """``r(0, xs) = base(xs)``, ``r(y+1, xs) = step(y, r(y, xs), xs)``."""
    base: PRDef
    step: PRDef

    def __post_init__(self):
        if self.step.arity != self.base.arity + 2:
            raise ValueError("primitive recursion: step arity must be base arity + 2")

    @property
    def arity(self):
        return self.base.arity + 1


@dataclass(frozen=True)
class Mu(PRDef):
    """``mu(xs)`` = least ``y`` with ``f(y, xs) = 0``."""
    f: PRDef

    @property
    def arity(self):
        return self.f.arity - 1

    def __post_init__(self):
        if self.f.arity < 1:
            raise ValueError("minimization needs a function of at least one argument")


@dataclass(frozen=True)
class Const_(PRDef):
    """Constant ``n`` of the given arity (sugar for iterated Succ over Zero)."""
    n: int
    arity: int = 1


def pr_eval(d: PRDef, args: Sequence[int], fuel: Fuel) -> int:
    """Host reference semantics; one fuel unit per node visited."""
    if len(args) != d.arity:
        raise ValueError(f"arity mismatch: {d} given {len(args)} arguments")
    fuel.tick()
    if isinstance(d, Zero):
        return 0
    if isinstance(d, Const_):
        return d.n
    if isinstance(d, Succ):
        return args[0] + 1
    if isinstance(d, Proj):
        return args[d.i - 1]
    if isinstance(d, Comp):
        return pr_eval(d.f, [pr_eval(g, args, fuel) for g in d.gs], fuel)
    if isinstance(d, PrimRec):
        y, rest = args[0], list(args[1:])
        acc = pr_eval(d.base, rest, fuel)
        for i in range(y):
            acc = pr_eval(d.step, [i, acc, *rest], fuel)
        return acc
    if isinstance(d, Mu):
        y = 0
        while pr_eval(d.f, [y, *args], fuel) != 0:
            y += 1
        return y
    raise TypeError(f"not a PRDef: {d!r}")


# a small standard corpus, also used by the tests
def pr_add():
    return PrimRec(Proj(1, 1), Comp(Succ(), (Proj(2, 3),)))


def pr_mul():
    return PrimRec(Zero(1), Comp(pr_add(), (Proj(2, 3), Proj(3, 3))))


def pr_pred():
    return PrimRec(Zero(0), Proj(1, 2))


def pr_monus():
    """``monus(y, x) = x -. y`` (recursion runs on the subtrahend)."""
    return PrimRec(Proj(1, 1), Comp(pr_pred(), (Proj(2, 3),)))


def pr_sub():
    """``sub(x, y) = x -. y``."""
    return Comp(pr_monus(), (Proj(2, 2), Proj(1, 2)))


# -- the kit ----------------------------------------------------------------

class Kit:
    """Canonical elements of one pca, constructed on first use."""

    NUMERAL_CACHE = 48

    def __init__(self, p: Pca):
        self.p = p

    # booleans, pairing
    @cached_property
    def i(self):
        p = self.p
        return _build(p, App(App(Const(p.s), Const(p.k)), Const(p.k)))

    @cached_property
    def T(self):
        return self.p.k

    @cached_property
    def F(self):
        return _build(self.p, App(Const(self.p.k), Const(self.i)))

    @cached_property
    def pair(self):
        x, y, z = V("x y z")
        return abstract(self.p, z(x, y), "x y z")

    @cached_property
    def p0(self):
        z = V("z")
        return abstract(self.p, z(self.T), "z")

    @cached_property
    def p1(self):
        z = V("z")
        return abstract(self.p, z(self.F), "z")

    def ifte(self, v: Term, then: Term, other: Term) -> Term:
        """``v (<x>then) (<x>other) k`` -- branches are not evaluated early."""
        x = _fresh(then, other)
        return v(bracket(self.p, then, x), bracket(self.p, other, x), self.p.k)

    def fixpoint(self, f):
        """``e = W W`` with ``W = <x y> f (x x) y``, so ``e a <~ f e a``."""
        x, y = V("x y")
        w = abstract(self.p, Const(f)(x(x), y), "x y")
        return _build(self.p, App(Const(w), Const(w)))

    def recursive(self, names: str, body: Term):
        """Fixpoint of ``<names>body``; the first name is the self reference."""
        return self.fixpoint(abstract(self.p, body, names))

    @cached_property
    def Y(self):
        """Internal fixpoint combinator: ``Y f a <~ f (Y f) a``."""
        f, x, y = V("f x y")
        w = lam(self.p, "x y", f(x(x), y))
        return abstract(self.p, w(w), "f")

    # numerals
    @cached_property
    def _numerals(self):
        out = [self.mk_pair(self.T, self.T)]
        for _ in range(self.NUMERAL_CACHE):
            out.append(self.mk_pair(self.F, out[-1]))
        return tuple(out)

    def numeral(self, n: int):
        if n < 0:
            raise ValueError("numerals are for naturals")
        if n < len(self._numerals):
            return self._numerals[n]
        x = self._numerals[-1]
        for _ in range(n - len(self._numerals) + 1):
            x = self.mk_pair(self.F, x)
        return x

    @cached_property
    def zero(self):
        return self.numeral(0)

    @cached_property
    def succ(self):
        n = V("n")
        return abstract(self.p, Const(self.pair)(self.F, n), "n")

    @cached_property
    def iszero(self):
        return self.p0

    @cached_property
    def pred(self):
        n = V("n")
        return abstract(self.p, self.ifte(Const(self.p0)(n), Const(self.zero), Const(self.p1)(n)), "n")

    @cached_property
    def eq_num(self):
        e, m, n = V("e m n")
        Z, P, F = Const(self.iszero), Const(self.pred), Const(self.F)
        body = self.ifte(Z(m), Z(n), self.ifte(Z(n), F, e(P(m), P(n))))
        return self.recursive("e m n", body)

    @cached_property
    def add(self):
        e, m, n = V("e m n")
        Z, P, S = Const(self.iszero), Const(self.pred), Const(self.succ)
        return self.recursive("e m n", self.ifte(Z(m), n, S(e(P(m), n))))

    @cached_property
    def mul(self):
        e, m, n = V("e m n")
        Z, P, A = Const(self.iszero), Const(self.pred), Const(self.add)
        return self.recursive("e m n", self.ifte(Z(m), Const(self.zero), A(n, e(P(m), n))))

    @cached_property
    def monus(self):
        """``monus m n = m -. n``."""
        e, m, n = V("e m n")
        Z, P = Const(self.iszero), Const(self.pred)
        return self.recursive("e m n", self.ifte(Z(n), m, e(P(m), P(n))))

    def numeral_kit(self) -> dict:
        return {"succ": self.succ, "pred": self.pred, "iszero": self.iszero,
                "eq_num": self.eq_num, "add": self.add, "mul": self.mul}

    # tuples: [u0..un] = p (n+1) (p u0 (p u1 (.. (p un 0))))
    @cached_property
    def empty(self):
        return self.mk_pair(self.zero, self.zero)

    @cached_property
    def length(self):
        return self.p0

    @cached_property
    def nth(self):
        """``nth i l``: i-th entry of a tuple body."""
        e, i, l = V("e i l")
        Z, P, P0, P1 = (Const(c) for c in (self.iszero, self.pred, self.p0, self.p1))
        return self.recursive("e i l", self.ifte(Z(i), P0(l), e(P(i), P1(l))))

    @cached_property
    def proj(self):
        i, u = V("i u")
        return abstract(self.p, Const(self.nth)(i, Const(self.p1)(u)), "i u")

    @cached_property
    def _append(self):
        e, n, l, r = V("e n l r")
        Z, P, P0, P1, PR = (Const(c) for c in (self.iszero, self.pred, self.p0, self.p1, self.pair))
        return self.recursive("e n l r", self.ifte(Z(n), r, PR(P0(l), e(P(n), P1(l), r))))

    @cached_property
    def concat(self):
        u, v = V("u v")
        P0, P1, PR, A = (Const(c) for c in (self.p0, self.p1, self.pair, self.add))
        body = PR(A(P0(u), P0(v)), Const(self._append)(P0(u), P1(u), P1(v)))
        return abstract(self.p, body, "u v")

    @cached_property
    def _take(self):
        e, n, l = V("e n l")
        Z, P, P0, P1, PR = (Const(c) for c in (self.iszero, self.pred, self.p0, self.p1, self.pair))
        return self.recursive("e n l", self.ifte(Z(n), Const(self.zero), PR(P0(l), e(P(n), P1(l)))))

    @cached_property
    def _skip(self):
        e, n, l = V("e n l")
        Z, P, P1 = (Const(c) for c in (self.iszero, self.pred, self.p1))
        return self.recursive("e n l", self.ifte(Z(n), l, e(P(n), P1(l))))

    @cached_property
    def prefix(self):
        """``prefix i u = [u0 .. u(i-1)]`` (the first ``i`` entries)."""
        i, u = V("i u")
        body = Const(self.pair)(i, Const(self._take)(i, Const(self.p1)(u)))
        return abstract(self.p, body, "i u")

    @cached_property
    def drop(self):
        """``drop i u = [ui .. un]``."""
        i, u = V("i u")
        P0, P1, PR = (Const(c) for c in (self.p0, self.p1, self.pair))
        body = PR(Const(self.monus)(P0(u), i), Const(self._skip)(i, P1(u)))
        return abstract(self.p, body, "i u")

    @cached_property
    def single(self):
        """``single a = [a]``."""
        a = V("a")
        one = Const(self.numeral(1))
        PR = Const(self.pair)
        return abstract(self.p, PR(one, PR(a, Const(self.zero))), "a")

    def tuple_kit(self) -> dict:
        return {"length": self.length, "proj": self.proj, "concat": self.concat,
                "prefix": self.prefix, "empty": self.empty, "drop": self.drop,
                "single": self.single}

    # host-side helpers
    def mk_pair(self, a, b, fuel: Fuel | None = None):
        fuel = fuel or Fuel(BUILD_FUEL)
        return self.p.app(self.p.app(self.pair, a, fuel), b, fuel)

    def tuple(self, items: Sequence, fuel: Fuel | None = None):
        fuel = fuel or Fuel(BUILD_FUEL)
        body = self.zero
        for u in reversed(list(items)):
            body = self.mk_pair(u, body, fuel)
        return self.mk_pair(self.numeral(len(items)), body, fuel)

    def split(self, r, fuel: Fuel):
        """``(a, b)`` if ``r`` is literally ``p a b``, else ``None``."""
        p = self.p
        try:
            a = p.app(self.p0, r, fuel)
            b = p.app(self.p1, r, fuel)
        except Diverges:
            return None
        return (a, b) if p.equal(self.mk_pair(a, b, fuel), r) else None

    def decode_numeral(self, x, fuel: Fuel, limit: int = 10**4) -> int | None:
        p = self.p
        n = 0
        while n <= limit:
            parts = self.split(x, fuel)
            if parts is None:
                return None
            head, x = parts
            if p.equal(head, self.T):
                return n if p.equal(x, self.T) else None
            if not p.equal(head, self.F):
                return None
            n += 1
        return None

    def decode_tuple(self, u, fuel: Fuel, limit: int = 10**4) -> list | None:
        parts = self.split(u, fuel)
        if parts is None:
            return None
        n = self.decode_numeral(parts[0], fuel, limit)
        if n is None:
            return None
        body, items = parts[1], []
        for _ in range(n):
            cell = self.split(body, fuel)
            if cell is None:
                return None
            items.append(cell[0])
            body = cell[1]
        return items if self.p.equal(body, self.zero) else None

    # partial recursive functions
    def compile_pr(self, d: PRDef):
        """An element ``f`` with ``f n1 .. nk = F(n1..nk)`` on numerals."""
        p = self.p
        k = d.arity
        xs = [f"x{j}" for j in range(1, k + 1)]
        X = [Var(x) for x in xs]
        C = Const
        if isinstance(d, Zero) or isinstance(d, Const_):
            val = C(self.numeral(d.n if isinstance(d, Const_) else 0))
            return _build(p, val) if k == 0 else abstract(p, val, xs)
        if isinstance(d, Succ):
            return self.succ
        if isinstance(d, Proj):
            return abstract(p, X[d.i - 1], xs)
        if isinstance(d, Comp):
            f = C(self.compile_pr(d.f))
            gs = [C(self.compile_pr(g)) for g in d.gs]
            body = f(*[g(*X) for g in gs])
            return _build(p, body) if k == 0 else abstract(p, body, xs)
        if isinstance(d, PrimRec):
            g, h = C(self.compile_pr(d.base)), C(self.compile_pr(d.step))
            e, y = Var("e"), Var("y")
            Z, P = C(self.iszero), C(self.pred)
            body = self.ifte(Z(y), g(*X[1:]), h(P(y), e(P(y), *X[1:]), *X[1:]))
            return self.recursive(" ".join(["e", "y", *xs[1:]]), body)
        if isinstance(d, Mu):
            f = C(self.compile_pr(d.f))
            e, y = Var("e"), Var("y")
            Z, S = C(self.iszero), C(self.succ)
            search = self.recursive(" ".join(["e", "y", *xs]),
                                    self.ifte(Z(f(y, *X)), y, e(S(y), *X)))
            body = C(search)(C(self.zero), *X)
            return _build(p, body) if k == 0 else abstract(p, body, xs)
        raise TypeError(f"not a PRDef: {d!r}")


def numeral(p: Pca, n: int):
    return p.kit.numeral(n)


def booleans(p: Pca):
    return p.kit.T, p.kit.F


def pairing(p: Pca):
    return p.kit.pair, p.kit.p0, p.kit.p1


def numeral_kit(p: Pca) -> dict:
    return p.kit.numeral_kit()


def tuple_kit(p: Pca) -> dict:
    return p.kit.tuple_kit()


def make_tuple(p: Pca, items: Sequence):
    return p.kit.tuple(items)


def fixpoint(p: Pca, f):
    return p.kit.fixpoint(f)


def ifte(p: Pca, cond: Term, then: Term, other: Term) -> Term:
    return p.kit.ifte(cond, then, other)


def compile_primrec(p: Pca, d: PRDef):
    return p.kit.compile_pr(d)

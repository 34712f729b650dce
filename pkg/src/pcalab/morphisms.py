"""Applicative morphisms as finitely sampled, checkable data.

A morphism ``gamma: A -> B`` is a total relation, here a map from an
element of ``A`` to a nonempty list of elements of ``B``, together with a
realizer ``r`` in ``B`` such that ``r gamma(a) gamma(a')`` lies inside
``gamma(aa')`` whenever ``aa'`` is defined.  Universal statements are
checked on the sample sets the caller supplies.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .core import Divergent, Fuel, Pca, Value, apply, apply_all, run_fueled, substitute, unwrap
from .oracle import Functional, Handle, _lifter, decider, lift_index
from .toolkit import V, abstract


@dataclass
class MorphismSpec:
    source: Pca
    target: Pca
    relation: Callable[[Any], list]
    realizer: Any
    decider: Any = None
    name: str = "gamma"

    def image(self, a) -> list:
        out = list(self.relation(a))
        if not out:
            raise ValueError(f"{self.name} relates {self.source.brief(a)} to nothing")
        return out


@dataclass
class Report:
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    undecided: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, what: str, expected: str, got: str) -> None:
        self.failures.append(f"FAIL {what} expected {expected} got {got}")

    def lines(self) -> list[str]:
        out = self.failures + self.undecided
        out.append("PASS" if self.ok else f"FAIL {len(self.failures)} of {self.checked}")
        return out


def _outcome(p: Pca, o) -> str:
    if isinstance(o, Value):
        return p.brief(o.value)
    return "DIVERGENT" if isinstance(o, Divergent) else "EXHAUSTED"


def _member(p: Pca, x, xs: Iterable) -> bool:
    return any(p.equal(x, y) for y in xs)


def _choices(p: Pca, xs: list) -> str:
    return "|".join(p.brief(x) for x in xs)


# -- identity and the oracle inclusions ------------------------------------------------

def identity_spec(p: Pca) -> MorphismSpec:
    """``a |-> {a}`` realized by ``<x y> x y`` and decided by ``i``."""
    x, y = V("x y")
    return MorphismSpec(p, p, lambda a: [a], abstract(p, x(y), "x y"), p.kit.i, f"id_{p.name}")


def inclusion_spec(base: Pca, target: Pca) -> MorphismSpec:
    """``n |-> {n}`` from a base into a relativization of it over the same carrier."""
    return MorphismSpec(base, target, lambda a: [a], lift_index(base, _lifter(base)),
                        decider(base, target), f"iota_{target.name}")


# -- checks ------------------------------------------------------------------------

def check_applicative(ms: MorphismSpec, pairs: Sequence[tuple], fuel: int) -> Report:
    rep = Report()
    src, tgt = ms.source, ms.target
    for a, a2 in pairs:
        aa = apply(src, a, a2, fuel)
        tag = f"{src.brief(a)} {src.brief(a2)}"
        if not isinstance(aa, Value):
            rep.undecided.append(f"UNDECIDED {tag}: source application {_outcome(src, aa)}")
            continue
        want = ms.image(aa.value)
        for x in ms.image(a):
            for y in ms.image(a2):
                rep.checked += 1
                got = run_fueled(lambda f: apply_all(tgt, ms.realizer, [x, y], f), fuel)
                if isinstance(got, Value) and _member(tgt, got.value, want):
                    continue
                if isinstance(got, Value) or isinstance(got, Divergent):
                    rep.fail(tag, _choices(tgt, want), _outcome(tgt, got))
                else:
                    rep.undecided.append(f"UNDECIDED {tag}: realizer EXHAUSTED")
    return rep


def check_decider(ms: MorphismSpec, fuel: int) -> Report:
    """``d gamma(T) = {T}`` and ``d gamma(F) = {F}``."""
    rep = Report()
    if ms.decider is None:
        rep.fail(ms.name, "a decider", "none")
        return rep
    src, tgt = ms.source, ms.target
    for label, b_src, b_tgt in (("T", src.kit.T, tgt.kit.T), ("F", src.kit.F, tgt.kit.F)):
        for x in ms.image(b_src):
            rep.checked += 1
            got = apply(tgt, ms.decider, x, fuel)
            if not (isinstance(got, Value) and tgt.equal(got.value, b_tgt)):
                rep.fail(f"{label} {tgt.brief(x)}", tgt.brief(b_tgt), _outcome(tgt, got))
    return rep


def compose(ms1: MorphismSpec, ms2: MorphismSpec) -> MorphismSpec:
    """``ms2 . ms1``, realized by ``<u v> r2 (r2 t u) v`` for some ``t`` in ``ms2(r1)``."""
    if ms1.target is not ms2.source:
        raise ValueError(f"cannot compose: {ms1.name} lands in {ms1.target.name}, "
                         f"{ms2.name} starts from {ms2.source.name}")
    c = ms2.target

    def relation(a):
        out: list = []
        for b in ms1.image(a):
            for z in ms2.image(b):
                if not _member(c, z, out):
                    out.append(z)
        return out

    u, v, r2, t = V("u v r2 t")
    body = r2(r2(t, u), v)
    realizer = _close(c, body, "u v", r2=ms2.realizer, t=ms2.image(ms1.realizer)[0])
    d = None
    if ms1.decider is not None and ms2.decider is not None:
        d2 = V("d2")
        d = _close(c, d2(r2(t, u)), "u", r2=ms2.realizer, t=ms2.image(ms1.decider)[0],
                   d2=ms2.decider)
    return MorphismSpec(ms1.source, c, relation, realizer, d, f"{ms2.name}.{ms1.name}")


def _close(p: Pca, body, names: str, **consts):
    """``<names> body`` with the other variables replaced by the given elements."""
    return abstract(p, substitute(body, consts), names)


def check_preorder(gamma: MorphismSpec, delta: MorphismSpec, t, samples: Sequence,
                   fuel: int = 10**5) -> Report:
    """``gamma <= delta`` witnessed by ``t``: ``t gamma(a)`` lies inside ``delta(a)``."""
    rep = Report()
    tgt = gamma.target
    for a in samples:
        want = delta.image(a)
        for x in gamma.image(a):
            rep.checked += 1
            got = apply(tgt, t, x, fuel)
            if isinstance(got, Value) and _member(tgt, got.value, want):
                continue
            if isinstance(got, Value) or isinstance(got, Divergent):
                rep.fail(gamma.source.brief(a), _choices(tgt, want), _outcome(tgt, got))
            else:
                rep.undecided.append(f"UNDECIDED {gamma.source.brief(a)}: witness EXHAUSTED")
    return rep


def check_I1(p: Pca, a, f: Callable[[int], int | None], samples: Iterable[int],
             fuel: int) -> Report:
    """``a`` tracks the partial function ``f``: ``a n <~ f(n)`` on the samples."""
    rep = Report()
    for n in samples:
        want = f(n)
        if want is None:
            continue
        rep.checked += 1
        got = apply(p, a, p.nat(n), fuel)
        if isinstance(got, Value) and p.equal(got.value, p.nat(want)):
            continue
        if isinstance(got, Value) or isinstance(got, Divergent):
            rep.fail(f"{p.brief(a)} {n}", str(want), _outcome(p, got))
        else:
            rep.undecided.append(f"UNDECIDED {p.brief(a)} {n}: EXHAUSTED")
    return rep


class _HostNats(Pca):
    """Naturals as themselves; only used to hand host functions to functionals."""

    name = "nat"

    def nat(self, n):
        return n

    def to_nat(self, x):
        return x

    @property
    def kit(self):
        raise TypeError("host naturals have no combinators")


def functional_on_host(F: Functional, g: Callable[[int], int | None], fuel: int | Fuel):
    """``F(g)`` for a host partial function ``g``; outcomes are naturals."""
    def call(w, fu):
        fu.tick()
        v = g(w)
        return Value(v) if v is not None else Divergent(f"g({w}) undefined")
    return run_fueled(lambda fu: unwrap(F(Handle(_HostNats(), call, F.query_bound), fu)), fuel)


def check_effective_operation(p: Pca, e, F: Functional,
                              fn_indices: Sequence[tuple[Any, Callable[[int], int | None]]],
                              fuel: int) -> Report:
    """``e index ~= F(g)`` for each supplied index of a host function ``g``.

    Several indices of one function may be supplied; they must all be sent
    to the same value.
    """
    rep = Report()
    for index, g in fn_indices:
        rep.checked += 1
        want = functional_on_host(F, g, fuel)
        got = apply(p, e, index, fuel)
        tag = f"{p.brief(e)} {p.brief(index)}"
        if not isinstance(want, Value):
            rep.undecided.append(f"UNDECIDED {tag}: F undefined on reference")
            continue
        w = p.nat(want.value)
        if isinstance(got, Value) and p.equal(got.value, w):
            continue
        if isinstance(got, Value) or isinstance(got, Divergent):
            rep.fail(tag, p.brief(w), _outcome(p, got))
        else:
            rep.undecided.append(f"UNDECIDED {tag}: EXHAUSTED")
    return rep

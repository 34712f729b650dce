"""Partial applicative structures, closed terms and fueled evaluation.

Partiality is observed through a step budget.  Every structure implements
``app(a, b, fuel)`` which either returns the value of ``ab``, raises
:class:`OutOfFuel` when the budget runs out, or raises :class:`Diverges`
when the structure can certify that ``ab`` has no value.  The public
entry points (:func:`apply`, :func:`eval_term`) turn those signals into
:class:`Value` / :data:`EXHAUSTED` / :class:`Divergent` outcomes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Sequence


class OutOfFuel(Exception):
    pass


class Diverges(Exception):
    """The structure certifies that an application has no value."""

    def __init__(self, reason: str = ""):
        super().__init__(reason)
        self.reason = reason


class FreeVariableError(ValueError):
    pass


class Fuel:
    """A mutable step budget shared by one top-level evaluation."""

    __slots__ = ("remaining",)

    def __init__(self, budget: int):
        if budget < 0:
            raise ValueError("fuel must be non-negative")
        self.remaining = budget

    def tick(self, n: int = 1) -> None:
        if self.remaining < n:
            self.remaining = 0
            raise OutOfFuel
        self.remaining -= n

    def __repr__(self):
        return f"Fuel({self.remaining})"


# -- outcomes ---------------------------------------------------------------

@dataclass(frozen=True)
class Value:
    value: Any


@dataclass(frozen=True)
class Exhausted:
    pass


@dataclass(frozen=True)
class Divergent:
    reason: str = field(default="", compare=False)


EXHAUSTED = Exhausted()
Outcome = Value | Exhausted | Divergent


def run_fueled(thunk: Callable[[Fuel], Any], fuel: int | Fuel) -> Outcome:
    """Run ``thunk`` on a budget and package its result as an outcome."""
    if not isinstance(fuel, Fuel):
        fuel = Fuel(fuel)
    try:
        return Value(thunk(fuel))
    except OutOfFuel:
        return EXHAUSTED
    except Diverges as exc:
        return Divergent(exc.reason)


def unwrap(outcome: Outcome) -> Any:
    """Inverse of :func:`run_fueled`: re-raise the fuel/divergence signal."""
    if isinstance(outcome, Value):
        return outcome.value
    if isinstance(outcome, Divergent):
        raise Diverges(outcome.reason)
    raise OutOfFuel


# -- terms ------------------------------------------------------------------

class Term:
    __slots__ = ()

    def __call__(self, *args) -> Term:
        t = self
        for a in args:
            t = App(t, a if isinstance(a, Term) else Const(a))
        return t


@dataclass(frozen=True, slots=True)
class Const(Term):
    value: Any

    def __str__(self):
        return f"<{self.value!r}>"


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class App(Term):
    fun: Term
    arg: Term

    def __str__(self):
        return show_term(self)


def show_term(t: Term, show: Callable[[Any], str] = repr) -> str:
    """Print with application associating to the left: ``abc = ((ab)c)``."""
    if isinstance(t, Const):
        return show(t.value)
    if isinstance(t, Var):
        return t.name
    head = show_term(t.fun, show)
    arg = show_term(t.arg, show)
    if isinstance(t.arg, App):
        arg = f"({arg})"
    return f"{head} {arg}"


def free_vars(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.add(u.name)
        elif isinstance(u, App):
            stack.append(u.fun)
            stack.append(u.arg)
    return out


def substitute(t: Term, env: dict[str, Any]) -> Term:
    """Replace each variable bound in ``env`` by the constant it maps to."""
    if isinstance(t, Var):
        return Const(env[t.name]) if t.name in env else t
    if isinstance(t, App):
        return App(substitute(t.fun, env), substitute(t.arg, env))
    return t


def apps(head, *args) -> Term:
    """``apps(f, a, b)`` is the term ``f a b``; non-terms become constants."""
    t = head if isinstance(head, Term) else Const(head)
    return t(*args)


# -- structures -------------------------------------------------------------

class Pca:
    """A partial applicative structure with designated ``k`` and ``s``.

    Subclasses implement :meth:`app`; it must be deterministic and charge at
    least one unit of fuel per primitive reduction step.
    """

    name = "pca"
    k: Any
    s: Any

    def app(self, a, b, fuel: Fuel):
        raise NotImplementedError

    def equal(self, a, b) -> bool:
        return a == b

    def show(self, a) -> str:
        return repr(a)

    def brief(self, a, limit: int = 80) -> str:
        """Possibly abbreviated rendering for reports."""
        text = self.show(a)
        return text if len(text) <= limit else text[:limit] + "..."

    def read(self, text: str):
        raise ValueError(f"{self.name}: cannot parse element {text!r}")

    def sample(self, rng: random.Random):
        """Draw a pseudo-random carrier element for law checking."""
        raise NotImplementedError

    @property
    def is_trivial(self) -> bool:
        return False

    def nat(self, n: int):
        """The element standing for the natural ``n`` as oracle/functional data."""
        return self.kit.numeral(n)

    def to_nat(self, x) -> int | None:
        return self.kit.decode_numeral(x, Fuel(10**6))

    def memo(self, key: str, build: Callable[[], Any]):
        """Per-structure cache for constructed elements (built once)."""
        cache = self.__dict__.setdefault("_memo", {})
        if key not in cache:
            cache[key] = build()
        return cache[key]

    @cached_property
    def kit(self):
        from .toolkit import Kit
        return Kit(self)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class TrivialPca(Pca):
    """The one-point pca ``{*}`` with ``** = *``."""

    name = "trivial"
    k = s = "*"

    def app(self, a, b, fuel):
        fuel.tick()
        return "*"

    def show(self, a):
        return "*"

    def read(self, text):
        if text.strip() != "*":
            raise ValueError(f"trivial pca has only '*', got {text!r}")
        return "*"

    def sample(self, rng):
        return "*"

    @property
    def is_trivial(self):
        return True


def apply(p: Pca, a, b, fuel: int | Fuel) -> Outcome:
    return run_fueled(lambda f: p.app(a, b, f), fuel)


def evaluate(p: Pca, t: Term, fuel: Fuel):
    """Denotation of a closed term; raises on exhaustion or divergence."""
    if isinstance(t, Const):
        return t.value
    if isinstance(t, App):
        f = evaluate(p, t.fun, fuel)
        x = evaluate(p, t.arg, fuel)
        return p.app(f, x, fuel)
    raise FreeVariableError(f"free variable {t.name!r} in evaluated term")


def eval_term(p: Pca, t: Term, fuel: int | Fuel) -> Outcome:
    if free_vars(t):
        raise FreeVariableError(f"term has free variables {sorted(free_vars(t))}")
    return run_fueled(lambda f: evaluate(p, t, f), fuel)


def apply_all(p: Pca, head, args: Iterable, fuel: Fuel):
    """``head a1 ... an`` in ``p`` on a shared budget."""
    for a in args:
        head = p.app(head, a, fuel)
    return head


# -- Kleene refinement and the pca laws ---------------------------------------

@dataclass(frozen=True)
class ConsistentSoFar:
    pass


@dataclass(frozen=True)
class Witnessed:
    value: Any


@dataclass(frozen=True)
class Violated:
    reason: str


Refinement = ConsistentSoFar | Witnessed | Violated


def compare_outcomes(p: Pca, lhs: Outcome, rhs: Outcome) -> Refinement:
    """Judge ``lhs <~ rhs`` from already computed outcomes."""
    if isinstance(rhs, Value):
        if isinstance(lhs, Value):
            if p.equal(lhs.value, rhs.value):
                return Witnessed(rhs.value)
            return Violated(f"expected {p.brief(rhs.value)} got {p.brief(lhs.value)}")
        if isinstance(lhs, Divergent):
            return Violated(f"expected {p.brief(rhs.value)} got divergence ({lhs.reason})")
    return ConsistentSoFar()


def kleene_refines(p: Pca, t: Term, s: Term, fuel: int) -> Refinement:
    """Test ``t <~ s``: whenever ``s`` denotes, ``t`` denotes to the same value.

    Each side gets its own budget of ``fuel``.  Only a definite
    counterexample is reported as :class:`Violated`.
    """
    return compare_outcomes(p, eval_term(p, t, fuel), eval_term(p, s, fuel))


@dataclass
class LawReport:
    pca: str
    checked: int = 0
    witnessed: int = 0
    undecided: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = [f"FAIL {f}" for f in self.failures]
        out.append("PASS" if self.ok else f"FAIL {len(self.failures)} of {self.checked}")
        return out


def laws_check(p: Pca, samples: Sequence[tuple], fuel: int, strict: bool = False) -> LawReport:
    """Check ``kab = a``, ``sab`` defined and ``sabc <~ ac(bc)`` on samples.

    With ``strict=True`` the last law is checked in both directions
    (``sabc ~= ac(bc)``); a side that is exhausted while the other has a
    value is retried once with four times the fuel before being counted as
    undecided.
    """
    rep = LawReport(p.name)
    k, s = p.k, p.s
    for a, b, c in samples:
        rep.checked += 1
        def tag():
            return f"{p.brief(a)} {p.brief(b)} {p.brief(c)}"
        kab = eval_term(p, apps(k, a, b), fuel)
        if not (isinstance(kab, Value) and p.equal(kab.value, a)):
            rep.failures.append(f"k-law {tag()}: got {_show_outcome(p, kab)}")
        sab = eval_term(p, apps(s, a, b), fuel)
        if not isinstance(sab, Value):
            rep.failures.append(f"s-defined {tag()}: got {_show_outcome(p, sab)}")
            continue
        lhs_t = apps(sab.value, c)
        rhs_t = App(apps(a, c), apps(b, c))
        lhs = eval_term(p, lhs_t, fuel)
        rhs = eval_term(p, rhs_t, fuel)
        verdict = compare_outcomes(p, lhs, rhs)
        if strict:
            if isinstance(lhs, Value) and isinstance(rhs, Exhausted):
                rhs = eval_term(p, rhs_t, 4 * fuel)
            elif isinstance(rhs, Value) and isinstance(lhs, Exhausted):
                lhs = eval_term(p, lhs_t, 4 * fuel)
            verdict = compare_outcomes(p, lhs, rhs)
            if not isinstance(verdict, Violated):
                back = compare_outcomes(p, rhs, lhs)
                if isinstance(back, Violated):
                    verdict = back
                elif isinstance(lhs, Value) != isinstance(rhs, Value):
                    verdict = ConsistentSoFar()
        if isinstance(verdict, Violated):
            rep.failures.append(f"s-law {tag()}: {verdict.reason}")
        elif isinstance(verdict, Witnessed):
            rep.witnessed += 1
        else:
            rep.undecided += 1
    return rep


def _show_outcome(p: Pca, o: Outcome) -> str:
    if isinstance(o, Value):
        return f"VALUE {p.brief(o.value)}"
    if isinstance(o, Divergent):
        return "DIVERGENT"
    return "EXHAUSTED"


def show_outcome(p: Pca, o: Outcome) -> str:
    return _show_outcome(p, o)


def random_triples(p: Pca, n: int, seed: int = 0) -> list[tuple]:
    rng = random.Random(seed)
    return [(p.sample(rng), p.sample(rng), p.sample(rng)) for _ in range(n)]

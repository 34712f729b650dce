"""Command-line front end.

Every command prints a status line first (``VALUE <elt>``, ``EXHAUSTED``,
``DIVERGENT``, ``ERROR <msg>``; ``PASS``/``FAIL`` for ``laws``) and exits
with 0 on a value or a passing suite, 1 on exhaustion, divergence or
failure, and 2 on errors.

Term syntax: application by juxtaposition (left associative), parentheses,
``\\x y. t`` for abstraction, ``#n`` / ``#(x,y)`` / ``<..>`` / ``[..]`` element
literals, bare digits for the natural ``n`` as data, and builtin names::

    K S I T F P P0 P1 N<k> FIX QUERY LIFT SUCC PRED IFZ EMBED
"""
from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from typing import Any, Callable

from .core import (App, Const, Divergent, Fuel, Pca, Term, TrivialPca, Value, Var, apply_all,
                   evaluate, free_vars, laws_check, random_triples, run_fueled)
from .k1 import IFZ, K1, K1_PCA, PRED, SUCC, canonical
from .oracle import (DEFAULT_DEPTH, Dialogue, FunctionalPca, ORACLES, OraclePca, _lifter,
                     apply_functional, apply_oracle, builtin_functional, builtin_oracle,
                     functional_pca, oracle_pca, query_index)
from .s19 import S19Pca, _s19, compile_s19_to_k1f, pack, read_index, s19_pca
from .strictify import StrictPca, strict_pca
from .toolkit import lam

DEFAULT_FUEL = 100_000
# elements printing longer than this are abbreviated
PRINT_LIMIT = 100_000
# budget for evaluating command-line arguments before the measured run
ARG_FUEL = 10**6


class CliError(Exception):
    pass


class ParseError(CliError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line} column {col}")
        self.line, self.column = line, col


# -- term syntax ----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<space>\s+)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<lam>\\|λ)
  | (?P<dot>\.)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<digits>\d+)
  | (?P<star>\*)
  | (?P<open>[#<\[])
""", re.VERBOSE)

_CLOSE = {"<": ">", "[": "]", "(": ")"}


def _literal_end(text: str, pos: int) -> int:
    """End of an element literal starting at ``pos`` (``#..``, ``<..>``, ``[..]``)."""
    i = pos
    if text[i] == "#":
        i += 1
        if i < len(text) and text[i].isdigit():
            while i < len(text) and text[i].isdigit():
                i += 1
            return i
        if i >= len(text) or text[i] not in "(<[":
            raise ParseError("bad literal after '#'", text, pos)
    stack = []
    while i < len(text):
        ch = text[i]
        if ch in _CLOSE:
            stack.append(_CLOSE[ch])
        elif ch in ">])":
            if not stack or stack.pop() != ch:
                raise ParseError(f"unbalanced {ch!r} in literal", text, i)
            if not stack:
                return i + 1
        i += 1
    raise ParseError("unterminated literal", text, pos)


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind == "open":
            end = _literal_end(text, pos)
            yield "literal", text[pos:end], pos
            pos = end
            continue
        if kind != "space":
            yield kind, m.group(), pos
        pos = m.end()
    yield "end", "", pos


@dataclass(frozen=True)
class _Lam:
    names: tuple
    body: Any


@dataclass(frozen=True)
class _Atom:
    kind: str
    text: str
    pos: int


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = list(_tokens(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def term(self):
        kind, _, pos = self.peek()
        if kind == "lam":
            self.i += 1
            names = []
            while self.peek()[0] == "name":
                names.append(self.take("name")[1])
            if not names:
                raise ParseError("abstraction needs a variable", self.text, self.peek()[2])
            self.take("dot")
            return _Lam(tuple(names), self.term())
        head = self.atom()
        while self.peek()[0] in ("lparen", "name", "digits", "star", "literal", "lam"):
            if self.peek()[0] == "lam":
                head = ("app", head, self.term())
                break
            head = ("app", head, self.atom())
        return head

    def atom(self):
        kind, text, pos = self.peek()
        if kind == "lparen":
            self.i += 1
            t = self.term()
            self.take("rparen")
            return t
        if kind in ("name", "digits", "star", "literal"):
            self.i += 1
            return _Atom(kind, text, pos)
        what = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"expected a term, found {what}", self.text, pos)

    def parse(self):
        t = self.term()
        self.take("end")
        return t


def _base_of(p: Pca) -> Pca:
    while isinstance(p, (OraclePca, FunctionalPca, StrictPca)):
        p = p.base
    return p


def builtins(p: Pca) -> dict[str, Callable[[], Any]]:
    """Name -> constructor for the builtins available in ``p``."""
    kit = lambda: p.kit
    table: dict[str, Callable[[], Any]] = {
        "K": lambda: p.k, "S": lambda: p.s,
        "I": lambda: kit().i, "T": lambda: kit().T, "F": lambda: kit().F,
        "P": lambda: kit().pair, "P0": lambda: kit().p0, "P1": lambda: kit().p1,
        "FIX": lambda: kit().Y,
    }
    if isinstance(p, (OraclePca, FunctionalPca)):
        table["QUERY"] = lambda: query_index(p.base)
    elif not isinstance(p, (StrictPca, S19Pca)):
        # base-level programs for use as oracle and functional run arguments
        table["QUERY"] = lambda: query_index(p)
        table["LIFT"] = lambda: _lifter(p)
    if isinstance(p, StrictPca):
        table["EMBED"] = lambda: p.code(4)
    if isinstance(_base_of(p), K1):
        table.update(SUCC=lambda: SUCC, PRED=lambda: PRED, IFZ=lambda: IFZ)
    return table


def parse_term(text: str, p: Pca = K1_PCA, free: tuple = ()) -> Term:
    """Parse ``text`` into a term over ``p``; abstractions are compiled away.

    Lower-case names must be bound by an enclosing abstraction or listed in
    ``free``; they stay as variables in the result.
    """
    tree = _Parser(text).parse()
    table = builtins(p)
    cache: dict[str, Any] = {}

    def convert(t, bound):
        if isinstance(t, _Lam):
            body = convert(t.body, bound | set(t.names))
            return lam(p, list(t.names), body)
        if isinstance(t, tuple):
            return App(convert(t[1], bound), convert(t[2], bound))
        if t.kind == "digits":
            return Const(p.nat(int(t.text)))
        if t.kind in ("literal", "star"):
            try:
                return Const(p.read(t.text))
            except ValueError as exc:
                raise ParseError(str(exc), text, t.pos) from None
        name = t.text
        if name in bound or name in free:
            return Var(name)
        m = re.fullmatch(r"N(\d+)", name)
        if m:
            return Const(p.kit.numeral(int(m.group(1))))
        if name in table:
            if name not in cache:
                cache[name] = table[name]()
            return Const(cache[name])
        if name[0].isupper():
            raise ParseError(f"unknown builtin {name!r} for {p.name}", text, t.pos)
        raise ParseError(f"unbound variable {name!r}", text, t.pos)

    return convert(tree, set())


# -- structures -------------------------------------------------------------------

def make_pca(selector: str, depth: int = DEFAULT_DEPTH) -> Pca:
    """``trivial``, ``k1``, ``k1^F``, ``strict:<sel>``, ``strict3:<sel>``, ``<sel>[name]``.

    ``[name]`` adjoins a builtin oracle or forces a builtin functional;
    ``k1^F`` is Kleene's relativized first model built from S1-S9.
    """
    sel = selector.strip()
    for prefix, clauses in (("strict:", 4), ("strict3:", 3)):
        if sel.startswith(prefix):
            return strict_pca(make_pca(sel[len(prefix):], depth), clauses)
    m = re.fullmatch(r"(trivial|k1(?:\^[A-Za-z_]+(?:\(\d+\))?)?)((?:\[[A-Za-z_]+(?:\(\d+\))?\])*)", sel)
    if not m:
        raise CliError(f"unknown structure {selector!r}")
    head, suffix = m.group(1), m.group(2)
    if head == "trivial":
        p: Pca = TrivialPca()
    elif head == "k1":
        p = K1_PCA
    else:
        p = s19_pca(_functional(head[3:]), depth)
    for name in re.findall(r"\[([^\]]+)\]", suffix):
        if name in ORACLES:
            p = oracle_pca(p, builtin_oracle(name, p), f"{p.name}[{name}]")
        else:
            p = functional_pca(p, _functional(name), depth)
    return p


def _functional(name: str):
    try:
        return builtin_functional(name)
    except (KeyError, ValueError) as exc:
        raise CliError(str(exc).strip("'\"")) from None


def _oracle(name: str, p: Pca):
    try:
        return builtin_oracle(name, p)
    except KeyError as exc:
        raise CliError(str(exc).strip("'\"")) from None


# -- output -----------------------------------------------------------------------

def _status(p: Pca, out) -> tuple[int, str]:
    if isinstance(out, Value):
        return 0, f"VALUE {p.brief(out.value, PRINT_LIMIT)}"
    if isinstance(out, Divergent):
        return 1, "DIVERGENT"
    return 1, "EXHAUSTED"


def _closed(p: Pca, text: str):
    t = parse_term(text, p)
    out = run_fueled(lambda f: evaluate(p, t, f), ARG_FUEL)
    if not isinstance(out, Value):
        raise CliError(f"argument {text!r} has no value")
    return out.value


def _used(fuel: Fuel, budget: int) -> str:
    return f"FUEL {budget - fuel.remaining}"


# -- commands ---------------------------------------------------------------------

def cmd_eval(args, p: Pca | None = None) -> tuple[int, list[str]]:
    p = p or make_pca(args.pca, args.depth)
    t = parse_term(args.term, p)
    fuel = Fuel(args.fuel)
    out = run_fueled(lambda f: evaluate(p, t, f), fuel)
    code, line = _status(p, out)
    lines = [line]
    if args.trace:
        lines.append(_used(fuel, args.fuel))
    return code, lines


def cmd_abstract(args) -> tuple[int, list[str]]:
    p = make_pca(args.pca, args.depth)
    names = tuple(args.vars.split()) if args.vars else ()
    t = parse_term(args.term, p, free=names)
    if names:
        t = lam(p, list(names), t)
    extra = free_vars(t)
    if extra:
        raise CliError(f"unbound variables {' '.join(sorted(extra))}")
    fuel = Fuel(args.fuel)
    out = run_fueled(lambda f: evaluate(p, t, f), fuel)
    code, line = _status(p, out)
    return code, [line]


def cmd_k1_run(args) -> tuple[int, list[str]]:
    p = K1_PCA
    head = _closed(p, args.code)
    xs = [_closed(p, a) for a in args.args]
    fuel = Fuel(args.fuel)
    out = run_fueled(lambda f: apply_all(p, head, xs, f), fuel)
    code, line = _status(p, out)
    lines = [line]
    if args.trace:
        lines.append(_used(fuel, args.fuel))
    return code, lines


def _naturals(items) -> list[int]:
    try:
        return [int(a) for a in items]
    except ValueError:
        raise CliError("arguments must be naturals") from None


def _index(text: str):
    try:
        return read_index(text)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def cmd_s19_run(args) -> tuple[int, list[str]]:
    F = _functional(args.functional)
    e = _index(args.index)
    xs = _naturals(args.args)
    fuel = Fuel(args.fuel)
    out = run_fueled(lambda f: _s19(F, e, [canonical(x) for x in xs], f, args.depth), fuel)
    code, line = _status(K1_PCA, out)
    lines = [line]
    if args.trace:
        lines.append(_used(fuel, args.fuel))
    return code, lines


def cmd_s19_compile(args) -> tuple[int, list[str]]:
    e = _index(args.index)
    xs = _naturals(args.args)
    arity = args.arity or max(len(xs), 1)
    if xs and len(xs) != arity:
        raise CliError(f"expected {arity} arguments, got {len(xs)}")
    try:
        c = compile_s19_to_k1f(e, arity)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if not xs:
        return 0, [f"VALUE {K1_PCA.brief(c, PRINT_LIMIT)}"]
    F = _functional(args.functional)
    log = Dialogue() if args.trace else None
    out, used = apply_functional(K1_PCA, F, c, pack(xs), args.fuel, args.depth, log)
    code, line = _status(K1_PCA, out)
    lines = [line]
    if log is not None:
        lines += log.lines(K1_PCA)
        lines.append(f"DEPTH {used}")
    return code, lines


def cmd_oracle_run(args) -> tuple[int, list[str]]:
    base = make_pca(args.pca, args.depth)
    f = _oracle(args.oracle, base)
    a, b = _closed(base, args.a), _closed(base, args.b)
    out, log = apply_oracle(base, f, a, b, args.fuel)
    code, line = _status(base, out)
    lines = [line]
    if args.trace:
        lines += log.lines(base)
    return code, lines


def cmd_functional_run(args) -> tuple[int, list[str]]:
    base = make_pca(args.pca, args.depth)
    F = _functional(args.functional)
    a, b = _closed(base, args.a), _closed(base, args.b)
    log = Dialogue() if args.trace else None
    out, used = apply_functional(base, F, a, b, args.fuel, args.depth, log)
    code, line = _status(base, out)
    lines = [line]
    if log is not None:
        lines += log.lines(base)
        lines.append(f"DEPTH {used}")
    return code, lines


def cmd_strict_eval(args) -> tuple[int, list[str]]:
    base = make_pca(args.pca, args.depth)
    return cmd_eval(args, strict_pca(base, args.clauses))


def cmd_laws(args) -> tuple[int, list[str]]:
    p = make_pca(args.pca, args.depth)
    samples = random_triples(p, args.samples, args.seed)
    strict = isinstance(p, StrictPca) or p.is_trivial
    rep = laws_check(p, samples, args.fuel, strict=strict)
    head = "PASS" if rep.ok else f"FAIL {len(rep.failures)} of {rep.checked}"
    lines = [head] + [f"FAIL {f}" for f in rep.failures]
    lines.append(f"checked {rep.checked} witnessed {rep.witnessed} undecided {rep.undecided}"
                 + (" strict" if strict else ""))
    return (0 if rep.ok else 1), lines


# -- argument handling --------------------------------------------------------------

class _Parser_(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser_(add_help=False)
    common.add_argument("--pca", default="k1", help="structure selector (default k1)")
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    common.add_argument("--trace", action="store_true")
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)

    top = _Parser_(prog="pcalab", description="Partial combinatory algebras on a step budget.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser_)

    ev = sub.add_parser("eval", parents=[common], help="evaluate a closed term")
    ev.add_argument("term")
    ev.set_defaults(run=cmd_eval)

    ab = sub.add_parser("abstract", parents=[common], help="compile an abstraction to an element")
    ab.add_argument("term")
    ab.add_argument("--vars", default="", help="variables to abstract, e.g. 'x y'")
    ab.set_defaults(run=cmd_abstract)

    k1 = sub.add_parser("k1", help="Kleene's first model").add_subparsers(
        dest="action", required=True, parser_class=_Parser_)
    kr = k1.add_parser("run", parents=[common], help="apply a code to arguments")
    kr.add_argument("code")
    kr.add_argument("args", nargs="*")
    kr.set_defaults(run=cmd_k1_run)

    s19 = sub.add_parser("s19", help="S1-S9 indices").add_subparsers(
        dest="action", required=True, parser_class=_Parser_)
    for name, fn in (("run", cmd_s19_run), ("compile", cmd_s19_compile)):
        sp = s19.add_parser(name, parents=[common])
        sp.add_argument("index")
        sp.add_argument("args", nargs="*")
        sp.add_argument("--functional", default="at_zero")
        if name == "compile":
            sp.add_argument("--arity", type=int, default=0)
        sp.set_defaults(run=fn)

    orc = sub.add_parser("oracle", help="oracle dialogues").add_subparsers(
        dest="action", required=True, parser_class=_Parser_)
    orr = orc.add_parser("run", parents=[common], help="a ._f b")
    orr.add_argument("a")
    orr.add_argument("b")
    orr.add_argument("--oracle", required=True, choices=sorted(ORACLES))
    orr.set_defaults(run=cmd_oracle_run)

    fun = sub.add_parser("functional", help="recursive dialogues").add_subparsers(
        dest="action", required=True, parser_class=_Parser_)
    fr = fun.add_parser("run", parents=[common], help="a ._F b")
    fr.add_argument("a")
    fr.add_argument("b")
    fr.add_argument("--functional", required=True)
    fr.set_defaults(run=cmd_functional_run)

    st = sub.add_parser("strict", help="the strict pca over a base").add_subparsers(
        dest="action", required=True, parser_class=_Parser_)
    se = st.add_parser("eval", parents=[common], help="evaluate a term in strict:<pca>")
    se.add_argument("term")
    se.add_argument("--clauses", type=int, choices=(3, 4), default=4)
    se.set_defaults(run=cmd_strict_eval)

    lw = sub.add_parser("laws", parents=[common], help="check the pca laws on random triples")
    lw.set_defaults(run=cmd_laws)
    return top


def run(argv: list[str]) -> tuple[int, list[str]]:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "fuel", 0) < 0:
            raise CliError("fuel must be non-negative")
        return args.run(args)
    except CliError as exc:
        return 2, [f"ERROR {exc}"]
    except (ValueError, RuntimeError, RecursionError) as exc:
        return 2, [f"ERROR {exc}"]


def main(argv: list[str] | None = None) -> int:
    code, lines = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write("".join(line + "\n" for line in lines))
    return code

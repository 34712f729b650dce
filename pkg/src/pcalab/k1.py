"""Kleene's first model as a tagged combinatory machine on Cantor codes.

A code ``n`` decodes as ``(tag, payload) = unpair(n)`` with
``pair(x, y) = (x + y)(x + y + 1)/2 + y``.  Tag table::

    0 K0          K0.a = K1(a)
    1 K1(a)       K1(a).b = a
    2 S0          S0.a = S1(a)
    3 S1(a)       S1(a).b = S2(pair(a, b))
    4 S2(a, b)    S2(a, b).c = (a.c).(b.c)
    5 SUCC        SUCC.a = a + 1
    6 PRED        PRED.a = a -. 1
    7 IFZ0        IFZ0.c = IFZ1(c)
    8 IFZ1(c)     IFZ1(c).a = IFZ2(pair(c, a))
    9 IFZ2(c, a)  IFZ2(c, a).b = a if c == 0 else b
   >=10           inert: application diverges

Nested codes grow doubly exponentially in bit length, so any code at or
above ``2**LIMIT_BITS`` is held as a :class:`PairCode` node recording its
two components instead of its digits.  The representation is canonical
(a number is an ``int`` exactly when it is below the limit) so equality of
representations is equality of numbers.
"""
from __future__ import annotations

import random
from math import isqrt

from .core import Diverges, Fuel, OutOfFuel, Pca, Term, Const, App, Var, eval_term, Value

LIMIT_BITS = 62
LIMIT = 1 << LIMIT_BITS
# codes whose digits would exceed this many bits are never materialized
MATERIALIZE_BITS = 1 << 16

_M1 = (1 << 61) - 1
_M2 = (1 << 31) - 1
_HALF1 = pow(2, -1, _M1)
_HALF2 = pow(2, -1, _M2)


class PairCode:
    """The natural ``pair(x, y)`` too large to hold as an int."""

    __slots__ = ("x", "y", "fp", "bits")

    def __init__(self, x, y):
        self.x = x
        self.y = y
        if type(x) is int:
            fx, gx, bx = x % _M1, x % _M2, x.bit_length()
        else:
            (fx, gx), bx = x.fp, x.bits
        if type(y) is int:
            fy, gy, by = y % _M1, y % _M2, y.bit_length()
        else:
            (fy, gy), by = y.fp, y.bits
        s1 = (fx + fy) % _M1
        s2 = (gx + gy) % _M2
        self.fp = ((s1 * (s1 + 1) % _M1 * _HALF1 + fy) % _M1,
                   (s2 * (s2 + 1) % _M2 * _HALF2 + gy) % _M2)
        # upper bound on the bit length of the number
        self.bits = 2 * (bx if bx > by else by) + 2

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PairCode) or self.fp != other.fp:
            return False
        stack = [(self, other)]
        seen = set()
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if isinstance(a, PairCode) and isinstance(b, PairCode):
                if a.fp != b.fp:
                    return False
                key = (id(a), id(b))
                if key in seen:
                    continue
                seen.add(key)
                stack.append((a.x, b.x))
                stack.append((a.y, b.y))
            elif a != b:
                return False
        return True

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.fp)

    def __repr__(self):
        return f"PairCode({self.x!r}, {self.y!r})"


def _fingerprint(n):
    if isinstance(n, PairCode):
        return n.fp
    return n % _M1, n % _M2


def bit_bound(n) -> int:
    return n.bits if isinstance(n, PairCode) else n.bit_length()


def pair_nat(x, y):
    """Cantor pairing on codes, returning the canonical representation."""
    if type(x) is int and type(y) is int:
        s = x + y
        v = s * (s + 1) // 2 + y
        if v < LIMIT:
            return v
    return PairCode(canonical(x), canonical(y))


def unpair_nat(n):
    if type(n) is not int:
        return n.x, n.y
    if n < 0:
        raise ValueError("codes are natural numbers")
    w = (isqrt(8 * n + 1) - 1) >> 1
    y = n - (w * (w + 1) >> 1)
    return w - y, y


def canonical(n):
    """Bring an arbitrary natural (int) into canonical code form."""
    if type(n) is not int or n < LIMIT:
        return n
    x, y = unpair_nat(n)
    return PairCode(canonical(x), canonical(y))


def to_int(n) -> int:
    """Digits of a code; raises :class:`OutOfFuel` if unreasonably large."""
    if not isinstance(n, PairCode):
        return n
    if n.bits > MATERIALIZE_BITS:
        raise OutOfFuel
    x, y = to_int(n.x), to_int(n.y)
    s = x + y
    return s * (s + 1) // 2 + y


def succ_code(n):
    """``n + 1`` without materializing: ``pair(x,y)+1`` is ``pair(x-1,y+1)`` or ``pair(y+1,0)``."""
    if type(n) is int:
        return canonical(n + 1)
    if n.x == 0:
        return pair_nat(succ_code(n.y), 0)
    return pair_nat(pred_code(n.x), succ_code(n.y))


def pred_code(n):
    """``n -. 1``; inverse of :func:`succ_code` above zero."""
    if type(n) is int:
        return max(n - 1, 0)
    if n.y == 0:
        return pair_nat(0, pred_code(n.x))
    return pair_nat(succ_code(n.x), pred_code(n.y))


# -- sequence coding ----------------------------------------------------------

def encode_seq(items) -> object:
    """``<x1..xk> = pair(k, pair(x1, pair(x2, ... pair(xk, 0))))``."""
    body = 0
    for x in reversed(list(items)):
        body = pair_nat(x, body)
    return pair_nat(len(items), body)


def decode_seq(n, max_len: int = 64) -> list | None:
    """Inverse of :func:`encode_seq`; ``None`` if the length is implausible."""
    k, body = unpair_nat(n)
    if isinstance(k, PairCode) or k > max_len:
        return None
    out = []
    for _ in range(k):
        x, body = unpair_nat(body)
        out.append(x)
    if body != 0:
        return None
    return out


# -- the machine --------------------------------------------------------------

K, S, SUCC, PRED, IFZ = 0, 3, 15, 21, 28


def code(tag: int, payload=0):
    return pair_nat(tag, payload)


def k1_step(n, m, fuel: Fuel):
    """Apply code ``n`` to ``m``; one unit of fuel per rule firing."""
    while True:
        fuel.tick()
        tag, x = unpair_nat(n)
        if tag == 4:
            a, b = unpair_nat(x)
            left = k1_step(a, m, fuel)
            right = k1_step(b, m, fuel)
            n, m = left, right
            continue
        if tag == 1:
            return x
        if tag == 0:
            return pair_nat(1, m)
        if tag == 3:
            return pair_nat(4, pair_nat(x, m))
        if tag == 2:
            return pair_nat(3, m)
        if tag == 9:
            c, a = unpair_nat(x)
            return a if c == 0 else m
        if tag == 8:
            return pair_nat(9, pair_nat(x, m))
        if tag == 7:
            return pair_nat(8, m)
        if tag == 5:
            return succ_code(m)
        if tag == 6:
            return pred_code(m)
        raise Diverges(f"inert code (tag {tag if type(tag) is int else '...'})")


def k1_apply(n, m, fuel: int):
    from .core import run_fueled
    return run_fueled(lambda f: k1_step(n, m, f), fuel)


class K1(Pca):
    name = "k1"
    k = K
    s = S

    def app(self, a, b, fuel):
        return k1_step(a, b, fuel)

    def show(self, a):
        return show_code(a)

    def read(self, text):
        return parse_code(text)

    def brief(self, a, limit: int = 80):
        return show_code(a, limit)

    def sample(self, rng: random.Random):
        return sample_code(rng, self)

    def nat(self, n):
        return canonical(n)

    def to_nat(self, x):
        try:
            return to_int(x)
        except OutOfFuel:
            return None


def show_code(n, limit: int | None = None) -> str:
    """Digits for small codes, ``#(x,y)`` (nested) for large ones.

    With ``limit`` the text is cut after about that many characters and
    ends in ``...`` (such abbreviations do not parse back).
    """
    if not isinstance(n, PairCode):
        return str(n)
    out = ["#"]
    size = 1
    stack = [n]
    while stack:
        if limit is not None and size > limit:
            return "".join(out)[:limit] + "..."
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif isinstance(item, PairCode):
            out.append("(")
            stack.extend([")", item.y, ",", item.x])
        else:
            out.append(str(item))
        size += len(out[-1])
    return "".join(out)


def printed_size(n, limit: int) -> int:
    """Length of :func:`show_code` output, counted without building it (capped)."""
    sizes: dict[int, int] = {}
    stack = [n]
    while stack:
        item = stack[-1]
        if not isinstance(item, PairCode):
            stack.pop()
            continue
        if id(item) in sizes:
            stack.pop()
            continue
        pending = [c for c in (item.x, item.y) if isinstance(c, PairCode) and id(c) not in sizes]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        total = 3
        for c in (item.x, item.y):
            total += sizes[id(c)] if isinstance(c, PairCode) else len(str(c))
        sizes[id(item)] = min(total, limit + 1)
    return sizes[id(n)] + 1 if isinstance(n, PairCode) else len(str(n))


def parse_code(text: str):
    """Parse ``n``, ``#n``, nested ``#(x,y)`` or sequence literals ``<x1,..,xk>``."""
    s = text
    pos = 0

    def peek():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1
        return s[pos] if pos < len(s) else ""

    def expect(ch):
        nonlocal pos
        if peek() != ch:
            raise ValueError(f"expected {ch!r} at {pos} in {text!r}")
        pos += 1

    def item():
        nonlocal pos
        c = peek()
        if c == "<":
            pos += 1
            items = [item()]
            while peek() == ",":
                pos += 1
                items.append(item())
            expect(">")
            return encode_seq(items)
        if c == "#":
            pos += 1
            c = peek()
        if c == "(":
            pos += 1
            x = item()
            expect(",")
            y = item()
            expect(")")
            return pair_nat(x, y)
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"bad index literal {text!r} at {pos}")
        return canonical(int(s[start:pos]))

    val = item()
    if peek():
        raise ValueError(f"trailing input in index literal {text!r}")
    return val


def sample_code(rng: random.Random, p: Pca):
    """Mix of raw naturals, primitives and small combinations of them."""
    roll = rng.random()
    if roll < 0.3:
        return rng.randrange(200)
    prims = [K, S, SUCC, PRED, IFZ, code(1, rng.randrange(20)), code(3, K), code(4, pair_nat(K, K))]
    if roll < 0.7:
        return rng.choice(prims)
    a, b = rng.choice(prims), rng.choice(prims + [rng.randrange(20)])
    out = k1_apply(a, b, 50)
    return out.value if isinstance(out, Value) else a


def code_of(t: Term):
    """Evaluate a closed term over K1 primitives and return its code."""
    for c in _consts(t):
        if not (isinstance(c, PairCode) or (type(c) is int and c >= 0)):
            raise ValueError(f"not a K1 code: {c!r}")
    out = eval_term(K1_PCA, t, 10**6)
    if not isinstance(out, Value):
        raise ValueError(f"term has no value in K1: {out}")
    return out.value


def _consts(t: Term):
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Const):
            yield u.value
        elif isinstance(u, App):
            stack.extend([u.fun, u.arg])
        elif isinstance(u, Var):
            raise ValueError(f"free variable {u.name!r}")


K1_PCA = K1()

"""A strict pca on the carrier of any pca.

Codes are toolkit tuples over the base ``A`` whose head is a numeral::

    [1] a = [1,a]              [1,a] b = a
    [2] [a,b,c] ~ a c (b c)    (application in A')
    [3,e] a = [3,e,a]          [3,e,a] b = [3,e,a,b]      [3,e,a,b] c ~ e [a,b,c]
    [4] a = [4,a]              [4,a] b ~ ab               (application in A)

with ``k' = [1]`` and ``s' = [3,[2]]``; then ``s'abc ~ ac(bc)`` in both
directions.  Anything else does not apply.
"""
from __future__ import annotations

import random

from .core import Diverges, Fuel, OutOfFuel, Outcome, Pca, run_fueled

# budget for recognizing a code; genuine codes decode far below it
DECODE_FUEL = 20_000
MAX_TAG = 4
MAX_LEN = 4


class StrictPca(Pca):
    """``A'`` over a non-trivial base; see :func:`strict_pca`."""

    def __init__(self, base: Pca, clauses: int = 4):
        if clauses not in (3, 4):
            raise ValueError("clauses must be 3 or 4")
        self.base = base
        self.clauses = clauses
        self.name = f"strict:{base.name}" if clauses == 4 else f"strict3:{base.name}"
        self._decoded: dict = {}
        self._triples: dict = {}
        self.k = self.code(1)
        self.s = self.code(3, self.code(2))

    # codes
    def code(self, tag: int, *items):
        kit = self.base.kit
        return kit.tuple([kit.numeral(tag), *items])

    def decode(self, x) -> tuple | None:
        """``(tag, items)`` if ``x`` is a code ``[tag, items...]``, else ``None``."""
        try:
            return self._decoded[x]
        except KeyError:
            pass
        except TypeError:
            return self._decode(x)
        out = self._decoded[x] = self._decode(x)
        return out

    def _decode(self, x):
        kit = self.base.kit
        fuel = Fuel(DECODE_FUEL)
        try:
            items = kit.decode_tuple(x, fuel, limit=MAX_LEN)
            if not items:
                return None
            tag = kit.decode_numeral(items[0], fuel, limit=MAX_TAG)
        except (OutOfFuel, Diverges):
            return None
        if tag is None or tag == 0:
            return None
        return tag, tuple(items[1:])

    def _triple(self, y):
        key = y
        try:
            return self._triples[key]
        except KeyError:
            pass
        except TypeError:
            key = None
        try:
            items = self.base.kit.decode_tuple(y, Fuel(DECODE_FUEL), limit=3)
        except (OutOfFuel, Diverges):
            items = None
        out = tuple(items) if items is not None and len(items) == 3 else None
        if key is not None:
            self._triples[key] = out
        return out

    # application
    def app(self, x, y, fuel):
        fuel.tick()
        d = self.decode(x)
        if d is None:
            raise Diverges("not a code")
        tag, items = d
        n = len(items)
        if tag == 1:
            if n == 0:
                return self.code(1, y)
            if n == 1:
                return items[0]
        elif tag == 2 and n == 0:
            args = self._triple(y)
            if args is None:
                raise Diverges("[2] expects a triple")
            a, b, c = args
            ac = self.app(a, c, fuel)
            bc = self.app(b, c, fuel)
            return self.app(ac, bc, fuel)
        elif tag == 3:
            if n in (1, 2):
                return self.code(3, *items, y)
            if n == 3:
                e, a, b = items
                return self.app(e, self.base.kit.tuple([a, b, y]), fuel)
        elif tag == 4 and self.clauses == 4:
            if n == 0:
                return self.code(4, y)
            if n == 1:
                return self.base.app(items[0], y, fuel)
        raise Diverges(f"code [{tag}, {n} entries] does not apply")

    def equal(self, a, b):
        return self.base.equal(a, b)

    def nat(self, n):
        return self.base.nat(n)

    def to_nat(self, x):
        return self.base.to_nat(x)

    def show(self, a):
        """Codes print as ``[tag,x,..]``; other elements as in the base."""
        d = self.decode(a)
        if d is None:
            return self.base.show(a)
        return "[" + ",".join([str(d[0]), *(self.show(x) for x in d[1])]) + "]"

    def read(self, text):
        s = text.strip()
        if not s.startswith("["):
            return self.base.read(s)
        if not s.endswith("]"):
            raise ValueError(f"unterminated code literal {text!r}")
        parts = _split_top(s[1:-1])
        if not parts or not parts[0].strip().isdigit():
            raise ValueError(f"code literal needs a numeric tag: {text!r}")
        return self.code(int(parts[0]), *(self.read(x) for x in parts[1:]))

    def sample(self, rng: random.Random):
        roll = rng.random()
        if roll < 0.25:
            return rng.choice([self.k, self.s, self.code(2)] + ([self.code(4)] if self.clauses == 4 else []))
        if roll < 0.5 and self.clauses == 4:
            return self.code(4, self.base.sample(rng))
        if roll < 0.75:
            return self.code(1, self.sample(rng) if rng.random() < 0.3 else self.base.sample(rng))
        if roll < 0.9:
            return self.code(3, self.k if rng.random() < 0.5 else self.s)
        return self.base.sample(rng)


def _split_top(s: str) -> list[str]:
    """Split at commas not nested in brackets."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch in "[(<":
            depth += 1
        elif ch in "])>":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append(s[start:i])
            start = i + 1
    out.append(s[start:])
    return [x for x in out if x.strip()] if s.strip() else []


def strict_pca(base: Pca, clauses: int = 4) -> Pca:
    """The strict pca ``A'`` on the carrier of ``base``.

    A trivial base is already strict and is returned as is.
    """
    if base.is_trivial:
        return base
    return base.memo(f"strict{clauses}", lambda: StrictPca(base, clauses))


def strict_apply(base: Pca, x, y, fuel: int | Fuel) -> Outcome:
    p = strict_pca(base)
    return run_fueled(lambda f: p.app(x, y, f), fuel)


def embed_realizer(base: Pca):
    """``[4]``: realizes the identity relation ``A -> A'``."""
    return strict_pca(base).code(4) if not base.is_trivial else base.k

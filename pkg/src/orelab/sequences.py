"""The sequence ring P = prod_N R on eventually periodic sequences.

A sequence is stored as an explicit prefix followed by a repeating period
(a constant tail is a period of length one).  Pointwise sums and products
and the left shift stay inside this class, so no operation ever truncates.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple

from .rings import Element, Ring


class Seq(NamedTuple):
    prefix: tuple
    period: tuple

    def at(self, i: int) -> Element:
        n = len(self.prefix)
        if i < n:
            return self.prefix[i]
        return self.period[(i - n) % len(self.period)]


def _canonical(prefix: tuple, period: tuple) -> Seq:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and all(period[i] == period[i % d] for i in range(n)):
            period = period[:d]
            break
    while prefix and prefix[-1] == period[-1]:
        period = (prefix[-1],) + period[:-1]
        prefix = prefix[:-1]
    return Seq(prefix, period)


class SequenceRing(Ring):
    """``P(R)``: all sequences over ``R`` with pointwise operations."""

    exact_equality = False

    def __init__(self, base: Ring, window: int = 16):
        self.base = base
        self.window = window
        self.characteristic = base.characteristic
        self.descriptor = f"P({base.descriptor})"

    def _zero(self):
        return Seq((), (self.base.zero,))

    def _one(self):
        return Seq((), (self.base.one,))

    def _pointwise(self, a: Seq, b: Seq, op) -> Seq:
        n = max(len(a.prefix), len(b.prefix))
        p = math.lcm(len(a.period), len(b.period))
        prefix = tuple(op(a.at(i), b.at(i)) for i in range(n))
        period = tuple(op(a.at(i), b.at(i)) for i in range(n, n + p))
        return _canonical(prefix, period)

    def _add(self, a, b):
        return self._pointwise(a, b, lambda x, y: x + y)

    def _neg(self, a):
        return Seq(tuple(-x for x in a.prefix), tuple(-x for x in a.period))

    def _mul(self, a, b):
        return self._pointwise(a, b, lambda x, y: x * y)

    def _from_int(self, n):
        return Seq((), (self.base(n),))

    def _eq(self, a, b, window=None):
        w = self.window if window is None else window
        return all(self.base._eq(a.at(i).value, b.at(i).value, None) for i in range(w))

    def _format(self, a):
        pre = "[" + ",".join(str(x) for x in a.prefix) + "]"
        if len(a.period) == 1:
            return f"prefix {pre} then const {a.period[0]}"
        return f"prefix {pre} then period [" + ",".join(str(x) for x in a.period) + "]"

    def _sample(self, rng):
        prefix = tuple(self.base.sample(rng) for _ in range(rng.randint(0, 3)))
        period = tuple(self.base.sample(rng) for _ in range(rng.randint(1, 2)))
        return _canonical(prefix, period)

    def _coerce(self, x):
        if isinstance(x, Seq):
            return _canonical(tuple(self.base(c) for c in x.prefix),
                              tuple(self.base(c) for c in x.period))
        if isinstance(x, (list, tuple)):
            # a bare list is a finitely supported sequence
            return _canonical(tuple(self.base(c) for c in x), (self.base.zero,))
        return super()._coerce(x)

    def _embed(self, x):
        try:
            return Seq((), (self.base(x),))
        except (TypeError, ValueError):
            return None

    # constructors and accessors -------------------------------------
    def make(self, prefix: Iterable = (), period: Iterable | None = None, const=None) -> Element:
        """Sequence ``prefix`` followed by ``period`` repeated (or ``const`` forever)."""
        if period is None:
            period = (0 if const is None else const,)
        elif const is not None:
            raise ValueError("give either period or const, not both")
        period = tuple(self.base(c) for c in period)
        if not period:
            raise ValueError("period must be nonempty")
        return self.wrap(_canonical(tuple(self.base(c) for c in prefix), period))

    def constant(self, c) -> Element:
        return self.make(period=(c,))

    def at(self, s: Element, i: int) -> Element:
        return self(s).value.at(i)

    def window_values(self, s: Element, w: int) -> list[Element]:
        v = self(s).value
        return [v.at(i) for i in range(w)]

    def exact_eq(self, a: Element, b: Element) -> bool:
        """Equality of canonical forms; decides equality for exact base rings."""
        return self(a).value == self(b).value

    def shift(self, s: Element) -> Element:
        """``(r_0, r_1, ...) -> (r_1, r_2, ...)``."""
        v = self(s).value
        if v.prefix:
            return self.wrap(_canonical(v.prefix[1:], v.period))
        return self.wrap(_canonical((), v.period[1:] + v.period[:1]))

    def prepend(self, c, s: Element) -> Element:
        """A preimage of ``s`` under the shift."""
        v = self(s).value
        return self.wrap(_canonical((self.base(c),) + v.prefix, v.period))

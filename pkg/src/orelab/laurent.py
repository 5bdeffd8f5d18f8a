"""Truncated Laurent series K[[x]][x^-1] with capped relative precision.

Payload ``(val, coeffs, prec)`` stands for ``sum coeffs[i] x^(val+i)`` known
modulo ``x^prec``; ``len(coeffs) == prec - val`` and ``coeffs[0]`` is nonzero.
Exact zero has ``val == prec == inf``.  Every result is capped to ``N``
known coefficients past its valuation, so equality compares up to the
smaller of the two absolute precisions.
"""

from __future__ import annotations

import itertools
import math

from .errors import PrecisionError
from .rings import IntegerModRing, IntegerRing, Ring

INF = math.inf
_ZERO = (INF, (), INF)


class LaurentRing(Ring):
    exact_equality = False

    def __init__(self, base: Ring, prec: int):
        if prec < 1:
            raise PrecisionError("Laurent precision must be positive")
        self.base = base
        self.N = prec
        self.window = None
        self.characteristic = base.characteristic
        self.descriptor = f"Laurent({base.descriptor},prec={prec})"

    def _norm(self, val, coeffs, prec):
        coeffs = list(coeffs)
        i = 0
        while i < len(coeffs) and coeffs[i].is_zero():
            i += 1
        if i == len(coeffs):
            return _ZERO if prec == INF else (prec, (), prec)
        val = val + i
        coeffs = coeffs[i:]
        prec = min(prec, val + self.N)
        return (val, tuple(coeffs[: prec - val]), prec)

    @staticmethod
    def _c(a, e, zero):
        val, coeffs, prec = a
        if val <= e < val + len(coeffs):
            return coeffs[e - val]
        return zero

    def _zero(self):
        return _ZERO

    def _one(self):
        return self._from_int(1)

    def _from_int(self, n):
        c = self.base(n)
        if c.is_zero():
            return _ZERO
        z = self.base.zero
        return (0, (c,) + (z,) * (self.N - 1), self.N)

    def _add(self, a, b):
        v = min(a[0], b[0])
        p = min(a[2], b[2])
        if v == INF:
            return _ZERO
        z = self.base.zero
        return self._norm(v, [self._c(a, e, z) + self._c(b, e, z) for e in range(v, p)], p)

    def _neg(self, a):
        return (a[0], tuple(-c for c in a[1]), a[2])

    def _mul(self, a, b):
        v = a[0] + b[0]
        p = min(a[2] + b[0], b[2] + a[0])
        if v == INF or p == INF:
            return _ZERO
        z = self.base.zero
        out = []
        for e in range(v, p):
            s = z
            for i in range(a[0], e - b[0] + 1):
                s = s + self._c(a, i, z) * self._c(b, e - i, z)
            out.append(s)
        return self._norm(v, out, p)

    def _eq(self, a, b, window=None):
        top = min(a[2], b[2])
        if window is not None:
            top = min(top, window)
        low = min(a[0], b[0])
        if low >= top:
            return True
        z = self.base.zero
        return all(self._c(a, e, z) == self._c(b, e, z) for e in range(int(low), int(top)))

    def _format(self, a):
        val, coeffs, prec = a
        if val == INF:
            return "0"
        terms = []
        for i, c in enumerate(coeffs):
            if c.is_zero():
                continue
            e = val + i
            mono = "1" if e == 0 else ("x" if e == 1 else f"x^{e}")
            terms.append(mono if c.is_one() and e != 0 else (str(c) if e == 0 else f"{c}*{mono}"))
        return " + ".join(terms) + f" + O(x^{prec})"

    def _sample(self, rng):
        val = rng.randint(-2, 2)
        lead = self.base.sample(rng)
        while lead.is_zero():
            lead = self.base.sample(rng)
        coeffs = (lead,) + tuple(self.base.sample(rng) for _ in range(self.N - 1))
        return (val, coeffs, val + self.N)

    def _embed(self, x):
        try:
            c = self.base(x)
        except (TypeError, ValueError):
            return None
        if c.is_zero():
            return _ZERO
        return (0, (c,) + (self.base.zero,) * (self.N - 1), self.N)

    # helpers -------------------------------------------------------
    def series(self, val: int, coeffs) -> "Element":
        """``x^val * sum coeffs[i] x^i``, known to the ring's relative precision."""
        coeffs = [self.base(c) for c in coeffs]
        coeffs += [self.base.zero] * (self.N - len(coeffs))
        return self.wrap(self._norm(val, coeffs[: self.N], val + self.N))

    def monomial(self, e: int, c=1):
        return self.series(e, [c])

    def valuation(self, a) -> float:
        return self(a).value[0]

    def precision(self, a) -> float:
        return self(a).value[2]

    def coefficient(self, a, e: int):
        return self._c(self(a).value, e, self.base.zero)

    def substitute_power(self, a, k: int):
        """The substitution ``x -> x^k`` (k >= 1)."""
        val, coeffs, prec = self(a).value
        if val == INF:
            return self.zero
        z = self.base.zero
        out = [z] * (len(coeffs) * k)
        for i, c in enumerate(coeffs):
            out[i * k] = c
        return self.wrap(self._norm(val * k, out, prec * k))

    def _unit_inverse(self, c):
        if isinstance(self.base, IntegerModRing):
            if math.gcd(c.value, self.base.n) != 1:
                raise PrecisionError(f"leading coefficient {c} is not invertible")
            return self.base(pow(c.value, -1, self.base.n))
        if isinstance(self.base, IntegerRing) and c.value in (1, -1):
            return c
        raise PrecisionError(f"leading coefficient {c} is not invertible")

    def inverse(self, a):
        """Inverse of a series whose leading coefficient is a unit of the base."""
        val, coeffs, prec = self(a).value
        if val == INF:
            raise ZeroDivisionError("inverse of zero")
        n = len(coeffs)
        inv0 = self._unit_inverse(coeffs[0])
        out = [inv0]
        for k in range(1, n):
            s = self.base.zero
            for i in range(1, k + 1):
                s = s + coeffs[i] * out[k - i]
            out.append(-(inv0 * s))
        return self.wrap(self._norm(-val, out, -val + n))

    def units_of_valuation(self, v: int):
        """Every series of valuation ``v`` with a unit-free enumeration of the tail."""
        nonzero = [c for c in self.base.elements() if not c.is_zero()]
        elems = list(self.base.elements())
        for lead in nonzero:
            for tail in itertools.product(elems, repeat=self.N - 1):
                yield self.wrap((v, (lead,) + tail, v + self.N))


def square_nonsurjectivity_check(R: LaurentRing, window: int = 4, target=None) -> tuple[bool, int]:
    """Bounded check that ``x`` (or ``target``) has no preimage under ``x -> x^2``.

    Every enumerable series with valuation in ``[-window, window]`` is
    substituted; returns ``(no_preimage_found, candidates_tried)``.
    """
    if not R.base.enumerable:
        raise ValueError("the bounded preimage search needs an enumerable coefficient ring")
    target = R.monomial(1) if target is None else R(target)
    tried = 0
    for v in range(-window, window + 1):
        for s in R.units_of_valuation(v):
            tried += 1
            if R.substitute_power(s, 2) == target:
                return False, tried
    return True, tried

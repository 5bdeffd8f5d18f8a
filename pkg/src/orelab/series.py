"""Skew power series R[[x; sigma]] truncated modulo x^N.

``(sum a_i x^i)(sum b_j x^j) = sum a_i sigma^i(b_j) x^(i+j)``.  Precision is a
field of the ring, so mixing precisions is a ring mismatch, never a coercion.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field

from .errors import PrecisionError, PreconditionError, RingMismatchError
from .morphisms import EndoMap, entrywise, identity
from .report import Report
from .rings import Element, MatrixRing, Ring


class SkewSeries(Element):
    __slots__ = ()

    @property
    def coeffs(self) -> tuple:
        return self.value

    @property
    def precision(self) -> int:
        return self.ring.N

    def coeff(self, i: int) -> Element:
        """The coefficient of ``x^i``."""
        return self.value[i]


class SkewSeriesRing(Ring):
    element_class = SkewSeries

    def __init__(self, base: Ring, sigma: EndoMap | None = None, precision: int = 8):
        if precision < 1:
            raise PrecisionError("precision must be at least 1")
        sigma = sigma or identity(base)
        if sigma.domain != base:
            raise RingMismatchError(f"sigma acts on {sigma.domain}, not {base}")
        self.base = base
        self.sigma = sigma
        self.N = precision
        self.exact_equality = base.exact_equality
        self.enumerable = base.enumerable
        self.characteristic = base.characteristic
        self.descriptor = f"{base.descriptor}[[x;{sigma.name}]]/x^{precision}"

    def __eq__(self, other):
        # sigma objects are rebuilt by the catalog, so compare by name
        return self is other or (isinstance(other, SkewSeriesRing)
                                 and self.descriptor == other.descriptor)

    def __hash__(self):
        return hash(self.descriptor)

    def _zero(self):
        return (self.base.zero,) * self.N

    def _one(self):
        return (self.base.one,) + (self.base.zero,) * (self.N - 1)

    def _from_int(self, n):
        return (self.base(n),) + (self.base.zero,) * (self.N - 1)

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        N = self.N
        out = [self.base.zero] * N
        for j, bj in enumerate(b):
            if bj.is_zero():
                continue
            twisted = bj  # sigma^i(b_j)
            for i in range(N - j):
                if i:
                    twisted = self.sigma(twisted)
                ai = a[i]
                if not ai.is_zero():
                    out[i + j] = out[i + j] + ai * twisted
        return tuple(out)

    def _eq(self, a, b, window=None):
        return all(self.base._eq(x.value, y.value, window) for x, y in zip(a, b))

    def _format(self, a):
        return "[" + ", ".join(str(c) for c in a) + f"] @ {self.N}"

    def _sample(self, rng):
        return tuple(self.base.sample(rng) for _ in range(self.N))

    def _elements(self):
        elems = list(self.base.elements())
        return itertools.product(elems, repeat=self.N)

    def _coerce(self, x):
        if isinstance(x, (list, tuple)):
            if len(x) > self.N:
                raise PrecisionError(f"{len(x)} coefficients exceed precision {self.N}")
            cs = [self.base(c) for c in x]
            return tuple(cs) + (self.base.zero,) * (self.N - len(cs))
        return super()._coerce(x)

    def _embed(self, x):
        try:
            return (self.base(x),) + (self.base.zero,) * (self.N - 1)
        except (RingMismatchError, TypeError, ValueError):
            return None

    def series(self, coeffs) -> SkewSeries:
        return self.wrap(self._coerce(list(coeffs)))

    def gen(self) -> SkewSeries:
        if self.N == 1:
            return self.zero
        return self.series([0, 1])

    def sample_unit_constant(self, rng: random.Random) -> SkewSeries:
        """A random series with constant term 1."""
        return self.wrap((self.base.one,) + tuple(self.base.sample(rng) for _ in range(self.N - 1)))


def series_mul(p: SkewSeries, q: SkewSeries) -> SkewSeries:
    if p.ring != q.ring:
        if isinstance(q.ring, SkewSeriesRing) and isinstance(p.ring, SkewSeriesRing) \
                and p.ring.N != q.ring.N:
            raise PrecisionError(f"precision mismatch: {p.ring.N} vs {q.ring.N}")
        raise RingMismatchError(f"series over {p.ring} and {q.ring}")
    return p * q


def right_inverse(p: SkewSeries) -> SkewSeries:
    """``q`` with ``p q = 1 mod x^N``, for ``p`` with constant term 1.

    ``q_0 = 1`` and ``q_k = -sum_{i=1..k} p_i sigma^i(q_{k-i})``.
    """
    ring: SkewSeriesRing = p.ring
    if not p.value[0].is_one():
        raise PreconditionError(f"constant term {p.value[0]} is not 1")
    q = [ring.base.one]
    for k in range(1, ring.N):
        s = ring.base.zero
        for i in range(1, k + 1):
            s = s + p.value[i] * ring.sigma.power(i, q[k - i])
        q.append(-s)
    return ring.wrap(tuple(q))


# --- idempotents with constant term 1 ------------------------------------------------


@dataclass
class IdempotentSolution:
    series: SkewSeries
    steps: list[dict] = field(default_factory=list)

    @property
    def is_one(self) -> bool:
        return self.series == self.series.ring.one


def idempotent_constant_one_solve(base: Ring, sigma: EndoMap | None, N: int) -> IdempotentSolution:
    """Solve ``e^2 = e`` with ``e_0 = 1`` one coefficient at a time.

    Comparing coefficients of ``x^k`` gives ``r_k = 2 r_k + C_k`` where
    ``C_k = sum_{i,j>=1, i+j=k} r_i sigma^i(r_j)`` involves only earlier
    coefficients, so ``r_k = -C_k`` is forced.  Each step is recorded.
    """
    ring = SkewSeriesRing(base, sigma, N)
    sig = ring.sigma
    r = [base.one]
    steps = []
    for k in range(1, N):
        cross = base.zero
        for i in range(1, k):
            cross = cross + r[i] * sig.power(i, r[k - i])
        rk = -cross
        if rk != rk + rk + cross:
            raise ArithmeticError(f"coefficient equation fails at k={k}")
        steps.append({"k": k, "earlier_all_zero": all(c.is_zero() for c in r[1:]),
                      "cross_term": str(cross), "r_k": str(rk),
                      "forcing": "r_k = 2 r_k" if cross.is_zero() else "r_k = -C_k"})
        r.append(rk)
    e = ring.wrap(tuple(r))
    if not (e * e) == e:
        raise ArithmeticError("solved series is not idempotent")
    return IdempotentSolution(e, steps)


def idempotents_brute_force(base: Ring, sigma: EndoMap | None, N: int) -> list[SkewSeries]:
    """All idempotents with constant term 1, by enumerating every tail."""
    ring = SkewSeriesRing(base, sigma, N)
    elems = list(base.elements())
    found = []
    for tail in itertools.product(elems, repeat=N - 1):
        e = ring.wrap((base.one,) + tail)
        if e * e == e:
            found.append(e)
    return found


def direct_finiteness_instance(p: SkewSeries, q: SkewSeries, base_directly_finite: bool = True) -> Report:
    """From ``pq = 1`` derive that ``e = qp`` is idempotent with constant term 1.

    For a directly finite base this forces ``qp = 1``; all checks are mod ``x^N``.
    """
    ring = p.ring
    if not (p * q).is_one():
        raise PreconditionError("pq is not 1 modulo x^N")
    e = q * p
    rep = Report("direct_finiteness_instance", parameters={"precision": ring.N, "ring": str(ring)})
    rep.add("e^2=e mod x^N", e * e == e)
    rep.add("e_0=q_0*p_0", e.value[0] == q.value[0] * p.value[0])
    if base_directly_finite:
        rep.add("qp=1 mod x^N", e.is_one(), witness=None if e.is_one() else str(e))
    return rep


# --- 2x2 matrices of series vs series over M_2 ------------------------------------------------------------------------


def matrix_series_ring(ring: SkewSeriesRing, n: int) -> SkewSeriesRing:
    """``M_n(R)[[x; sigma*]]`` at the same precision."""
    M = MatrixRing(ring.base, n)
    return SkewSeriesRing(M, entrywise(ring.sigma, M), ring.N)


def matrix_series_iso(A) -> SkewSeries:
    """``M_n(R[[x;sigma]]) -> M_n(R)[[x;sigma*]]``: coefficient k is the matrix of k-th coefficients."""
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise ValueError("expected a nonempty square matrix of series")
    ring = A[0][0].ring
    if any(e.ring != ring for row in A for e in row):
        raise RingMismatchError("entries must share base, sigma and precision")
    target = matrix_series_ring(ring, n)
    M = target.base
    coeffs = tuple(M.wrap(tuple(tuple(A[i][j].value[k] for j in range(n)) for i in range(n)))
                   for k in range(ring.N))
    return target.wrap(coeffs)


def matrix_series_iso_inverse(s: SkewSeries, ring: SkewSeriesRing) -> list[list[SkewSeries]]:
    M = s.ring.base
    n = M.k
    return [[ring.wrap(tuple(c.value[i][j] for c in s.value)) for j in range(n)] for i in range(n)]


def matrix_of_series_mul(A, B) -> list[list[SkewSeries]]:
    n = len(A)
    return [[functools.reduce(lambda s, t: s + t, (A[i][k] * B[k][j] for k in range(n)))
             for j in range(n)] for i in range(n)]

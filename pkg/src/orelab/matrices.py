"""Lazy N x N matrices with finite row supports, and the band map theta.

Entries are computed on demand from an oracle and memoized.  Because every
row has a declared finite support, products are exact finite sums.  Infinite
objects are compared on a leading ``w x w`` corner (``window_eq``), and every
report names its window.
"""

from __future__ import annotations

import random
import threading
from typing import Callable, Iterable

from .errors import PrecisionError, PreconditionError, RingMismatchError
from .morphisms import EndoMap, sequence_shift
from .report import Report
from .rings import Element, Ring
from .sequences import SequenceRing
from .series import SkewSeries, SkewSeriesRing, right_inverse

Support = Callable[[int], Iterable[int]]


class LazyMatrix:
    """An N x N matrix over ``base`` given by an entry oracle.

    ``row_support(i)`` must contain every column where row ``i`` may be
    nonzero (over-approximation is allowed).  ``col_support`` is optional;
    for upper-triangular matrices it defaults to ``range(j + 1)``.
    """

    def __init__(self, base: Ring, entry: Callable[[int, int], Element], row_support: Support,
                 upper_triangular: bool = False, col_support: Support | None = None,
                 name: str = "M"):
        self.base = base
        self._entry = entry
        self._row_support = row_support
        self._col_support = col_support
        self.upper_triangular = upper_triangular
        self.name = name
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __call__(self, i: int, j: int) -> Element:
        key = (i, j)
        try:
            return self._cache[key]
        except KeyError:
            pass
        v = self.base(self._entry(i, j))
        with self._lock:
            self._cache[key] = v
        return v

    def row_support(self, i: int) -> tuple[int, ...]:
        key = ("r", i)
        if key not in self._cache:
            s = tuple(sorted(set(self._row_support(i))))
            with self._lock:
                self._cache[key] = s
        return self._cache[key]

    def has_col_support(self) -> bool:
        return self._col_support is not None or self.upper_triangular

    def col_support(self, j: int) -> tuple[int, ...]:
        key = ("c", j)
        if key not in self._cache:
            if self._col_support is not None:
                s = tuple(sorted(set(self._col_support(j))))
            elif self.upper_triangular:
                s = tuple(range(j + 1))
            else:
                raise PreconditionError(f"{self.name} has no column support")
            with self._lock:
                self._cache[key] = s
        return self._cache[key]

    def window(self, w: int) -> list[list[Element]]:
        return [[self(i, j) for j in range(w)] for i in range(w)]

    def __add__(self, other):
        return lazy_add(self, other)

    def __sub__(self, other):
        return lazy_add(self, lazy_neg(other))

    def __neg__(self):
        return lazy_neg(self)

    def __mul__(self, other):
        return lazy_mul(self, other)

    def __repr__(self):
        return f"LazyMatrix({self.name} over {self.base})"


def _same_base(M: LazyMatrix, N: LazyMatrix) -> Ring:
    if M.base != N.base:
        raise RingMismatchError(f"matrices over {M.base} and {N.base}")
    return M.base


def lazy_add(M: LazyMatrix, N: LazyMatrix) -> LazyMatrix:
    _same_base(M, N)
    col = None
    if M.has_col_support() and N.has_col_support():
        col = lambda j: set(M.col_support(j)) | set(N.col_support(j))
    return LazyMatrix(M.base, lambda i, j: M(i, j) + N(i, j),
                      lambda i: set(M.row_support(i)) | set(N.row_support(i)),
                      M.upper_triangular and N.upper_triangular, col, f"({M.name}+{N.name})")


def lazy_neg(M: LazyMatrix) -> LazyMatrix:
    col = M.col_support if M.has_col_support() else None
    return LazyMatrix(M.base, lambda i, j: -M(i, j), M.row_support, M.upper_triangular, col,
                      f"-{M.name}")


def lazy_mul(M: LazyMatrix, N: LazyMatrix) -> LazyMatrix:
    """``(MN)(i,j) = sum_{k in supp_M(i)} M(i,k) N(k,j)``."""
    base = _same_base(M, N)

    def entry(i, j):
        s = base.zero
        for k in M.row_support(i):
            a = M(i, k)
            if not a.is_zero():
                s = s + a * N(k, j)
        return s

    def rows(i):
        out = set()
        for k in M.row_support(i):
            out.update(N.row_support(k))
        return out

    col = None
    if M.has_col_support() and N.has_col_support():
        def col(j):
            out = set()
            for k in N.col_support(j):
                out.update(M.col_support(k))
            return out

    return LazyMatrix(base, entry, rows, M.upper_triangular and N.upper_triangular, col,
                      f"{M.name}{N.name}")


def transpose(M: LazyMatrix) -> LazyMatrix:
    """Needs column supports (declared, or implied by upper-triangularity)."""
    if not M.has_col_support():
        raise PreconditionError(f"cannot transpose {M.name} without column supports")
    return LazyMatrix(M.base, lambda i, j: M(j, i), M.col_support, False, M.row_support,
                      f"{M.name}^t")


def window_eq(M: LazyMatrix, N: LazyMatrix, w: int) -> bool:
    """Compare the leading ``w x w`` corners."""
    _same_base(M, N)
    return all(M(i, j) == N(i, j) for i in range(w) for j in range(w))


def support_sound(M: LazyMatrix, samples: Iterable[tuple[int, int]]) -> bool:
    """Every sampled entry outside the declared row support is zero."""
    return all(M(i, j).is_zero() for i, j in samples if j not in M.row_support(i))


def triangular_sound(M: LazyMatrix, w: int) -> bool:
    return all(M(i, j).is_zero() for i in range(w) for j in range(i))


# --- standard matrices -------------------------------------------------------------


def identity_matrix(base: Ring) -> LazyMatrix:
    one, zero = base.one, base.zero
    return LazyMatrix(base, lambda i, j: one if i == j else zero, lambda i: (i,), True,
                      lambda j: (j,), "I")


def zero_matrix(base: Ring) -> LazyMatrix:
    return LazyMatrix(base, lambda i, j: base.zero, lambda i: (), True, lambda j: (), "0")


def unit_matrix(base: Ring, r: int = 0, c: int = 0) -> LazyMatrix:
    """``E_rc``: a single 1 at ``(r, c)``."""
    one, zero = base.one, base.zero
    return LazyMatrix(base, lambda i, j: one if (i, j) == (r, c) else zero,
                      lambda i: (c,) if i == r else (), r <= c,
                      lambda j: (r,) if j == c else (), f"E{r}{c}")


def superdiagonal(base: Ring, k: int = 1) -> LazyMatrix:
    one, zero = base.one, base.zero
    return LazyMatrix(base, lambda i, j: one if j == i + k else zero, lambda i: (i + k,), True,
                      lambda j: (j - k,) if j >= k else (), f"S{k}")


# --- banded matrices and theta --------------------------------------------------------


class BandedMatrix:
    """Upper-triangular matrix with finitely many nonzero superdiagonals.

    ``diagonals[j]`` is the sequence ``(M(i, i+j))_i`` as an element of ``P(base)``.
    """

    def __init__(self, base: Ring, diagonals: dict[int, Element] | None = None):
        self.base = base
        self.P = SequenceRing(base)
        diags = {}
        for j, s in (diagonals or {}).items():
            if j < 0:
                raise ValueError("bands are indexed by natural numbers")
            s = self.P(s)
            if not self.P.exact_eq(s, self.P.zero):
                diags[j] = s
        self.diagonals = dict(sorted(diags.items()))

    @property
    def max_band(self) -> int:
        return max(self.diagonals, default=-1)

    def entry(self, i: int, j: int) -> Element:
        s = self.diagonals.get(j - i)
        return s.value.at(i) if s is not None else self.base.zero

    def to_lazy(self, name: str = "M") -> LazyMatrix:
        keys = tuple(self.diagonals)
        return LazyMatrix(self.base, self.entry, lambda i: tuple(i + k for k in keys), True,
                          lambda j: tuple(j - k for k in keys if j - k >= 0), name)

    def __add__(self, other: "BandedMatrix") -> "BandedMatrix":
        keys = set(self.diagonals) | set(other.diagonals)
        z = self.P.zero
        return BandedMatrix(self.base, {k: self.diagonals.get(k, z) + other.diagonals.get(k, z)
                                        for k in keys})

    def __repr__(self):
        return "band{" + ", ".join(f"{j}: {s}" for j, s in self.diagonals.items()) + "}"


def random_banded(base: Ring, rng: random.Random, max_bands: int = 4,
                  max_band_index: int = 3) -> BandedMatrix:
    P = SequenceRing(base)
    n = rng.randint(1, max_bands)
    keys = rng.sample(range(max_band_index + 1), min(n, max_band_index + 1))
    return BandedMatrix(base, {k: P.sample(rng) for k in keys})


def theta_ring(base: Ring, N: int) -> SkewSeriesRing:
    """``P[[x; shift]]`` modulo ``x^N`` with ``P = prod_N base``."""
    P = SequenceRing(base)
    return SkewSeriesRing(P, sequence_shift(P), N)


def theta(M: BandedMatrix, N: int) -> SkewSeries:
    """``sum_j (M(i, i+j))_i x^j``; every band must be below the precision."""
    if M.max_band >= N:
        raise PrecisionError(f"band {M.max_band} does not fit precision {N}")
    ring = theta_ring(M.base, N)
    return ring.series([M.diagonals.get(j, 0) for j in range(N)])


def theta_inverse(s: SkewSeries) -> BandedMatrix:
    """The banded matrix whose j-th superdiagonal is coefficient j."""
    P = s.ring.base
    if not isinstance(P, SequenceRing):
        raise RingMismatchError("theta_inverse expects a series over a sequence ring")
    return BandedMatrix(P.base, {j: c for j, c in enumerate(s.value)})


def band_window(M: LazyMatrix, j: int, w: int) -> list[Element]:
    """``[M(i, i+j) for i < w]``."""
    return [M(i, i + j) for i in range(w)]


def theta_report(pairs: list[tuple[BandedMatrix, BandedMatrix]], N: int, w: int,
                 name: str = "theta_isomorphism") -> Report:
    """Additivity and multiplicativity of theta on sampled pairs.

    The products are formed independently: on the matrix side by lazy
    finite sums, on the series side by the twisted convolution.  The
    intermediate pointwise sum ``sum_k M(i,i+k) N(i+k,i+j)`` is compared too.
    """
    rep = Report(name, parameters={"precision": N, "window": w, "pairs": len(pairs)})
    add_bad = mul_bad = mid_bad = None
    for idx, (M, Nn) in enumerate(pairs):
        tM, tN = theta(M, N), theta(Nn, N)
        LM, LN = M.to_lazy("M"), Nn.to_lazy("N")
        S, Pm = lazy_add(LM, LN), lazy_mul(LM, LN)
        tsum, tprod = tM + tN, tM * tN
        P = tsum.ring.base
        for j in range(N):
            if add_bad is None and P.window_values(tsum.value[j], w) != band_window(S, j, w):
                add_bad = (idx, j)
            series_side = P.window_values(tprod.value[j], w)
            pointwise = [sum((M.entry(i, i + k) * Nn.entry(i + k, i + j) for k in range(j + 1)),
                             M.base.zero) for i in range(w)]
            if mid_bad is None and series_side != pointwise:
                mid_bad = (idx, j)
            if mul_bad is None and series_side != band_window(Pm, j, w):
                mul_bad = (idx, j)
    rep.add("theta(M+N)=theta(M)+theta(N)", add_bad is None, witness=add_bad)
    rep.add("series product = pointwise band sums", mid_bad is None, witness=mid_bad)
    rep.add("theta(MN)=theta(M)theta(N)", mul_bad is None, witness=mul_bad)
    return rep


# --- the A, B splitting pair -----------------------------------------------------------------------


def lemma13_witnesses(base: Ring, window: int = 32) -> tuple[LazyMatrix, LazyMatrix, Report]:
    """``A(i,2i) = 1`` and ``B(i,2i+1) = 1``, zero elsewhere."""
    one, zero = base.one, base.zero
    A = LazyMatrix(base, lambda i, j: one if j == 2 * i else zero, lambda i: (2 * i,), True,
                   lambda j: (j // 2,) if j % 2 == 0 else (), "A")
    B = LazyMatrix(base, lambda i, j: one if j == 2 * i + 1 else zero, lambda i: (2 * i + 1,),
                   True, lambda j: ((j - 1) // 2,) if j % 2 == 1 else (), "B")
    At, Bt = transpose(A), transpose(B)
    I, Z = identity_matrix(base), zero_matrix(base)
    rep = Report(f"lemma13[{base}]", parameters={"window": window})
    rep.add("AA^t=I", window_eq(A * At, I, window))
    rep.add("BB^t=I", window_eq(B * Bt, I, window))
    rep.add("AB^t=0", window_eq(A * Bt, Z, window))
    rep.add("BA^t=0", window_eq(B * At, Z, window))
    return A, B, rep


def recover_coefficients(Z: LazyMatrix, A: LazyMatrix, B: LazyMatrix) -> tuple[LazyMatrix, LazyMatrix]:
    """``(Z A^t, Z B^t)``, which returns ``(X, Y)`` when ``Z = XA + YB``."""
    return Z * transpose(A), Z * transpose(B)


# --- the shift endomorphism of UM_N(R) ------------------------------------------------


def umat_shift_sigma(M: LazyMatrix) -> LazyMatrix:
    """Keep ``M(0,0)`` in the corner and move ``M`` one step down the diagonal."""
    zero = M.base.zero

    def entry(i, j):
        if i == 0 and j == 0:
            return M(0, 0)
        if i == 0 or j == 0:
            return zero
        return M(i - 1, j - 1)

    def rows(i):
        if i == 0:
            return (0,)
        return tuple(k + 1 for k in M.row_support(i - 1))

    col = None
    if M.has_col_support():
        col = lambda j: (0,) if j == 0 else tuple(k + 1 for k in M.col_support(j - 1))
    return LazyMatrix(M.base, entry, rows, M.upper_triangular, col, f"sigma({M.name})")


class UMatRing(Ring):
    """``UM_N(R)`` with lazily evaluated elements and windowed equality."""

    exact_equality = False

    def __init__(self, base: Ring, window: int = 16):
        self.base = base
        self.window = window
        self.characteristic = base.characteristic
        self.descriptor = f"UMat({base.descriptor})"

    def _zero(self):
        return zero_matrix(self.base)

    def _one(self):
        return identity_matrix(self.base)

    def _add(self, a, b):
        return lazy_add(a, b)

    def _neg(self, a):
        return lazy_neg(a)

    def _mul(self, a, b):
        return lazy_mul(a, b)

    def _from_int(self, n):
        c, zero = self.base(n), self.base.zero
        return LazyMatrix(self.base, lambda i, j: c if i == j else zero, lambda i: (i,), True,
                          lambda j: (j,), str(n))

    def _eq(self, a, b, window=None):
        return window_eq(a, b, self.window if window is None else window)

    def _format(self, a):
        w = min(self.window, 4)
        rows = ", ".join("[" + ", ".join(str(a(i, j)) for j in range(w)) + ", ...]"
                         for i in range(w))
        return f"[{rows}, ...]"

    def _sample(self, rng):
        return random_banded(self.base, rng, max_bands=3, max_band_index=2).to_lazy()

    def _coerce(self, x):
        if isinstance(x, LazyMatrix):
            if x.base != self.base:
                raise RingMismatchError(f"matrix over {x.base}, ring over {self.base}")
            if not x.upper_triangular:
                raise PreconditionError("UMat elements must be upper triangular")
            return x
        if isinstance(x, BandedMatrix):
            return x.to_lazy()
        return super()._coerce(x)


def umat_shift_report(base: Ring, seed: int = 0, count: int = 50, window: int = 16) -> Report:
    """Endomorphism laws and injectivity of the shift on sampled banded matrices."""
    R = UMatRing(base, window)
    sigma = EndoMap(R, lambda m: R.wrap(umat_shift_sigma(m.value)), "umat_shift", True, False)
    rng = random.Random(seed)
    pairs = [(R.sample(rng), R.sample(rng)) for _ in range(count)]
    rep = Report(f"umat_shift[{base}]", seed=seed, parameters={"window": window, "count": count})
    rep.add("sigma(I)=I", sigma(R.one).eq(R.one, window))
    rep.add("sigma(M+N)=sigma(M)+sigma(N)",
            all(sigma(a + b).eq(sigma(a) + sigma(b), window) for a, b in pairs))
    rep.add("sigma(MN)=sigma(M)sigma(N)",
            all(sigma(a * b).eq(sigma(a) * sigma(b), window) for a, b in pairs))
    # sigma(M) restricted to the (w+1) corner determines M on the w corner
    rep.add("injective_on_samples",
            all(a.eq(b, window) or not sigma(a).eq(sigma(b), window + 1) for a, b in pairs))
    rep.add("upper_triangular_preserved",
            all(triangular_sound(sigma(a).value, window) for a, _ in pairs))
    return rep


# --- theta to series to right inverse ------------------------------------------------------------


def umat_direct_finiteness_demo(base: Ring, N: int = 8, M: BandedMatrix | None = None,
                                window: int = 16, base_directly_finite: bool | None = None) -> Report:
    """theta -> series -> right inverse -> qp, then back through theta^-1."""
    if base_directly_finite is None:
        if base.enumerable:
            from .finiteness import directly_finite_brute

            base_directly_finite = directly_finite_brute(base).verdict == "holds"
        else:
            base_directly_finite = True  # caller-asserted for infinite bases
    if not base_directly_finite:
        raise PreconditionError(f"{base} is not directly finite")
    P = SequenceRing(base)
    if M is None:
        M = BandedMatrix(base, {0: P.constant(1), 1: P.constant(1)})
    rep = Report(f"umat_direct_finiteness[{base}]",
                 parameters={"precision": N, "window": window, "matrix": repr(M)})
    p = theta(M, N)
    rep.add("theta(M) has constant term 1", p.value[0].is_one(), str(p))
    q = right_inverse(p)
    rep.add("pq=1 mod x^N", (p * q).is_one(), witness=str(q))
    rep.add("qp=1 mod x^N", (q * p).is_one())
    # pull back: only bands below N are determined by the truncation
    LM, LQ = M.to_lazy("M"), theta_inverse(q).to_lazy("Q")
    I = identity_matrix(base)
    in_range = [(i, j) for i in range(window) for j in range(i, min(window, i + N))]
    MQ, QM = LM * LQ, LQ * LM
    rep.add("M Q = I on bands < N", all(MQ(i, j) == I(i, j) for i, j in in_range))
    rep.add("Q M = I on bands < N", all(QM(i, j) == I(i, j) for i, j in in_range))
    rep.add("Q upper triangular", triangular_sound(LQ, window))
    return rep

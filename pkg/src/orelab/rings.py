"""Generic ring handles, elements, and the concrete finite-representation rings.

A :class:`Ring` works on raw payloads (``_add``, ``_mul``, ...); user code
handles :class:`Element` objects, which pair a payload with its ring and
carry the arithmetic operators.  Mixing elements of different rings raises
:class:`RingMismatchError`; plain Python ints are accepted everywhere as the
image of the integers in a unital ring.
"""

from __future__ import annotations

import functools
import itertools
import random
import re
from typing import Any, Iterator

from .errors import DescriptorError, NotEnumerableError, RingMismatchError


class Ring:
    """A unital associative ring with capability flags.

    Subclasses implement the payload hooks.  ``exact_equality`` rings compare
    payloads exactly; the others compare on a finite window (``window``).
    """

    descriptor: str = "?"
    enumerable: bool = False
    exact_equality: bool = True
    characteristic: int = 0
    window: int = 16
    element_class: type = None  # filled in below

    # payload hooks ---------------------------------------------------
    def _zero(self) -> Any:
        raise NotImplementedError

    def _one(self) -> Any:
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _from_int(self, n: int):
        out = self._zero()
        one = self._one() if n >= 0 else self._neg(self._one())
        # double-and-add keeps this cheap for rings without a direct embedding
        step, k = one, abs(n)
        while k:
            if k & 1:
                out = self._add(out, step)
            step = self._add(step, step)
            k >>= 1
        return out

    def _eq(self, a, b, window: int | None = None) -> bool:
        return a == b

    def _format(self, a) -> str:
        return str(a)

    def _sample(self, rng: random.Random):
        raise NotImplementedError

    def _elements(self) -> Iterator[Any]:
        raise NotEnumerableError(f"{self.descriptor} is not enumerable")

    def _coerce(self, x):
        raise TypeError(f"cannot build an element of {self.descriptor} from {x!r}")

    def _embed(self, x: "Element"):
        """Explicit conversion of an element of another ring; None if impossible."""
        return None

    # public API ------------------------------------------------------
    @property
    def windowed_equality(self) -> bool:
        return not self.exact_equality

    def wrap(self, payload) -> "Element":
        return self.element_class(self, payload)

    def __call__(self, x=0) -> "Element":
        if isinstance(x, Element):
            if x.ring == self:
                return x
            payload = self._embed(x)
            if payload is None:
                raise RingMismatchError(f"cannot convert {x!r} from {x.ring} to {self}")
            return self.wrap(payload)
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return self.wrap(self._from_int(x))
        return self.wrap(self._coerce(x))

    @property
    def zero(self) -> "Element":
        return self.wrap(self._zero())

    @property
    def one(self) -> "Element":
        return self.wrap(self._one())

    def eq(self, a: "Element", b: "Element", window: int | None = None) -> bool:
        """Equality; ``window`` overrides the default window for windowed rings."""
        a, b = self(a), self(b)
        return self._eq(a.value, b.value, window)

    def sample(self, rng: random.Random) -> "Element":
        return self.wrap(self._sample(rng))

    def sampler(self, seed: int = 0) -> Iterator["Element"]:
        """Deterministic infinite stream of sampled elements."""
        rng = random.Random(seed)
        while True:
            yield self.sample(rng)

    def elements(self) -> Iterator["Element"]:
        """Every element exactly once (enumerable rings only)."""
        if not self.enumerable:
            raise NotEnumerableError(f"{self.descriptor} is not enumerable")
        for p in self._elements():
            yield self.wrap(p)

    def size(self) -> int:
        if not self.enumerable:
            raise NotEnumerableError(f"{self.descriptor} is not enumerable")
        return sum(1 for _ in self._elements())

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Ring) and type(self) is type(other)
                                 and self.descriptor == other.descriptor)

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.descriptor))

    def __repr__(self) -> str:
        return self.descriptor

    __str__ = __repr__


class Element:
    """An element of a :class:`Ring`.  Immutable."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ring elements are immutable")

    def _other(self, other) -> Any:
        if isinstance(other, Element):
            if other.ring is self.ring or other.ring == self.ring:
                return other.value
            raise RingMismatchError(f"operands in different rings: {self.ring} and {other.ring}")
        if isinstance(other, int):
            return self.ring._from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.ring.wrap(self.ring._add(self.value, o))

    def __radd__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.ring.wrap(self.ring._add(o, self.value))

    def __neg__(self):
        return self.ring.wrap(self.ring._neg(self.value))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.ring.wrap(self.ring._add(self.value, self.ring._neg(o)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.ring.wrap(self.ring._add(o, self.ring._neg(self.value)))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.ring.wrap(self.ring._mul(self.value, o))

    def __rmul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.ring.wrap(self.ring._mul(o, self.value))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only natural exponents are supported")
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            if not (other.ring is self.ring or other.ring == self.ring):
                return False
            return self.ring._eq(self.value, other.value)
        if isinstance(other, int):
            return self.ring._eq(self.value, self.ring._from_int(other))
        return NotImplemented

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        if not self.ring.exact_equality:
            raise TypeError(f"elements of windowed ring {self.ring} are unhashable")
        return hash((self.ring.descriptor, self.value))

    def eq(self, other, window: int | None = None) -> bool:
        return self.ring.eq(self, other, window)

    def is_zero(self, window: int | None = None) -> bool:
        return self.ring._eq(self.value, self.ring._zero(), window)

    def is_one(self, window: int | None = None) -> bool:
        return self.ring._eq(self.value, self.ring._one(), window)

    def __repr__(self) -> str:
        return self.ring._format(self.value)

    __str__ = __repr__


Ring.element_class = Element


# --- integers ---------------------------------------------------------------


class IntegerRing(Ring):
    descriptor = "Z"

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _from_int(self, n):
        return n

    def _sample(self, rng):
        return rng.randint(-5, 5)

    def _coerce(self, x):
        if isinstance(x, str) and re.fullmatch(r"-?\d+", x.strip()):
            return int(x)
        return super()._coerce(x)


class IntegerModRing(Ring):
    enumerable = True

    def __init__(self, n: int):
        if n < 1:
            raise DescriptorError(f"modulus must be positive, got {n}")
        self.n = n
        self.characteristic = n
        self.descriptor = f"Z/{n}"

    def _zero(self):
        return 0

    def _one(self):
        return 1 % self.n

    def _add(self, a, b):
        return (a + b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _from_int(self, n):
        return n % self.n

    def _sample(self, rng):
        return rng.randrange(self.n)

    def _elements(self):
        return iter(range(self.n))

    def size(self):
        return self.n

    def _embed(self, x):
        if isinstance(x.ring, IntegerRing):
            return x.value % self.n
        return None


# --- polynomials in a central variable --------------------------------------


def _strip(coeffs: tuple) -> tuple:
    end = len(coeffs)
    while end and coeffs[end - 1].is_zero():
        end -= 1
    return coeffs[:end]


class PolynomialRing(Ring):
    """``base[var]`` with ``var`` central; payload is a stripped coefficient tuple."""

    def __init__(self, base: Ring, var: str = "y", max_sample_degree: int = 3):
        self.base = base
        self.var = var
        self.max_sample_degree = max_sample_degree
        self.characteristic = base.characteristic
        self.exact_equality = base.exact_equality
        self.descriptor = f"Poly({base.descriptor},{var})"

    def _zero(self):
        return ()

    def _one(self):
        return _strip((self.base.one,))

    def _add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return _strip(tuple(out))

    def _neg(self, a):
        return tuple(-c for c in a)

    def _mul(self, a, b):
        if not a or not b:
            return ()
        out = [self.base.zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return _strip(tuple(out))

    def _from_int(self, n):
        return _strip((self.base(n),))

    def _eq(self, a, b, window=None):
        if len(a) != len(b):
            # windowed bases may hide trailing zeros; compare padded
            if self.exact_equality:
                return False
        n = max(len(a), len(b))
        z = self.base.zero
        for i in range(n):
            ca = a[i] if i < len(a) else z
            cb = b[i] if i < len(b) else z
            if not self.base._eq(ca.value, cb.value, window):
                return False
        return True

    def _format(self, a):
        if not a:
            return "0"
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if c.is_zero():
                continue
            cs = str(c)
            if i == 0:
                terms.append(cs)
                continue
            mono = self.var if i == 1 else f"{self.var}^{i}"
            if c.is_one():
                terms.append(mono)
            elif cs.lstrip("-").isdigit():
                terms.append(f"{cs}*{mono}")
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def _sample(self, rng):
        d = rng.randint(0, self.max_sample_degree)
        return _strip(tuple(self.base.sample(rng) for _ in range(d + 1)))

    def _coerce(self, x):
        if isinstance(x, (list, tuple)):
            return _strip(tuple(self.base(c) for c in x))
        return super()._coerce(x)

    def _embed(self, x):
        if x.ring == self.base:
            return _strip((x,))
        try:
            return _strip((self.base(x),))
        except (RingMismatchError, TypeError):
            return None

    def gen(self) -> Element:
        return self.wrap(_strip((self.base.zero, self.base.one)))

    def coeffs(self, p: Element) -> tuple:
        return self(p).value

    def coeff(self, p: Element, i: int) -> Element:
        c = self(p).value
        return c[i] if i < len(c) else self.base.zero

    def degree(self, p: Element) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self(p).value) - 1

    def _elements(self):
        return super()._elements()


# --- matrices ----------------------------------------------------------------


class MatrixRing(Ring):
    """``M_k(base)``; payload is a tuple of ``k`` row tuples."""

    def __init__(self, base: Ring, k: int):
        if k < 1:
            raise DescriptorError(f"matrix size must be positive, got {k}")
        self.base = base
        self.k = k
        self.enumerable = base.enumerable
        self.exact_equality = base.exact_equality
        self.characteristic = base.characteristic
        self.descriptor = f"M{k}({base.descriptor})"

    def _zero(self):
        z = self.base.zero
        return tuple(tuple(z for _ in range(self.k)) for _ in range(self.k))

    def _one(self):
        z, o = self.base.zero, self.base.one
        return tuple(tuple(o if i == j else z for j in range(self.k)) for i in range(self.k))

    def _add(self, a, b):
        return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def _neg(self, a):
        return tuple(tuple(-x for x in r) for r in a)

    def _mul(self, a, b):
        k = self.k
        out = []
        for i in range(k):
            row = []
            for j in range(k):
                s = a[i][0] * b[0][j]
                for t in range(1, k):
                    s = s + a[i][t] * b[t][j]
                row.append(s)
            out.append(tuple(row))
        return tuple(out)

    def _from_int(self, n):
        z, c = self.base.zero, self.base(n)
        return tuple(tuple(c if i == j else z for j in range(self.k)) for i in range(self.k))

    def _eq(self, a, b, window=None):
        return all(self.base._eq(x.value, y.value, window)
                   for ra, rb in zip(a, b) for x, y in zip(ra, rb))

    def _format(self, a):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in a) + "]"

    def _sample(self, rng):
        return tuple(tuple(self.base.sample(rng) for _ in range(self.k)) for _ in range(self.k))

    def _elements(self):
        elems = list(self.base.elements())
        k = self.k
        for flat in itertools.product(elems, repeat=k * k):
            yield tuple(tuple(flat[i * k:(i + 1) * k]) for i in range(k))

    def size(self):
        return self.base.size() ** (self.k * self.k)

    def _coerce(self, x):
        if isinstance(x, (list, tuple)) and len(x) == self.k:
            rows = tuple(tuple(self.base(c) for c in r) for r in x)
            if all(len(r) == self.k for r in rows):
                return rows
        return super()._coerce(x)

    def _embed(self, x):
        if x.ring == self.base:
            z = self.base.zero
            return tuple(tuple(x if i == j else z for j in range(self.k)) for i in range(self.k))
        return None

    def entry(self, m: Element, i: int, j: int) -> Element:
        return self(m).value[i][j]

    def from_rows(self, rows) -> Element:
        return self.wrap(self._coerce(rows))

    def unit_matrix(self, i: int, j: int) -> Element:
        z, o = self.base.zero, self.base.one
        return self.wrap(tuple(tuple(o if (r, c) == (i, j) else z for c in range(self.k))
                               for r in range(self.k)))


# --- descriptors ---------------------------------------------------------------


def _split_args(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return parts


def _call(spec: str, head: str) -> list[str] | None:
    if spec.startswith(head + "(") and spec.endswith(")"):
        return _split_args(spec[len(head) + 1:-1])
    return None


@functools.lru_cache(maxsize=None)
def make_ring(spec: str) -> Ring:
    """Build (and cache) the ring named by a descriptor string.

    >>> make_ring("M2(Z/2)").size()
    16
    """
    s = spec.strip().replace(" ", "")
    if s == "Z":
        return IntegerRing()
    m = re.fullmatch(r"Z/(\d+)", s)
    if m:
        return IntegerModRing(int(m.group(1)))
    m = re.fullmatch(r"Z/(.*)", s)
    if m:
        raise DescriptorError(f"bad modulus in {spec!r}")
    if (args := _call(s, "Poly")) is not None:
        if len(args) != 2 or not re.fullmatch(r"[A-Za-z]\w*", args[1]):
            raise DescriptorError(f"expected Poly(<ring>,<var>), got {spec!r}")
        return PolynomialRing(make_ring(args[0]), args[1])
    m = re.fullmatch(r"M(\d+)\((.*)\)", s)
    if m:
        return MatrixRing(make_ring(m.group(2)), int(m.group(1)))
    if (args := _call(s, "P")) is not None:
        from .sequences import SequenceRing

        if len(args) != 1:
            raise DescriptorError(f"expected P(<ring>), got {spec!r}")
        return SequenceRing(make_ring(args[0]))
    if (args := _call(s, "Laurent")) is not None:
        from .laurent import LaurentRing

        m = re.fullmatch(r"prec=(\d+)", args[1]) if len(args) == 2 else None
        if not m:
            raise DescriptorError(f"expected Laurent(<ring>,prec=<N>), got {spec!r}")
        return LaurentRing(make_ring(args[0]), int(m.group(1)))
    if (args := _call(s, "UMat")) is not None:
        from .matrices import UMatRing

        if len(args) != 1:
            raise DescriptorError(f"expected UMat(<ring>), got {spec!r}")
        return UMatRing(make_ring(args[0]))
    if s.startswith("Free(") and s.endswith(")"):
        from .free import FreeRing

        return FreeRing.from_descriptor(s)
    raise DescriptorError(f"unknown ring descriptor {spec!r}")

"""Free rings Z<gens> and their quotients by monomial relations.

Elements are :class:`FreePoly` values: integer combinations of words kept in
normal form with respect to a :class:`RewriteSystem`.  The shipped systems
are the empty one (the free ring on ``u, v``) and ``{xu -> 0, xv -> 0}``,
which gives ``S = Z<u,v,x>/(xu, xv)``.
"""

from __future__ import annotations

import functools
import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import DegreeBoundError, DescriptorError, MorphismError, PreconditionError
from .rings import Element, Ring

DEFAULT_DEGREE_BOUND = 8


@dataclass(frozen=True)
class RewriteSystem:
    """Rules ``factor -> replacement``; a replacement of ``None`` annihilates the word.

    Every rule must strictly shorten or annihilate, so rewriting terminates.
    """

    rules: tuple[tuple[str, str | None], ...] = ()

    def __post_init__(self):
        for lhs, rhs in self.rules:
            if not lhs:
                raise DescriptorError("empty left-hand side in rewrite rule")
            if rhs is not None and len(rhs) >= len(lhs):
                raise DescriptorError(f"rule {lhs}->{rhs} does not shorten words")

    def matches(self, word: str) -> list[tuple[int, int]]:
        """All ``(position, rule index)`` pairs where a rule applies."""
        out = []
        for k, (lhs, _) in enumerate(self.rules):
            start = word.find(lhs)
            while start != -1:
                out.append((start, k))
                start = word.find(lhs, start + 1)
        return sorted(out)

    def rewrite_word(self, word: str, rng: random.Random | None = None) -> str | None:
        """Normal form of a single word, or ``None`` if it rewrites to zero.

        With ``rng`` the applicable rule occurrence is picked at random each
        step, which is how uniqueness of normal forms is exercised.
        """
        while True:
            found = self.matches(word)
            if not found:
                return word
            pos, k = rng.choice(found) if rng is not None else found[0]
            lhs, rhs = self.rules[k]
            if rhs is None:
                return None
            word = word[:pos] + rhs + word[pos + len(lhs):]

    def is_normal(self, word: str) -> bool:
        return not any(lhs in word for lhs, _ in self.rules)

    def describe(self) -> str:
        return ",".join(f"{lhs}={rhs or 0}" for lhs, rhs in self.rules)


EMPTY_SYSTEM = RewriteSystem()
EX113_SYSTEM = RewriteSystem((("xu", None), ("xv", None)))


class FreePoly:
    """An integer combination of normal-form words.  Immutable.

    ``terms`` is kept in length-lexicographic order (by alphabet position),
    with no zero coefficients.
    """

    __slots__ = ("alphabet", "system", "degree_bound", "terms", "_hash")

    def __init__(self, terms: Mapping[str, int] | Iterable[tuple[str, int]] = (),
                 alphabet: Iterable[str] = ("u", "v"), system: RewriteSystem = EMPTY_SYSTEM,
                 degree_bound: int = DEFAULT_DEGREE_BOUND, rng: random.Random | None = None):
        alphabet = tuple(alphabet)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[str, int] = {}
        for word, c in items:
            if c == 0:
                continue
            if any(ch not in alphabet for ch in word):
                raise PreconditionError(f"word {word!r} is not over alphabet {alphabet}")
            if len(word) > degree_bound:
                raise DegreeBoundError(f"word {word!r} exceeds degree bound {degree_bound}")
            w = system.rewrite_word(word, rng)
            if w is None:
                continue
            acc[w] = acc.get(w, 0) + c
        order = {ch: i for i, ch in enumerate(alphabet)}
        keys = sorted((w for w, c in acc.items() if c), key=lambda w: (len(w), [order[ch] for ch in w]))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "degree_bound", degree_bound)
        object.__setattr__(self, "terms", tuple((w, acc[w]) for w in keys))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("FreePoly is immutable")

    # construction helpers ---------------------------------------------
    def _like(self, terms) -> "FreePoly":
        return FreePoly(terms, self.alphabet, self.system, self.degree_bound)

    def _check(self, other: "FreePoly") -> None:
        if not isinstance(other, FreePoly):
            raise TypeError(f"expected FreePoly, got {type(other).__name__}")
        if (other.alphabet, other.system) != (self.alphabet, self.system):
            raise PreconditionError("free polynomials over different rings")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = self._like({"": other})
        self._check(other)
        return self._like(itertools.chain(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return self._like((w, -c) for w, c in self.terms)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self._like({"": other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._like((w, c * other) for w, c in self.terms)
        self._check(other)
        prods = []
        for w1, c1 in self.terms:
            for w2, c2 in other.terms:
                if len(w1) + len(w2) > self.degree_bound:
                    raise DegreeBoundError(
                        f"product {w1}*{w2} exceeds degree bound {self.degree_bound}")
                prods.append((w1 + w2, c1 * c2))
        return self._like(prods)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = self._like({"": 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == self._like({"": other}).terms
        if not isinstance(other, FreePoly):
            return NotImplemented
        return (self.alphabet, self.system, self.terms) == (other.alphabet, other.system, other.terms)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.alphabet, self.system, self.terms)))
        return self._hash

    # inspection ---------------------------------------------------------
    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    def coefficient(self, word: str) -> int:
        return dict(self.terms).get(word, 0)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(w) for w, _ in self.terms), default=-1)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms:
            if not w:
                parts.append(str(c))
            elif c == 1:
                parts.append(w)
            elif c == -1:
                parts.append(f"-{w}")
            else:
                parts.append(f"{c}*{w}")
        return " + ".join(parts).replace("+ -", "- ")


def normal_form(p: FreePoly, rng: random.Random | None = None) -> FreePoly:
    """Rewrite every term of ``p`` to normal form (idempotent)."""
    return FreePoly(p.terms, p.alphabet, p.system, p.degree_bound, rng)


class FreeRing(Ring):
    """Ring-core handle for ``Z<alphabet>/(rules)``."""

    def __init__(self, alphabet: Iterable[str] = ("u", "v"), system: RewriteSystem = EMPTY_SYSTEM,
                 degree_bound: int = DEFAULT_DEGREE_BOUND, max_sample_degree: int = 2):
        self.alphabet = tuple(alphabet)
        self.system = system
        self.degree_bound = degree_bound
        self.max_sample_degree = max_sample_degree
        gens = ",".join(self.alphabet)
        self.descriptor = f"Free({gens}|{system.describe()})" if system.rules else f"Free({gens})"

    @classmethod
    def from_descriptor(cls, spec: str) -> "FreeRing":
        m = re.fullmatch(r"Free\(([^|()]*)(?:\|([^()]*))?\)", spec.replace(" ", ""))
        if not m:
            raise DescriptorError(f"malformed free-ring descriptor {spec!r}")
        gens = tuple(g for g in m.group(1).split(",") if g)
        if not gens or any(len(g) != 1 or not g.isalpha() for g in gens) or len(set(gens)) != len(gens):
            raise DescriptorError(f"generators must be distinct single letters in {spec!r}")
        rules = []
        for rel in (m.group(2) or "").split(","):
            if not rel:
                continue
            lhs, _, rhs = rel.partition("=")
            if not lhs or any(ch not in gens for ch in lhs) or not rhs:
                raise DescriptorError(f"bad relation {rel!r} in {spec!r}")
            if rhs == "0":
                rules.append((lhs, None))
            elif all(ch in gens for ch in rhs):
                rules.append((lhs, rhs))
            else:
                raise DescriptorError(f"bad relation {rel!r} in {spec!r}")
        return cls(gens, RewriteSystem(tuple(rules)))

    def poly(self, terms=()) -> FreePoly:
        return FreePoly(terms, self.alphabet, self.system, self.degree_bound)

    def _zero(self):
        return self.poly()

    def _one(self):
        return self.poly({"": 1})

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _from_int(self, n):
        return self.poly({"": n})

    def _format(self, a):
        return repr(a)

    def _sample(self, rng):
        return random_freepoly(rng, self.alphabet, self.max_sample_degree, system=self.system,
                               degree_bound=self.degree_bound)

    def _coerce(self, x):
        if isinstance(x, FreePoly):
            if (x.alphabet, x.system) != (self.alphabet, self.system):
                raise PreconditionError(f"{x!r} is not an element of {self}")
            return x
        if isinstance(x, str):
            return self.word(x).value
        if isinstance(x, Mapping):
            return self.poly(x)
        return super()._coerce(x)

    def word(self, w: str, coeff: int = 1) -> Element:
        """The monomial ``coeff * w`` (spaces between generators are ignored)."""
        w = w.replace(" ", "")
        return self.wrap(self.poly({w: coeff}))

    def gens(self) -> dict[str, Element]:
        return {g: self.word(g) for g in self.alphabet}


def random_freepoly(rng: random.Random, alphabet=("u", "v"), max_degree: int = 3,
                    max_terms: int = 4, coeff_range: int = 3, system: RewriteSystem = EMPTY_SYSTEM,
                    degree_bound: int = DEFAULT_DEGREE_BOUND) -> FreePoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        n = rng.randint(0, max_degree)
        w = "".join(rng.choice(alphabet) for _ in range(n))
        terms[w] = terms.get(w, 0) + rng.randint(-coeff_range, coeff_range)
    return FreePoly(terms, alphabet, system, degree_bound)


@functools.lru_cache(maxsize=None)
def free_uv() -> FreeRing:
    """The free ring ``Z<u,v>``."""
    return FreeRing(("u", "v"))


@functools.lru_cache(maxsize=None)
def ring_s() -> FreeRing:
    """``S = Z<u,v,x>/(xu, xv)``."""
    return FreeRing(("u", "v", "x"), EX113_SYSTEM)


def const_term_endo(p: FreePoly, alphabet: tuple[str, ...] = ("u", "v")) -> FreePoly:
    """The coefficient of the empty word, as a constant polynomial."""
    if isinstance(p, Element):
        p = p.value
    if p.alphabet != tuple(alphabet) or p.system.rules:
        raise MorphismError(f"constant-term map expects the free ring on {alphabet}")
    return p._like({"": p.coefficient("")})


# --- S = Z<u,v,x>/(xu,xv) as a skew polynomial ring ---------------------------------


@functools.lru_cache(maxsize=None)
def ex113_ore_ring():
    """``Z<u,v>[x; const_term]``."""
    from .morphisms import const_term
    from .ore import OreRing

    R = free_uv()
    return OreRing(R, const_term(R), check_count=50)


def _split_word(w: str) -> tuple[str, int]:
    k = len(w) - len(w.rstrip("x"))
    head = w[: len(w) - k]
    if "x" in head:
        raise PreconditionError(f"word {w!r} is not a normal monomial w*x^k")
    return head, k


def ex113_iso(p) -> Element:
    """Map a normal-form element of ``S`` to ``Z<u,v>[x; const_term]``."""
    S = ring_s()
    if isinstance(p, Element):
        p = S(p).value
    if (p.alphabet, p.system) != (S.alphabet, S.system):
        raise PreconditionError("ex113_iso expects an element of Z<u,v,x>/(xu,xv)")
    for w, _ in p.terms:
        if not S.system.is_normal(w):
            raise PreconditionError(f"non-normal monomial {w!r}")
    O = ex113_ore_ring()
    R = O.base
    by_degree: dict[int, dict[str, int]] = {}
    for w, c in p.terms:
        head, k = _split_word(w)
        by_degree.setdefault(k, {})[head] = c
    top = max(by_degree, default=-1)
    return O.from_coeffs([R(by_degree.get(k, {})) for k in range(top + 1)])


def ex113_iso_inverse(f: Element) -> Element:
    S = ring_s()
    terms = {}
    for k, c in enumerate(f.coeffs):
        for w, n in c.value.terms:
            terms[w + "x" * k] = n
    return S(terms)


# --- left independence of u and v -----------------------------------------------------


class Independence(NamedTuple):
    combo: FreePoly
    is_zero_combo: bool
    forces_zero: bool


def left_independence_uv(a, b) -> Independence:
    """Evaluate ``a*u + b*v`` in ``Z<u,v>``.

    ``is_zero_combo`` implies ``forces_zero`` whenever ``u, v`` are left
    independent: monomials of ``a*u`` end in ``u`` and those of ``b*v`` in ``v``.
    """
    R = free_uv()
    a, b = R(a), R(b)
    u, v = R.word("u"), R.word("v")
    combo = (a * u + b * v).value
    return Independence(combo, combo.is_zero(), a.value.is_zero() and b.value.is_zero())


def all_freepolys(alphabet=("u", "v"), max_degree: int = 2, coeffs=(-1, 0, 1)) -> Iterator[FreePoly]:
    words = [""] + ["".join(t) for n in range(1, max_degree + 1)
                    for t in itertools.product(alphabet, repeat=n)]
    for cs in itertools.product(coeffs, repeat=len(words)):
        yield FreePoly(zip(words, cs), alphabet)


def independence_exhaustive(max_degree: int = 2, coeffs=(-1, 0, 1)) -> dict:
    """Every pair ``(a, b)`` in the box: which ones give ``a*u + b*v = 0``.

    The pairs are matched by hashing ``a*u`` against ``-(b*v)``; equality in
    the additive group is exactly ``a*u + b*v = 0``, so all ``|box|^2`` pairs
    are decided.  Each match is re-verified by direct addition.
    """
    R = free_uv()
    u, v = R.word("u").value, R.word("v").value
    box = list(all_freepolys(R.alphabet, max_degree, coeffs))
    left: dict[FreePoly, list[FreePoly]] = {}
    for a in box:
        left.setdefault(a * u, []).append(a)
    zero_pairs = []
    for b in box:
        for a in left.get(-(b * v), ()):
            if not (a * u + b * v).is_zero():
                raise ArithmeticError(f"hash match {a!r}, {b!r} is not a zero combination")
            zero_pairs.append((a, b))
    nonzero_pairs_zero = [(a, b) for a, b in zero_pairs if not (a.is_zero() and b.is_zero())]
    return {
        "box_size": len(box),
        "pairs_checked": len(box) ** 2,
        "zero_combos": len(zero_pairs),
        "counterexamples": nonzero_pairs_zero,
    }

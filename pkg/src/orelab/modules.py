"""Module homomorphisms between free modules of finite rank.

The side convention is explicit:

* ``side="right"``: right-module map ``R^n -> R^m``, ``v -> M v`` with ``M`` of
  shape ``m x n`` acting on column vectors;
* ``side="left"``: left-module map ``R^n -> R^m``, ``v -> v M`` with ``M`` of
  shape ``n x m`` acting on row vectors (maps written on the right).

Exhaustive vector enumeration varies the first coordinate fastest.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple, Sequence

from .errors import BudgetExceeded, NotEnumerableError, PreconditionError, RingMismatchError, \
    evaluation_budget
from .report import Report
from .rings import Element, IntegerRing, PolynomialRing, Ring

SIDES = ("left", "right")


@dataclass(frozen=True)
class ModuleMap:
    ring: Ring
    matrix: tuple[tuple[Element, ...], ...]
    side: str = "right"

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")
        rows = tuple(tuple(self.ring(e) for e in row) for row in self.matrix)
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix must be a nonempty rectangle")
        object.__setattr__(self, "matrix", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.matrix), len(self.matrix[0])

    @property
    def domain_dim(self) -> int:
        r, c = self.shape
        return c if self.side == "right" else r

    @property
    def codomain_dim(self) -> int:
        r, c = self.shape
        return r if self.side == "right" else c

    def __call__(self, v: Sequence) -> tuple[Element, ...]:
        return apply_map(self, v)

    def __repr__(self):
        rows = "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.matrix) + "]"
        return f"ModuleMap({self.ring}, {rows}, side={self.side})"


def apply_map(f: ModuleMap, v: Sequence) -> tuple[Element, ...]:
    R = f.ring
    if len(v) != f.domain_dim:
        raise ValueError(f"vector of length {len(v)} for a map on R^{f.domain_dim}")
    v = [R(x) for x in v]
    M = f.matrix
    if f.side == "right":
        return tuple(_dot([M[i][j] * v[j] for j in range(len(v))], R) for i in range(len(M)))
    return tuple(_dot([v[i] * M[i][j] for i in range(len(v))], R) for j in range(len(M[0])))


def _dot(terms, R):
    s = R.zero
    for t in terms:
        s = s + t
    return s


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """``g o f``."""
    if g.ring != f.ring or g.side != f.side:
        raise RingMismatchError("composition needs the same ring and side")
    if f.codomain_dim != g.domain_dim:
        raise ValueError(f"cannot compose R^{f.domain_dim}->R^{f.codomain_dim} "
                         f"with R^{g.domain_dim}->R^{g.codomain_dim}")
    A, B = (g.matrix, f.matrix) if f.side == "right" else (f.matrix, g.matrix)
    prod = tuple(tuple(_dot([A[i][k] * B[k][j] for k in range(len(B))], f.ring)
                       for j in range(len(B[0]))) for i in range(len(A)))
    return ModuleMap(f.ring, prod, f.side)


# --- exhaustive oracles ----------------------------------------------------------


def _elements(R: Ring) -> list[Element]:
    if not R.enumerable:
        raise NotEnumerableError(f"{R} is not enumerable")
    return list(R.elements())


def all_vectors(R: Ring, n: int):
    """``R^n`` with the first coordinate varying fastest."""
    elems = _elements(R)
    for t in itertools.product(elems, repeat=n):
        yield tuple(reversed(t))


class BruteResult(NamedTuple):
    holds: bool
    witness: tuple | None
    evaluations: int


def _check_budget(needed: int, budget: int | None, what: str) -> None:
    limit = evaluation_budget(budget)
    if needed > limit:
        raise BudgetExceeded(f"{what} needs {needed} evaluations, budget is {limit}")


def brute_injective(f: ModuleMap, budget: int | None = None) -> BruteResult:
    """Exact injectivity by enumerating the domain; witness is a colliding pair."""
    size = len(_elements(f.ring))
    _check_budget(size ** f.domain_dim, budget, "injectivity check")
    seen: dict = {}
    count = 0
    for v in all_vectors(f.ring, f.domain_dim):
        count += 1
        img = f(v)
        if img in seen:
            return BruteResult(False, (seen[img], v), count)
        seen[img] = v
    return BruteResult(True, None, count)


def brute_surjective(f: ModuleMap, budget: int | None = None) -> BruteResult:
    """Exact surjectivity; witness is the first unreached target."""
    size = len(_elements(f.ring))
    _check_budget(size ** f.domain_dim, budget, "surjectivity check")
    hit = set()
    count = 0
    for v in all_vectors(f.ring, f.domain_dim):
        count += 1
        hit.add(f(v))
    for t in all_vectors(f.ring, f.codomain_dim):
        if t not in hit:
            return BruteResult(False, t, count)
    return BruteResult(True, None, count)


class SearchResult(NamedTuple):
    found: ModuleMap | None
    definitive: bool
    candidates: int


def _search(R: Ring, n: int, m: int, want, side: str, mode: str, budget, seed: int,
            trials: int) -> SearchResult:
    elems = _elements(R)
    shape = (m, n) if side == "right" else (n, m)
    cells = shape[0] * shape[1]

    def build(flat):
        return ModuleMap(R, tuple(tuple(flat[i * shape[1]:(i + 1) * shape[1]])
                                  for i in range(shape[0])), side)

    if mode == "exhaustive":
        _check_budget(len(elems) ** cells * len(elems) ** n, budget, f"exhaustive search {n}->{m}")
        count = 0
        for flat in itertools.product(elems, repeat=cells):
            count += 1
            f = build(tuple(reversed(flat)))
            if want(f):
                return SearchResult(f, True, count)
        return SearchResult(None, True, count)
    if mode == "random":
        rng = random.Random(seed)
        for t in range(trials):
            f = build([rng.choice(elems) for _ in range(cells)])
            if want(f):
                return SearchResult(f, True, t + 1)
        return SearchResult(None, False, trials)
    raise ValueError(f"mode must be 'exhaustive' or 'random', got {mode!r}")


def search_mono(R: Ring, n: int, m: int, side: str = "right", mode: str = "exhaustive",
                budget: int | None = None, seed: int = 0, trials: int = 1000) -> SearchResult:
    """Look for an injective module map ``R^n -> R^m``."""
    return _search(R, n, m, lambda f: brute_injective(f).holds, side, mode, budget, seed, trials)


def search_epi(R: Ring, n: int, m: int, side: str = "right", mode: str = "exhaustive",
               budget: int | None = None, seed: int = 0, trials: int = 1000) -> SearchResult:
    """Look for a surjective module map ``R^n -> R^m``."""
    return _search(R, n, m, lambda f: brute_surjective(f).holds, side, mode, budget, seed, trials)


# --- bounded-degree kernels over Z[y] ---------------------------------------------


def _int_coeffs(e: Element) -> list[int]:
    """Integer coefficient list of an element of Z[y] (or a degree-0 Ore polynomial over it)."""
    from .ore import OreRing

    if isinstance(e.ring, OreRing):
        if not e.in_base():
            raise PreconditionError(f"entry {e} is not in the coefficient ring")
        e = e.coeff(0)
    R = e.ring
    if not (isinstance(R, PolynomialRing) and isinstance(R.base, IntegerRing)):
        raise PreconditionError(f"bounded_degree_kernel needs entries in Z[y], got {R}")
    return [c.value for c in e.value]


def _poly_ring_of(f: ModuleMap) -> PolynomialRing:
    from .ore import OreRing

    R = f.ring
    return R.base if isinstance(R, OreRing) else R


def bounded_degree_kernel(f: ModuleMap, D: int) -> list[tuple[Element, ...]]:
    """A basis of the kernel vectors whose entries have degree at most ``D``.

    Expanding ``f(v) = 0`` coefficientwise gives a homogeneous rational
    system; its null space is computed exactly and each basis vector is
    scaled to a primitive integer vector.
    """
    import sympy

    if D < 0:
        raise ValueError("D must be natural")
    P = _poly_ring_of(f)
    rows, cols = f.shape
    coeff = [[_int_coeffs(e) for e in row] for row in f.matrix]
    n = f.domain_dim
    # output i sums entry(i, j) * v_j (right) or v_j * entry(j, i) (left); Z[y] is commutative
    entry = (lambda i, j: coeff[i][j]) if f.side == "right" else (lambda i, j: coeff[j][i])
    top = max((len(c) for row in coeff for c in row), default=0) + D
    equations = []
    for i in range(f.codomain_dim):
        for e in range(top):
            eq = [0] * (n * (D + 1))
            for j in range(n):
                cij = entry(i, j)
                for d in range(D + 1):
                    if 0 <= e - d < len(cij):
                        eq[j * (D + 1) + d] += cij[e - d]
            if any(eq):
                equations.append(eq)
    if not equations:
        equations = [[0] * (n * (D + 1))]
    basis = sympy.Matrix(equations).nullspace()
    out = []
    for vec in basis:
        fr = [Fraction(int(x.p), int(x.q)) for x in vec]
        den = lcm(*[x.denominator for x in fr])
        ints = [int(x * den) for x in fr]
        g = 0
        for x in ints:
            g = gcd(g, x)
        ints = [x // g for x in ints]
        v = tuple(P([ints[j * (D + 1) + d] for d in range(D + 1)]) for j in range(n))
        if f.ring is not P:
            img = f([f.ring(x) for x in v])
        else:
            img = f(v)
        if not all(x.is_zero() for x in img):
            raise ArithmeticError(f"kernel vector {v} does not map to zero")
        out.append(v)
    return out


# --- kernel elements from sigma-annihilated coefficients --------------------------------------


def prop112_witness(f: ModuleMap, a, k: int, b: Sequence | None = None, D: int = 1,
                    seed: int = 0, samples: int = 20) -> Report:
    """Verify the kernel element ``a^k b`` of a right-module map over ``R[x;sigma,delta]``.

    ``psi(r) = f(a^k r)`` lands in ``R^m`` because ``x^i a^k`` lies in ``R``
    for ``i <= k``; a kernel vector ``b`` of ``psi`` then gives ``f(a^k b) = 0``.
    If ``b`` is omitted it is taken from :func:`bounded_degree_kernel` at degree ``D``.
    """
    from .ore import OreRing

    S = f.ring
    if not isinstance(S, OreRing):
        raise PreconditionError("prop112_witness needs a map over an Ore extension")
    if f.side != "right":
        raise PreconditionError("prop112_witness is stated for right-module maps")
    R = S.base
    a = R(a)
    if not S.sigma(a).is_zero():
        raise PreconditionError(f"sigma({a}) is not zero")
    if any(e.degree > k for row in f.matrix for e in row):
        raise PreconditionError(f"matrix entries exceed filtration level {k}")
    ak = S(a) ** k
    rep = Report("prop112_witness", seed=seed, parameters={"a": str(a), "k": k, "matrix": repr(f)})

    # (1) psi lands in the base ring
    psi_matrix = tuple(tuple(e * ak for e in row) for row in f.matrix)
    collapse = all(e.in_base() for row in psi_matrix for e in row)
    rng = random.Random(seed)
    sampled = [[R.sample(rng) for _ in range(f.domain_dim)] for _ in range(samples)]
    lands = collapse and all(all(x.in_base() for x in f([ak * S(r) for r in rs])) for rs in sampled)
    rep.add("psi(r) in R^m", lands, f"{samples} sampled base vectors")
    psi = ModuleMap(R, tuple(tuple(e.coeff(0) for e in row) for row in psi_matrix), "right")

    if b is None:
        kernel = bounded_degree_kernel(psi, D)
        if not kernel:
            rep.add("kernel vector found", False, f"no kernel vector of degree <= {D}")
            return rep
        b = kernel[0]
        rep.add("kernel vector found", True, f"D={D}", witness=[str(x) for x in b])
    b = [R(x) for x in b]
    rep.parameters["b"] = [str(x) for x in b]
    rep.add("b nonzero", not all(x.is_zero() for x in b))
    rep.add("psi(b)=0", all(x.is_zero() for x in psi(b)))
    akb = [ak * S(x) for x in b]
    rep.add("a^k b nonzero", not all(x.is_zero() for x in akb), witness=[str(x) for x in akb])
    rep.add("f(a^k b)=0", all(x.is_zero() for x in f(akb)))
    return rep

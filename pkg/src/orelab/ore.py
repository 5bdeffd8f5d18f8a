"""Ore extensions R[x; sigma, delta] with coefficients written on the left.

Multiplication is driven by the single rule ``x r = sigma(r) x + delta(r)``;
``x^n r`` is expanded by applying the rule ``n`` times.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .checks import check_endomorphism, check_sigma_derivation
from .errors import LawViolation, PreconditionError, RingMismatchError
from .morphisms import EndoMap, SigmaDerivation, d_dy, identity, zero_derivation
from .report import Report
from .rings import Element, PolynomialRing, Ring


class OrePoly(Element):
    """An element ``sum r_i x^i`` of an :class:`OreRing`."""

    __slots__ = ()

    @property
    def coeffs(self) -> tuple:
        return self.value

    def coeff(self, i: int) -> Element:
        return self.value[i] if i < len(self.value) else self.ring.base.zero

    @property
    def degree(self) -> int:
        """Filtration level: the degree, with the zero polynomial at level 0."""
        return max(len(self.value) - 1, 0)

    def is_zero(self, window=None) -> bool:
        return not self.value

    def in_base(self) -> bool:
        return len(self.value) <= 1


class OreRing(Ring):
    """``base[x; sigma, delta]``.

    The endomorphism and derivation laws are verified on ``check_count``
    samples at construction; a failure raises :class:`LawViolation`.
    """

    element_class = OrePoly

    def __init__(self, base: Ring, sigma: EndoMap | None = None, delta: SigmaDerivation | None = None,
                 var: str = "x", check_count: int = 100, seed: int = 0):
        sigma = sigma or identity(base)
        if sigma.domain != base:
            raise RingMismatchError(f"sigma acts on {sigma.domain}, not {base}")
        if delta is None or delta.is_zero:
            delta = zero_derivation(base, sigma)
        elif delta.domain != base:
            raise RingMismatchError(f"delta acts on {delta.domain}, not {base}")
        else:
            # pair the derivation rule with this sigma; the Leibniz check below decides
            delta = SigmaDerivation(base, sigma, delta.rule, delta.name)
        self.base = base
        self.sigma = sigma
        self.delta = delta
        self.var = var
        self.exact_equality = base.exact_equality
        self.characteristic = base.characteristic
        inner = sigma.name if delta.is_zero else f"{sigma.name},{delta.name}"
        self.descriptor = f"{base.descriptor}[{var};{inner}]"
        if check_count:
            rep = check_endomorphism(sigma, seed, check_count)
            if not delta.is_zero:
                rep.extend(check_sigma_derivation(delta, seed, check_count))
            if not rep.passed:
                bad = rep.failures()[0]
                raise LawViolation(f"{self.descriptor}: {bad.name} fails on {bad.witness}")

    # payload hooks ----------------------------------------------------
    def _strip(self, cs) -> tuple:
        cs = list(cs)
        while cs and cs[-1].is_zero():
            cs.pop()
        return tuple(cs)

    def _zero(self):
        return ()

    def _one(self):
        return self._strip((self.base.one,))

    def _from_int(self, n):
        return self._strip((self.base(n),))

    def _add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._strip(out)

    def _neg(self, a):
        return tuple(-c for c in a)

    def _x_times(self, cs: Sequence[Element]) -> list:
        """``x * (sum c_k x^k)`` via ``x c = sigma(c) x + delta(c)``."""
        z = self.base.zero
        out = [z] * (len(cs) + 1)
        for k, c in enumerate(cs):
            out[k + 1] = out[k + 1] + self.sigma(c)
            if not self.delta.is_zero:
                out[k] = out[k] + self.delta(c)
        return out

    def _mul(self, a, b):
        if not a or not b:
            return ()
        z = self.base.zero
        out = [z] * (len(a) + len(b) - 1)
        for j, q in enumerate(b):
            if q.is_zero():
                continue
            xq = [q]  # x^i q, starting at i = 0
            for i, p in enumerate(a):
                if i:
                    xq = self._x_times(xq)
                if p.is_zero():
                    continue
                for k, c in enumerate(xq):
                    if not c.is_zero():
                        out[k + j] = out[k + j] + p * c
        return self._strip(out)

    def _eq(self, a, b, window=None):
        if self.exact_equality:
            return a == b
        n = max(len(a), len(b))
        z = self.base.zero
        return all(self.base._eq((a[i] if i < len(a) else z).value,
                                 (b[i] if i < len(b) else z).value, window) for i in range(n))

    def _format(self, a):
        if not a:
            return "0"
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            cs = str(c)
            if not mono:
                terms.append(cs)
            elif c.is_one():
                terms.append(mono)
            elif cs.lstrip("-").isalnum():
                terms.append(f"{cs}*{mono}")
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def _sample(self, rng: random.Random):
        d = rng.randint(0, 3)
        return self._strip([self.base.sample(rng) for _ in range(d + 1)])

    def _coerce(self, x):
        if isinstance(x, (list, tuple)):
            return self._strip([self.base(c) for c in x])
        return super()._coerce(x)

    def _embed(self, x):
        try:
            return self._strip((self.base(x),))
        except (RingMismatchError, TypeError, ValueError):
            return None

    # constructors -------------------------------------------------------
    def from_coeffs(self, coeffs) -> OrePoly:
        """``sum coeffs[i] x^i`` with coefficients on the left."""
        return self.wrap(self._coerce(list(coeffs)))

    def gen(self) -> OrePoly:
        return self.wrap(self._strip((self.base.zero, self.base.one)))

    def monomial(self, r, n: int) -> OrePoly:
        """``r x^n``."""
        return self.wrap(self._strip([self.base.zero] * n + [self.base(r)]))

    def filtration(self) -> "Filtration":
        return Filtration(self)


def ore_mul(p: OrePoly, q: OrePoly) -> OrePoly:
    if not (isinstance(p, Element) and isinstance(q, Element)) or p.ring != q.ring:
        raise RingMismatchError("ore_mul needs two elements of the same Ore ring")
    return p * q


def x_power_times(ring: OreRing, r, n: int) -> OrePoly:
    """``x^n r``, built by ``n`` applications of the commutation rule."""
    if n < 0:
        raise ValueError("n must be natural")
    cs = [ring.base(r)]
    for _ in range(n):
        cs = ring._x_times(cs)
    return ring.wrap(ring._strip(cs))


def kernel_sigma_power_check(ring: OreRing, a, i: int) -> tuple[bool, OrePoly]:
    """Compute ``x^i a^i``; returns ``(in_base, value)``.

    Requires ``sigma(a) = 0``; the product then always has degree 0.
    """
    a = ring.base(a)
    if not ring.sigma(a).is_zero():
        raise PreconditionError(f"sigma({a}) = {ring.sigma(a)} is not zero")
    value = ring.gen() ** i * ring(a) ** i
    return value.in_base(), value


def right_coefficients(p: OrePoly) -> list[Element]:
    """The unique ``[s_0, ..., s_d]`` with ``p = sum x^i s_i``.

    Needs ``sigma`` to be registered as an automorphism.
    """
    ring: OreRing = p.ring
    inv = ring.sigma.inverse
    if inv is None:
        raise PreconditionError(f"{ring.sigma.name} has no registered inverse")
    rest = p
    out = [ring.base.zero] * (len(p.value) or 1)
    while not rest.is_zero():
        d = len(rest.value) - 1
        s = inv.power(d, rest.value[d])
        out[d] = s
        rest = rest - x_power_times(ring, s, d)
        if len(rest.value) > d:
            raise ArithmeticError("leading term did not cancel; is sigma^-1 really an inverse?")
    return out


def from_right_coefficients(ring: OreRing, coeffs: Sequence) -> OrePoly:
    out = ring.zero
    for i, s in enumerate(coeffs):
        out = out + x_power_times(ring, s, i)
    return out


# --- filtration ----------------------------------------------------------------------


def filtration_level(p: OrePoly) -> int:
    return p.degree


def projection_pi(p: OrePoly, l: int) -> OrePoly:
    """Truncate to the terms of degree at most ``l``."""
    if l < 0:
        raise ValueError("level must be natural")
    return p.ring.wrap(p.ring._strip(p.value[: l + 1]))


def min_filtration_shift(n: int, m: int, k: int) -> int:
    """Least natural ``l`` with ``l > nk/(m-n) - 1``; then ``n(k+l+1) < m(l+1)``."""
    if n < 1 or m < 1 or k < 0:
        raise ValueError("need positive n, m and natural k")
    if m <= n:
        raise PreconditionError(f"need m > n, got n={n}, m={m}")
    # (l+1)(m-n) > nk  <=>  l >= nk // (m-n)
    l = n * k // (m - n)
    assert n * (k + l + 1) < m * (l + 1)
    return l


@dataclass(frozen=True)
class Filtration:
    """The degree filtration ``U_i = R + Rx + ... + Rx^i``."""

    ring: OreRing

    def level(self, p: OrePoly) -> int:
        return self.ring(p).degree

    def contains(self, i: int, p: OrePoly) -> bool:
        return self.level(p) <= i

    def check_axioms(self, seed: int = 0, count: int = 200) -> Report:
        R = self.ring
        rng = random.Random(seed)
        pairs = [(R.sample(rng), R.sample(rng)) for _ in range(count)]
        rep = Report(f"filtration[{R}]", seed=seed, parameters={"count": count})
        lv = self.level
        rep.add("additive_subgroups", all(lv(p + q) <= max(lv(p), lv(q)) and lv(-p) == lv(p)
                                          for p, q in pairs))
        rep.add("ascending", all(self.contains(lv(p) + 1, p) for p, _ in pairs))
        rep.add("multiplicative", all(lv(p * q) <= lv(p) + lv(q) for p, q in pairs))
        rep.add("exhaustive", all(self.contains(lv(p), p) for p, _ in pairs))
        rep.add("one_in_U0", self.contains(0, R.one))
        return rep


# --- Weyl rings ------------------------------------------------------------------------


def weyl_ring(R: Ring, n: int = 1, check_count: int = 50) -> OreRing:
    """``W_n(R)``; ``W_1(R) = R[y][x; id, d/dy]`` and ``W_n = W_1(W_{n-1})``."""
    if not 1 <= n <= 3:
        raise ValueError("Weyl rings are supported for n = 1, 2, 3")
    W = R
    for level in range(1, n + 1):
        suffix = "" if level == 1 else str(level)
        P = PolynomialRing(W, "y" + suffix, max_sample_degree=2 if level == 1 else 1)
        W = OreRing(P, identity(P), d_dy(P), var="x" + suffix,
                    check_count=check_count if level == 1 else min(check_count, 10))
    return W


def weyl_generators(W: OreRing) -> tuple[OrePoly, OrePoly]:
    """``(x, y)`` of the outermost Weyl layer."""
    return W.gen(), W(W.base.gen())


def weyl_relation_check(W: OreRing, seed: int = 0, count: int = 50) -> Report:
    x, y = weyl_generators(W)
    rep = Report(f"weyl_relation[{W}]", seed=seed, parameters={"count": count})
    comm = x * y - y * x
    rep.add("xy-yx=1", comm == W.one, f"xy - yx = {comm}")
    coeff_ring = W.base.base
    rng = random.Random(seed)
    rs = [W(coeff_ring.sample(rng)) for _ in range(count)]
    rep.add("R_central", all(r * x == x * r and r * y == y * r for r in rs), f"{count} samples")
    return rep

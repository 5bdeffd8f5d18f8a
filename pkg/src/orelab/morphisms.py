"""Ring endomorphisms, sigma-derivations, and the catalog of named maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import MorphismError
from .rings import Element, MatrixRing, PolynomialRing, Ring


@dataclass(frozen=True, eq=False)
class EndoMap:
    """A ring endomorphism ``domain -> domain`` given by a rule on elements."""

    domain: Ring
    rule: Callable[[Element], Element]
    name: str = "sigma"
    injective_claimed: bool = False
    surjective_claimed: bool = False
    inverse: "EndoMap | None" = field(default=None, repr=False)
    is_identity: bool = False

    def __call__(self, r) -> Element:
        r = self.domain(r)
        if self.is_identity:
            return r
        return self.rule(r)

    def power(self, n: int, r) -> Element:
        """``sigma^n(r)``."""
        r = self.domain(r)
        if self.is_identity:
            return r
        for _ in range(n):
            r = self.rule(r)
        return r

    def compose(self, other: "EndoMap") -> "EndoMap":
        """``self o other``."""
        return EndoMap(self.domain, lambda r: self(other(r)), f"{self.name}o{other.name}",
                       self.injective_claimed and other.injective_claimed,
                       self.surjective_claimed and other.surjective_claimed)

    @property
    def is_automorphism(self) -> bool:
        return self.inverse is not None


@dataclass(frozen=True, eq=False)
class SigmaDerivation:
    """An additive map with ``delta(rs) = delta(r)s + sigma(r)delta(s)``."""

    domain: Ring
    sigma: EndoMap
    rule: Callable[[Element], Element]
    name: str = "delta"
    is_zero: bool = False

    def __call__(self, r) -> Element:
        r = self.domain(r)
        if self.is_zero:
            return self.domain.zero
        return self.rule(r)


def identity(R: Ring) -> EndoMap:
    ident = EndoMap(R, lambda r: r, "id", True, True, None, True)
    object.__setattr__(ident, "inverse", ident)
    return ident


def zero_derivation(R: Ring, sigma: EndoMap | None = None) -> SigmaDerivation:
    return SigmaDerivation(R, sigma or identity(R), lambda r: R.zero, "0", True)


def _automorphism_pair(R: Ring, fwd, bwd, name: str, inv_name: str) -> EndoMap:
    inv = EndoMap(R, bwd, inv_name, True, True)
    f = EndoMap(R, fwd, name, True, True, inv)
    object.__setattr__(inv, "inverse", f)
    return f


# --- polynomial-ring maps -------------------------------------------------------


def _need_poly(name: str, R: Ring) -> PolynomialRing:
    if not isinstance(R, PolynomialRing):
        raise MorphismError(f"{name!r} needs a polynomial ring, got {R}")
    return R


def const_term(R: Ring) -> EndoMap:
    """``sum a_i y^i -> a_0``; on free rings, the empty-word coefficient."""
    from .free import FreeRing

    if isinstance(R, FreeRing):
        from .free import const_term_endo

        return EndoMap(R, lambda r: R.wrap(const_term_endo(r.value)), "const_term")
    R = _need_poly("const_term", R)
    return EndoMap(R, lambda r: R(list(r.value[:1])), "const_term")


def coeff_shift(R: Ring) -> SigmaDerivation:
    """``sum a_i y^i -> sum_{i>=1} a_i y^(i-1)``, a const_term-derivation."""
    R = _need_poly("coeff_shift", R)
    return SigmaDerivation(R, const_term(R), lambda r: R.wrap(r.value[1:]), "coeff_shift")


def d_dy(R: Ring) -> SigmaDerivation:
    """Formal differentiation, an id-derivation."""
    R = _need_poly("ddy", R)

    def rule(r):
        return R([c * i for i, c in enumerate(r.value)][1:])

    return SigmaDerivation(R, identity(R), rule, "ddy")


def neg_y(R: Ring) -> EndoMap:
    """``y -> -y``, an involutive automorphism."""
    R = _need_poly("neg_y", R)

    def rule(r):
        return R([c if i % 2 == 0 else -c for i, c in enumerate(r.value)])

    return _automorphism_pair(R, rule, rule, "neg_y", "neg_y")


# --- other catalog entries -------------------------------------------------------


def sequence_shift(R: Ring) -> EndoMap:
    """``(r_0, r_1, ...) -> (r_1, r_2, ...)``: surjective, not injective."""
    from .sequences import SequenceRing

    if not isinstance(R, SequenceRing):
        raise MorphismError(f"'shift' needs a sequence ring P(R), got {R}")
    return EndoMap(R, R.shift, "shift", injective_claimed=False, surjective_claimed=True)


def entrywise(sigma: EndoMap, R: MatrixRing | None = None) -> EndoMap:
    """The lift ``sigma*`` of ``sigma`` to ``M_k(domain)``."""
    if R is None:
        raise MorphismError("entrywise lift needs the target matrix ring")
    if R.base != sigma.domain:
        raise MorphismError(f"cannot lift a map on {sigma.domain} to {R}")

    def lift(s):
        return lambda m: R.wrap(tuple(tuple(s(c) for c in row) for row in m.value))

    inv = None
    if sigma.inverse is not None:
        inv = EndoMap(R, lift(sigma.inverse), f"entrywise({sigma.inverse.name})", True, True)
    out = EndoMap(R, lift(sigma), f"entrywise({sigma.name})", sigma.injective_claimed,
                  sigma.surjective_claimed, inv, sigma.is_identity)
    if inv is not None:
        object.__setattr__(inv, "inverse", out)
    return out


def inner_automorphism(R: MatrixRing, u, u_inv) -> EndoMap:
    """Conjugation ``m -> u m u^-1``."""
    u, u_inv = R(u), R(u_inv)
    if not (u * u_inv).is_one() or not (u_inv * u).is_one():
        raise MorphismError("conjugating matrix and claimed inverse do not multiply to 1")
    return _automorphism_pair(R, lambda m: u * m * u_inv, lambda m: u_inv * m * u,
                              f"inner({u})", f"inner({u_inv})")


def inner(R: Ring) -> EndoMap:
    """Conjugation by the elementary matrix ``I + E_01``."""
    if not isinstance(R, MatrixRing) or R.k < 2:
        raise MorphismError(f"'inner' needs M_k(R) with k >= 2, got {R}")
    e = R.unit_matrix(0, 1)
    return inner_automorphism(R, R.one + e, R.one - e)


def laurent_square(R: Ring) -> EndoMap:
    """The substitution ``x -> x^2`` on truncated Laurent series."""
    from .laurent import LaurentRing

    if not isinstance(R, LaurentRing):
        raise MorphismError(f"'laurent_square' needs a Laurent ring, got {R}")
    return EndoMap(R, lambda a: R.substitute_power(a, 2), "laurent_square",
                   injective_claimed=True, surjective_claimed=False)


def umat_shift(R: Ring) -> EndoMap:
    from .matrices import UMatRing, umat_shift_sigma

    if not isinstance(R, UMatRing):
        raise MorphismError(f"'umat_shift' needs UMat(R), got {R}")
    return EndoMap(R, lambda m: R.wrap(umat_shift_sigma(m.value)), "umat_shift",
                   injective_claimed=True, surjective_claimed=False)


ENDOMORPHISMS: dict[str, Callable[[Ring], EndoMap]] = {
    "id": identity,
    "const_term": const_term,
    "neg_y": neg_y,
    "shift": sequence_shift,
    "inner": inner,
    "laurent_square": laurent_square,
    "umat_shift": umat_shift,
}

DERIVATIONS: dict[str, Callable[[Ring], SigmaDerivation]] = {
    "zero": zero_derivation,
    "0": zero_derivation,
    "ddy": d_dy,
    "d/dy": d_dy,
    "coeff_shift": coeff_shift,
}


def builtin_morphisms(name: str, R: Ring) -> EndoMap | SigmaDerivation:
    """Look up a named map on ``R``.

    ``entrywise(<name>)`` lifts a map on the base of a matrix ring.
    """
    name = name.strip()
    if name.startswith("entrywise(") and name.endswith(")"):
        if not isinstance(R, MatrixRing):
            raise MorphismError(f"entrywise lift needs a matrix ring, got {R}")
        inner_map = builtin_morphisms(name[len("entrywise("):-1], R.base)
        if not isinstance(inner_map, EndoMap):
            raise MorphismError("only endomorphisms can be lifted entrywise")
        return entrywise(inner_map, R)
    if name in ENDOMORPHISMS:
        return ENDOMORPHISMS[name](R)
    if name in DERIVATIONS:
        return DERIVATIONS[name](R)
    raise MorphismError(f"unknown morphism {name!r}")

"""Direct and stable finiteness: exhaustive oracles and worked demonstrations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any

from .checks import check_sigma_derivation
from .errors import NotEnumerableError, PreconditionError, evaluation_budget
from .morphisms import EndoMap, builtin_morphisms, identity, inner_automorphism
from .report import Report
from .rings import Element, MatrixRing, PolynomialRing, Ring, make_ring
from .series import (SkewSeriesRing, idempotent_constant_one_solve, matrix_series_iso,
                     matrix_series_iso_inverse, matrix_series_ring, right_inverse)

VERDICTS = ("holds", "fails", "inconclusive")


@dataclass
class FinitenessReport:
    ring: str
    property: str
    verdict: str
    witness: tuple | None = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def to_report(self) -> Report:
        rep = Report(f"finiteness[{self.ring}]", parameters={"property": self.property})
        w = None if self.witness is None else [str(x) for x in self.witness]
        rep.add(f"{self.property}: {self.verdict}", self.verdict == "holds", self.detail, w)
        return rep


def directly_finite_brute(R: Ring, budget: int | None = None) -> FinitenessReport:
    """Check ``rs = 1 => sr = 1`` over every pair of elements.

    Over budget the verdict is ``inconclusive``; a ``fails`` verdict carries
    a pair ``(r, s)`` that has been re-verified.
    """
    if not R.enumerable:
        raise NotEnumerableError(f"{R} is not enumerable")
    limit = evaluation_budget(budget)
    elems = list(R.elements())
    pairs = len(elems) ** 2
    if pairs > limit:
        return FinitenessReport(str(R), "directly_finite", "inconclusive",
                                detail=f"{pairs} pairs exceed budget {limit}")
    one = R.one
    for r in elems:
        for s in elems:
            if r * s == one and s * r != one:
                if not ((r * s).is_one() and not (s * r).is_one()):
                    raise ArithmeticError("witness failed re-verification")
                return FinitenessReport(str(R), "directly_finite", "fails", (r, s),
                                        f"rs=1 but sr={s * r}")
    return FinitenessReport(str(R), "directly_finite", "holds", detail=f"{pairs} pairs")


def stably_finite_upto(R: Ring, n: int, budget: int | None = None) -> FinitenessReport:
    """Direct finiteness of ``M_k(R)`` for ``k = 1..n``; says nothing beyond ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    prop = f"stably_finite_upto({n})"
    details = []
    for k in range(1, n + 1):
        Mk = R if k == 1 else MatrixRing(R, k)
        sub = directly_finite_brute(Mk, budget)
        details.append(f"M{k}: {sub.verdict}")
        if sub.verdict != "holds":
            return FinitenessReport(str(R), prop, sub.verdict, sub.witness,
                                    "; ".join(details) + (f" ({sub.detail})" if sub.detail else ""))
    return FinitenessReport(str(R), prop, "holds", detail="; ".join(details))


# --- a ring with a one-sided inverse ------------------------------------------------------------------------


def ex116_ring(check_count: int = 100):
    """``Z[y][x; const_term, coeff_shift]``."""
    from .ore import OreRing

    P = PolynomialRing(make_ring("Z"), "y")
    return OreRing(P, builtin_morphisms("const_term", P), builtin_morphisms("coeff_shift", P),
                   check_count=check_count)


def ex116_demo(seed: int = 0, count: int = 200) -> Report:
    """The ring ``Z[y][x; const_term, coeff_shift]`` is not directly finite."""
    S = ex116_ring()
    P = S.base
    rep = Report("ex1_16", seed=seed, parameters={"ring": str(S), "count": count})
    law = check_sigma_derivation(S.delta, seed, count)
    rep.extend(law, "delta")
    x, y = S.gen(), S(P.gen())
    xy, yx = x * y, y * x
    rep.add("xy=1", xy == S.one, f"xy = {xy}")
    rep.add("yx!=1", yx != S.one, f"yx = {yx}", witness=[str(c) for c in yx.coeffs])
    rep.add("x*y^2=y", x * y * y == y, f"x*y^2 = {x * y * y}")
    rep.add("witness (x,y): rs=1, sr!=1", xy.is_one() and not yx.is_one(), witness=[str(x), str(y)])
    return rep


# --- skew series direct finiteness instances -----------------------------------------------------------------


def sampled_inner(R: MatrixRing, seed: int = 0) -> EndoMap:
    """Conjugation by an invertible matrix drawn from ``R`` with a seeded RNG."""
    if not R.enumerable:
        raise NotEnumerableError("sampling an invertible matrix needs an enumerable ring")
    elems = list(R.elements())
    rng = random.Random(seed)
    while True:
        u = rng.choice(elems)
        for v in elems:
            if (u * v).is_one() and (v * u).is_one():
                if u.is_one():
                    break  # skip the identity, it gives the trivial map
                return inner_automorphism(R, u, v)


def _base_directly_finite(base: Ring, claimed: bool | None) -> bool:
    if claimed is not None:
        return claimed
    if base.enumerable:
        return directly_finite_brute(base).verdict == "holds"
    return True  # caller-asserted for infinite bases


def skew_poly_finiteness_demo(base: Ring, sigma: EndoMap | None = None, N: int = 8,
                              count: int = 100, seed: int = 0, stable: bool = False,
                              base_directly_finite: bool | None = None) -> Report:
    """Seeded pairs ``p, q = right_inverse(p)`` with ``pq = 1``; check ``qp = 1 mod x^N``.

    Also solves for idempotents with constant term 1.  With ``stable=True``
    the same is done for 2x2 matrices of series, routed through
    ``matrix_series_iso`` into ``M_2(base)[[x; sigma*]]`` and back.
    """
    if not _base_directly_finite(base, base_directly_finite):
        raise PreconditionError(f"{base} is not directly finite")
    ring = SkewSeriesRing(base, sigma, N)
    rep = Report(f"thm0_4[{ring}]", seed=seed,
                 parameters={"base": str(base), "sigma": ring.sigma.name, "precision": N,
                             "count": count, "stable": stable})
    rng = random.Random(seed)
    bad = None
    for i in range(count):
        p = ring.sample_unit_constant(rng)
        q = right_inverse(p)
        if not (p * q).is_one() or not (q * p).is_one():
            bad = (i, str(p))
            break
    rep.add("pq=1 implies qp=1 mod x^N", bad is None, f"{count} seeded pairs", witness=bad)
    sol = idempotent_constant_one_solve(base, ring.sigma, N)
    rep.add("idempotent with constant term 1 is 1", sol.is_one, witness=None if sol.is_one else str(sol.series))
    if stable:
        target = matrix_series_ring(ring, 2)
        bad = None
        for i in range(count):
            A = [[ring.sample_unit_constant(rng) if r == c else
                   ring.wrap((base.zero,) + tuple(base.sample(rng) for _ in range(N - 1)))
                   for c in range(2)] for r in range(2)]
            s = matrix_series_iso(A)
            t = right_inverse(s)
            B = matrix_series_iso_inverse(t, ring)
            if not (s * t).is_one() or not (t * s).is_one() or \
                    not matrix_series_iso(_mat_mul(B, A)).is_one():
                bad = (i, str(s))
                break
        rep.add("M_2 via matrix_series_iso: qp=1 mod x^N", bad is None,
                f"{count} seeded pairs over {target.base}", witness=bad)
    return rep


def _mat_mul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(1, n)), A[i][0] * B[0][j]) for j in range(n)]
            for i in range(n)]


def thm04_configurations(seed: int = 0) -> list[tuple[Ring, EndoMap]]:
    """The base rings and endomorphisms exercised by the thm0_4 suite."""
    z4 = make_ring("Z/4")
    p2 = make_ring("P(Z/2)")
    m2 = make_ring("M2(Z/2)")
    return [(z4, identity(z4)), (p2, builtin_morphisms("shift", p2)), (m2, identity(m2)),
            (m2, sampled_inner(m2, seed))]


def cor118_demo(base: Ring, N: int = 8, window: int = 16) -> Report:
    """theta -> series -> right inverse -> qp for an upper-triangular matrix."""
    from .matrices import umat_direct_finiteness_demo

    return umat_direct_finiteness_demo(base, N=N, window=window)


def finiteness_summary(report: FinitenessReport) -> dict[str, Any]:
    out = {"ring": report.ring, "property": report.property, "verdict": report.verdict}
    if report.witness is not None:
        out["witness"] = [str(x) for x in report.witness]
    if report.detail:
        out["detail"] = report.detail
    return out

"""Sampled law checks for rings, endomorphisms and sigma-derivations.

All checks are deterministic for a fixed seed.  A failing law is a failing
report entry carrying the first offending sample as its witness.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .morphisms import EndoMap, SigmaDerivation
from .report import Report
from .rings import Ring


def _law(report: Report, name: str, samples: Sequence[tuple], holds: Callable[..., bool]) -> None:
    for i, args in enumerate(samples):
        try:
            ok = holds(*args)
        except Exception as exc:  # a law that crashes has failed
            report.add(name, False, f"{type(exc).__name__}: {exc}", witness=list(args))
            return
        if not ok:
            report.add(name, False, f"failed on sample {i}", witness=list(args))
            return
    report.add(name, True, f"{len(samples)} samples")


def _tuples(R: Ring, seed: int, count: int, arity: int) -> list[tuple]:
    rng = random.Random(seed)
    return [tuple(R.sample(rng) for _ in range(arity)) for _ in range(count)]


def ring_axioms_check(R: Ring, seed: int = 0, count: int = 100) -> Report:
    if count < 1:
        raise ValueError("count must be at least 1")
    triples = _tuples(R, seed, count, 3)
    rep = Report(f"ring_axioms[{R}]", seed=seed, parameters={"count": count})
    one, zero = R.one, R.zero
    _law(rep, "add_associative", triples, lambda a, b, c: (a + b) + c == a + (b + c))
    _law(rep, "mul_associative", triples, lambda a, b, c: (a * b) * c == a * (b * c))
    _law(rep, "add_commutative", triples, lambda a, b, c: a + b == b + a)
    _law(rep, "left_distributive", triples, lambda a, b, c: a * (b + c) == a * b + a * c)
    _law(rep, "right_distributive", triples, lambda a, b, c: (a + b) * c == a * c + b * c)
    _law(rep, "unit_laws", triples, lambda a, b, c: a * one == a and one * a == a and a + zero == a)
    _law(rep, "additive_inverse", triples, lambda a, b, c: (a + (-a)).is_zero())
    return rep


def check_endomorphism(sigma: EndoMap, seed: int = 0, count: int = 100) -> Report:
    if count < 1:
        raise ValueError("count must be at least 1")
    R = sigma.domain
    pairs = _tuples(R, seed, count, 2)
    rep = Report(f"endomorphism[{sigma.name} on {R}]", seed=seed, parameters={"count": count})
    _law(rep, "additive", pairs, lambda a, b: sigma(a + b) == sigma(a) + sigma(b))
    _law(rep, "multiplicative", pairs, lambda a, b: sigma(a * b) == sigma(a) * sigma(b))
    rep.add("unital", sigma(R.one) == R.one and sigma(R.zero).is_zero())
    if sigma.inverse is not None:
        inv = sigma.inverse
        _law(rep, "inverse", pairs, lambda a, b: inv(sigma(a)) == a and sigma(inv(a)) == a)
    return rep


def check_sigma_derivation(delta: SigmaDerivation, seed: int = 0, count: int = 100) -> Report:
    if count < 1:
        raise ValueError("count must be at least 1")
    R, sigma = delta.domain, delta.sigma
    pairs = _tuples(R, seed, count, 2)
    rep = Report(f"sigma_derivation[{delta.name} over {sigma.name} on {R}]", seed=seed,
                 parameters={"count": count})
    _law(rep, "additive", pairs, lambda a, b: delta(a + b) == delta(a) + delta(b))
    _law(rep, "leibniz", pairs,
         lambda a, b: delta(a * b) == delta(a) * b + sigma(a) * delta(b))
    return rep

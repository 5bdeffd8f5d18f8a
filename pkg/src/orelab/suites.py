"""Named verification suites; each returns a deterministic :class:`Report`."""

from __future__ import annotations

import random
from typing import Any, Callable

from .checks import check_endomorphism
from .errors import OreLabError
from .report import Report
from .rings import make_ring

DEFAULTS = {"window": 16, "prec": 8, "seed": 0, "count": 100, "base": None}


class SuiteError(OreLabError, ValueError):
    pass


def _bases(params, fallback: list[str]) -> list[str]:
    return [params["base"]] if params.get("base") else fallback


def suite_lemma1_3(p) -> Report:
    from .matrices import lemma13_witnesses, random_banded, recover_coefficients

    rep = Report("lemma1_3", seed=p["seed"], parameters=_params(p, "window", "count", "base"))
    for spec in _bases(p, ["Z/2", "Z/4", "Z"]):
        base = make_ring(spec)
        A, B, ids = lemma13_witnesses(base, p["window"])
        rep.extend(ids, spec)
        rng = random.Random(p["seed"])
        bad = None
        w = p["window"]
        for i in range(p["count"]):
            X = random_banded(base, rng).to_lazy("X")
            Y = random_banded(base, rng).to_lazy("Y")
            Z = X * A + Y * B
            X2, Y2 = recover_coefficients(Z, A, B)
            if not all(X2(r, c) == X(r, c) and Y2(r, c) == Y(r, c) for r in range(w) for c in range(w)):
                bad = i
                break
        rep.add(f"{spec}/recover (X,Y) from XA+YB", bad is None, f"{p['count']} pairs, window {w}",
                witness=bad)
    return rep


def suite_lemma1_4(p) -> Report:
    from .morphisms import builtin_morphisms
    from .ore import OreRing, from_right_coefficients, right_coefficients, weyl_ring

    rep = Report("lemma1_4", seed=p["seed"], parameters=_params(p, "count"))
    P = make_ring("Poly(Z,y)")
    rings = {"Z[y][x;neg_y]": OreRing(P, builtin_morphisms("neg_y", P)),
             "W1(Z)": weyl_ring(make_ring("Z"), 1),
             "M2(Z/2)[x;inner]": OreRing(make_ring("M2(Z/2)"),
                                         builtin_morphisms("inner", make_ring("M2(Z/2)")))}
    for name, S in rings.items():
        rng = random.Random(p["seed"])
        bad = None
        for i in range(p["count"]):
            f = S.sample(rng)
            cs = right_coefficients(f)
            if from_right_coefficients(S, cs) != f or len(cs) != max(len(f.coeffs), 1):
                bad = (i, str(f))
                break
        rep.add(f"{name}/left->right->left roundtrip", bad is None, f"{p['count']} samples", bad)
    W = rings["W1(Z)"]
    y = W(W.base.gen())
    rc = right_coefficients(y * W.gen() + W.one)
    rep.add("W1(Z)/yx+1 = x*y", [str(c) for c in rc] == ["0", "y"], witness=[str(c) for c in rc])
    return rep


def suite_lemma1_7(p) -> Report:
    from .finiteness import ex116_ring
    from .morphisms import builtin_morphisms
    from .ore import OreRing, min_filtration_shift, projection_pi, weyl_ring

    rep = Report("lemma1_7", seed=p["seed"], parameters=_params(p, "count"))
    P = make_ring("Poly(Z,y)")
    rings = {"W1(Z)": weyl_ring(make_ring("Z"), 1), "ex1_16": ex116_ring(),
             "Z[y][x;neg_y]": OreRing(P, builtin_morphisms("neg_y", P))}
    for name, S in rings.items():
        rep.extend(S.filtration().check_axioms(p["seed"], p["count"]), name)
        rng = random.Random(p["seed"])
        ok = True
        for _ in range(p["count"]):
            f = S.sample(rng)
            l = rng.randint(0, 3)
            pi = projection_pi(f, l)
            ok &= pi.degree <= l and projection_pi(f - pi, l).is_zero()
        rep.add(f"{name}/projection pi_l", ok)
    ok = all(n * (k + l + 1) < m * (l + 1) and (l == 0 or not n * (k + l) < m * l)
             for n in range(1, 6) for m in range(n + 1, 9) for k in range(6)
             for l in [min_filtration_shift(n, m, k)])
    rep.add("min_filtration_shift is least", ok, "1<=n<m<=8, 0<=k<=5")
    return rep


def suite_lemma1_11(p) -> Report:
    from .finiteness import ex116_ring
    from .ore import kernel_sigma_power_check

    S = ex116_ring()
    rep = Report("lemma1_11", seed=p["seed"], parameters={"ring": str(S), "max_i": 8})
    y = S.base.gen()
    x = S.gen()
    for i in range(9):
        in_base, value = kernel_sigma_power_check(S, y, i)
        rep.add(f"x^{i}y^{i} in R", in_base, f"= {value}")
        rep.add(f"x^{i}y^{i}=1", value == S.one)
    rep.add("x*(x*y)*y = 1", x * (x * S(y)) * S(y) == S.one)
    return rep


def suite_prop0_5(p) -> Report:
    from .morphisms import builtin_morphisms
    from .series import idempotent_constant_one_solve, idempotents_brute_force

    N = p["prec"]
    rep = Report("prop0_5", seed=p["seed"], parameters={"prec": N})
    z2 = make_ring("Z/2")
    found = idempotents_brute_force(z2, None, 3)
    rep.add("Z/2 prec 3: exhaustive", len(found) == 1 and found[0].is_one(),
            "4 candidates", witness=[str(e) for e in found])
    for spec, sigma in [("Z/4", "id"), ("P(Z/2)", "shift")]:
        R = make_ring(spec)
        sol = idempotent_constant_one_solve(R, builtin_morphisms(sigma, R), N)
        rep.add(f"{spec} sigma={sigma}: solved idempotent is 1", sol.is_one,
                f"{len(sol.steps)} forced coefficients", witness=None if sol.is_one else str(sol.series))
    return rep


def suite_thm0_4(p) -> Report:
    from .finiteness import skew_poly_finiteness_demo, thm04_configurations

    rep = Report("thm0_4", seed=p["seed"], parameters=_params(p, "prec", "count"))
    for base, sigma in thm04_configurations(p["seed"]):
        sub = skew_poly_finiteness_demo(base, sigma, p["prec"], p["count"], p["seed"],
                                        stable=base.descriptor == "Z/4")
        rep.extend(sub, f"{base}[[x;{sigma.name}]]")
    return rep


def suite_prop1_12(p) -> Report:
    from .finiteness import ex116_ring
    from .modules import ModuleMap, bounded_degree_kernel, prop112_witness

    S = ex116_ring()
    P = S.base
    y = P.gen()
    f = ModuleMap(S, ((S.gen(), S.one),), "right")
    rep = Report("prop1_12", seed=p["seed"], parameters={"map": "f(s,t) = x*s + t", "a": "y", "k": 1})
    rep.extend(prop112_witness(f, y, 1, (-y, P.one), seed=p["seed"]), "documented b")
    psi = ModuleMap(P, ((P.one, y),), "right")
    kern = bounded_degree_kernel(psi, 1)
    target = (-y, P.one)
    rediscovered = len(kern) == 1 and any(
        all(k == target[i] * c for i, k in enumerate(kern[0])) for c in (1, -1))
    rep.add("kernel of psi at D=1 is spanned by (-y,1)", rediscovered,
            witness=[[str(e) for e in v] for v in kern])
    g = ModuleMap(S, ((S.one, S.one),), "right")
    rep.extend(prop112_witness(g, y, 0, None, D=0, seed=p["seed"]), "k=0")
    return rep


def suite_ex1_13(p) -> Report:
    from .free import (EX113_SYSTEM, ex113_iso, ex113_iso_inverse, ex113_ore_ring,
                       independence_exhaustive, random_freepoly, ring_s)
    from .morphisms import builtin_morphisms

    rep = Report("ex1_13", seed=p["seed"], parameters=_params(p, "count"))
    S = ring_s()
    rng = random.Random(p["seed"])
    u, v, x = (S.word(g) for g in "uvx")
    rep.add("xu=0 and xv=0", (x * u).is_zero() and (x * v).is_zero())
    ok = True
    for _ in range(p["count"]):
        w = "".join(rng.choice("uvx") for _ in range(rng.randint(0, 8)))
        nf = EX113_SYSTEM.rewrite_word(w)
        ok &= all(EX113_SYSTEM.rewrite_word(w, rng) == nf for _ in range(3))
        ok &= nf is None or EX113_SYSTEM.is_normal(nf)
    rep.add("normal forms independent of rewrite order", ok, f"{p['count']} words")
    O = ex113_ore_ring()
    rep.extend(check_endomorphism(builtin_morphisms("const_term", O.base), p["seed"], 200), "sigma")
    bad = None
    for i in range(p["count"]):
        a = S.wrap(random_freepoly(rng, S.alphabet, 4, system=S.system))
        b = S.wrap(random_freepoly(rng, S.alphabet, 4, system=S.system))
        if ex113_iso(a * b) != ex113_iso(a) * ex113_iso(b) or ex113_iso_inverse(ex113_iso(a)) != a \
                or ex113_iso(a + b) != ex113_iso(a) + ex113_iso(b):
            bad = (i, str(a), str(b))
            break
    rep.add("S -> Z<u,v>[x;sigma] is a ring isomorphism", bad is None,
            f"{p['count']} pairs, degree <= 4", witness=bad)
    ind = independence_exhaustive(2, (-1, 0, 1))
    rep.add("au+bv=0 only for a=b=0", not ind["counterexamples"] and ind["zero_combos"] == 1,
            f"{ind['pairs_checked']} pairs, degree <= 2, coefficients -1..1")
    return rep


def suite_ex1_14(p) -> Report:
    from .matrices import umat_shift_report

    rep = Report("ex1_14", seed=p["seed"], parameters=_params(p, "window", "count", "base"))
    for spec in _bases(p, ["Z/2", "Z"]):
        rep.extend(umat_shift_report(make_ring(spec), p["seed"], p["count"], p["window"]), spec)
    return rep


def suite_ex1_16(p) -> Report:
    from .finiteness import ex116_demo

    return ex116_demo(p["seed"], 200)


def suite_lemma1_17(p) -> Report:
    from .series import SkewSeriesRing, matrix_of_series_mul, matrix_series_iso, \
        matrix_series_iso_inverse

    rep = Report("lemma1_17", seed=p["seed"], parameters=_params(p, "prec", "count", "base"))
    for spec in _bases(p, ["Z/2"]):
        ring = SkewSeriesRing(make_ring(spec), None, p["prec"])
        rng = random.Random(p["seed"])
        bad = None
        for i in range(p["count"]):
            A = [[ring.sample(rng) for _ in range(2)] for _ in range(2)]
            B = [[ring.sample(rng) for _ in range(2)] for _ in range(2)]
            AB = matrix_of_series_mul(A, B)
            sA, sB = matrix_series_iso(A), matrix_series_iso(B)
            if matrix_series_iso(AB) != sA * sB or matrix_series_iso_inverse(sA, ring) != A:
                bad = i
                break
        rep.add(f"{spec}/iso respects products", bad is None, f"{p['count']} 2x2 pairs", bad)
    return rep


def suite_prop1_19(p) -> Report:
    from .matrices import random_banded, theta_report

    rep = Report("prop1_19", seed=p["seed"], parameters=_params(p, "window", "prec", "count", "base"))
    for spec in _bases(p, ["Z/2", "Z/4"]):
        base = make_ring(spec)
        rng = random.Random(p["seed"])
        pairs = [(random_banded(base, rng), random_banded(base, rng)) for _ in range(p["count"])]
        rep.extend(theta_report(pairs, p["prec"], p["window"]), spec)
    return rep


def suite_cor1_18(p) -> Report:
    from .finiteness import cor118_demo

    rep = Report("cor1_18", seed=p["seed"], parameters=_params(p, "prec", "window", "base"))
    for spec in _bases(p, ["Z/2", "Z"]):
        rep.extend(cor118_demo(make_ring(spec), p["prec"], p["window"]), spec)
    return rep


def suite_weyl(p) -> Report:
    from .ore import weyl_generators, weyl_relation_check, weyl_ring

    rep = Report("weyl", seed=p["seed"], parameters=_params(p, "count"))
    for spec, n in [("Z", 1), ("Z/2", 1), ("Z", 2)]:
        W = weyl_ring(make_ring(spec), n)
        rep.extend(weyl_relation_check(W, p["seed"], min(p["count"], 50)), f"W{n}({spec})")
    W = weyl_ring(make_ring("Z"), 1)
    x, y = weyl_generators(W)
    rep.add("W1(Z)/x^3y - yx^3 = 3x^2", x ** 3 * y - y * x ** 3 == 3 * x ** 2)
    return rep


SUITES: dict[str, Callable[[dict], Report]] = {
    "lemma1_3": suite_lemma1_3,
    "lemma1_4": suite_lemma1_4,
    "lemma1_7": suite_lemma1_7,
    "lemma1_11": suite_lemma1_11,
    "prop0_5": suite_prop0_5,
    "thm0_4": suite_thm0_4,
    "prop1_12": suite_prop1_12,
    "ex1_13": suite_ex1_13,
    "ex1_14": suite_ex1_14,
    "ex1_16": suite_ex1_16,
    "lemma1_17": suite_lemma1_17,
    "prop1_19": suite_prop1_19,
    "cor1_18": suite_cor1_18,
    "weyl": suite_weyl,
}


def _params(p: dict, *keys: str) -> dict[str, Any]:
    return {k: p[k] for k in keys if p.get(k) is not None}


def resolve_params(params: dict | None = None) -> dict:
    out = dict(DEFAULTS)
    for k, v in (params or {}).items():
        if k not in DEFAULTS:
            raise SuiteError(f"unknown suite parameter {k!r}")
        if v is None:
            continue
        if k in ("window", "prec", "count") and (not isinstance(v, int) or v < 1):
            raise SuiteError(f"{k} must be a positive integer, got {v!r}")
        if k == "seed" and not isinstance(v, int):
            raise SuiteError(f"seed must be an integer, got {v!r}")
        if k == "base":
            make_ring(v)  # validate the descriptor early
        out[k] = v
    return out


def run_suite(name: str, params: dict | None = None) -> Report:
    """Run one named suite, or ``"all"`` to run every suite in order."""
    p = resolve_params(params)
    if name == "all":
        rep = Report("all", seed=p["seed"], parameters=_params(p, "window", "prec", "count", "base"))
        for key, fn in SUITES.items():
            rep.extend(fn(p), key)
        return rep
    try:
        fn = SUITES[name]
    except KeyError:
        raise SuiteError(f"unknown suite {name!r}; known: {', '.join(SUITES)}, all") from None
    rep = fn(p)
    rep.name = name
    rep.seed = p["seed"]
    return rep

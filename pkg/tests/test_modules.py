import random

import pytest

from orelab.errors import BudgetExceeded, NotEnumerableError, PreconditionError
from orelab.finiteness import ex116_ring
from orelab.modules import (ModuleMap, all_vectors, apply_map, bounded_degree_kernel,
                            brute_injective, brute_surjective, compose, prop112_witness, search_epi,
                            search_mono)
from orelab.rings import make_ring

Z2, Z3, Z4 = make_ring("Z/2"), make_ring("Z/3"), make_ring("Z/4")
M2 = make_ring("M2(Z/2)")
P = make_ring("Poly(Z,y)")


def test_apply_identity_and_diagonal():
    f = ModuleMap(Z4, ((1, 0), (0, 1)), "right")
    assert f((Z4(3), Z4(2))) == (Z4(3), Z4(2))
    g = ModuleMap(Z2, ((1,), (1,)), "right")
    assert g((Z2(1),)) == (Z2(1), Z2(1))
    with pytest.raises(ValueError):
        g((Z2(1), Z2(0)))


def test_side_convention():
    a, b = M2.unit_matrix(0, 1), M2.unit_matrix(1, 0)
    right = ModuleMap(M2, ((a,),), "right")
    left = ModuleMap(M2, ((a,),), "left")
    assert right((b,)) == (a * b,)
    assert left((b,)) == (b * a,)
    assert a * b != b * a


@pytest.mark.parametrize("side", ["left", "right"])
def test_composition(side):
    rng = random.Random(0)
    for _ in range(20):
        f = ModuleMap(M2, tuple(tuple(M2.sample(rng) for _ in range(2)) for _ in range(3))
                      if side == "right" else
                      tuple(tuple(M2.sample(rng) for _ in range(3)) for _ in range(2)), side)
        g = ModuleMap(M2, tuple(tuple(M2.sample(rng) for _ in range(3)) for _ in range(2))
                      if side == "right" else
                      tuple(tuple(M2.sample(rng) for _ in range(2)) for _ in range(3)), side)
        v = tuple(M2.sample(rng) for _ in range(2))
        assert compose(g, f)(v) == g(f(v))
    with pytest.raises(ValueError):
        compose(f, f)


@pytest.mark.parametrize("side", ["left", "right"])
def test_linearity_sampled(side):
    rng = random.Random(1)
    f = ModuleMap(M2, tuple(tuple(M2.sample(rng) for _ in range(2)) for _ in range(2)), side)
    for _ in range(50):
        v = tuple(M2.sample(rng) for _ in range(2))
        w = tuple(M2.sample(rng) for _ in range(2))
        r = M2.sample(rng)
        assert f(tuple(a + b for a, b in zip(v, w))) == tuple(a + b for a, b in zip(f(v), f(w)))
        if side == "right":
            assert f(tuple(a * r for a in v)) == tuple(a * r for a in f(v))
        else:
            assert f(tuple(r * a for a in v)) == tuple(r * a for a in f(v))


def test_enumeration_order_first_coordinate_fastest():
    assert [tuple(e.value for e in t) for t in all_vectors(Z2, 2)] == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_brute_oracles():
    diag = ModuleMap(Z2, ((1,), (1,)), "right")
    inj = brute_injective(diag)
    surj = brute_surjective(diag)
    assert inj.holds and inj.witness is None
    assert not surj.holds and surj.witness == (Z2(1), Z2(0))
    dbl = ModuleMap(Z4, ((2,),), "right")
    res = brute_injective(dbl)
    assert not res.holds and res.witness == ((Z4(0),), (Z4(2),))
    ident = ModuleMap(Z3, ((1,),), "right")
    assert brute_injective(ident).holds and brute_surjective(ident).holds


def test_brute_budget_and_enumerability():
    f = ModuleMap(Z4, ((1, 0, 0),), "right")
    with pytest.raises(BudgetExceeded):
        brute_injective(f, budget=10)
    with pytest.raises(NotEnumerableError):
        brute_injective(ModuleMap(make_ring("Z"), ((1,),), "right"))


def test_budget_env(monkeypatch):
    monkeypatch.setenv("ORELAB_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        brute_injective(ModuleMap(Z4, ((1, 0),), "right"))


def test_search_examples():
    found = search_mono(Z2, 1, 2)
    assert found.found is not None and found.definitive
    assert brute_injective(found.found).holds
    assert found.found.matrix == ((Z2(1),), (Z2(0),))
    none = search_mono(Z2, 2, 1)
    assert none.found is None and none.definitive
    none = search_epi(Z2, 1, 2)
    assert none.found is None and none.definitive


@pytest.mark.parametrize("R", [Z2, Z3, Z4, M2])
@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("side", ["left", "right"])
def test_no_mono_down_no_epi_up(R, n, side):
    mode = "exhaustive" if R.size() ** (n * (n + 1)) * R.size() ** (n + 1) <= 10 ** 6 else "random"
    mono = search_mono(R, n + 1, n, side, mode, trials=50)
    epi = search_epi(R, n, n + 1, side, mode, trials=50)
    assert mono.found is None and epi.found is None
    assert mono.definitive == (mode == "exhaustive")


def test_exhaustive_search_over_budget():
    with pytest.raises(BudgetExceeded):
        search_mono(M2, 3, 2)


def test_bounded_degree_kernel_examples():
    y = P.gen()
    k0 = bounded_degree_kernel(ModuleMap(P, ((y, -y),), "right"), 0)
    assert len(k0) == 1 and (k0[0] == (P.one, P.one) or k0[0] == (-P.one, -P.one))
    k1 = bounded_degree_kernel(ModuleMap(P, ((y * y, -y),), "right"), 1)
    assert len(k1) == 1 and k1[0] in ((P.one, y), (-P.one, -y))
    assert bounded_degree_kernel(ModuleMap(P, ((y,),), "right"), 3) == []


def test_bounded_degree_kernel_vectors_are_kernel():
    rng = random.Random(0)
    for _ in range(20):
        f = ModuleMap(P, tuple(tuple(P.sample(rng) for _ in range(3)) for _ in range(2)), "right")
        for v in bounded_degree_kernel(f, 2):
            assert all(c.is_zero() for c in f(v)) and not all(c.is_zero() for c in v)


def test_prop112_documented_instance():
    S = ex116_ring()
    y = P.gen()
    f = ModuleMap(S, ((S.gen(), S.one),), "right")
    rep = prop112_witness(f, y, 1, (-y, P.one))
    assert rep.passed, rep.failures()
    # a*b = (-y^2, y) and f(-y^2, y) = -x*y^2 + y = 0
    assert f((S(-y * y), S(y))) == (S.zero,)
    assert rep.check("psi(b)=0").passed and rep.check("a^k b nonzero").passed


def test_prop112_rejects_zero_b():
    S = ex116_ring()
    f = ModuleMap(S, ((S.gen(), S.one),), "right")
    rep = prop112_witness(f, P.gen(), 1, (0, 0))
    assert not rep.passed and not rep.check("b nonzero").passed


def test_prop112_preconditions():
    S = ex116_ring()
    f = ModuleMap(S, ((S.gen(), S.one),), "right")
    with pytest.raises(PreconditionError):
        prop112_witness(f, P.gen() + 1, 1, (0, 1))
    g = ModuleMap(S, ((S.gen() ** 2, S.one),), "right")
    with pytest.raises(PreconditionError):
        prop112_witness(g, P.gen(), 1, (0, 1))


def test_prop112_k_zero_is_base_linear_algebra():
    S = ex116_ring()
    f = ModuleMap(S, ((S(2), S(-3)),), "right")
    rep = prop112_witness(f, P.gen(), 0, None, D=0)
    assert rep.passed, rep.failures()
    assert rep.parameters["b"] in (["3", "2"], ["-3", "-2"])

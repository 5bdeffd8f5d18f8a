import random

import pytest

from orelab.checks import check_endomorphism, check_sigma_derivation, ring_axioms_check
from orelab.errors import DescriptorError, MorphismError, NotEnumerableError, RingMismatchError
from orelab.laurent import square_nonsurjectivity_check
from orelab.morphisms import (DERIVATIONS, ENDOMORPHISMS, EndoMap, SigmaDerivation, builtin_morphisms,
                              const_term, d_dy)
from orelab.rings import IntegerModRing, MatrixRing, make_ring

REGISTERED = ["Z", "Z/2", "Z/4", "Poly(Z,y)", "M2(Z/2)", "M2(Z)", "P(Z/2)", "Laurent(Z/2,prec=6)",
              "UMat(Z/2)", "Free(u,v)", "Free(u,v,x|xu=0,xv=0)"]


def test_make_ring_sizes_and_flags():
    z4 = make_ring("Z/4")
    assert z4.enumerable and z4.exact_equality and z4.size() == 4
    m2 = make_ring("M2(Z/2)")
    assert m2.enumerable and m2.exact_equality and m2.size() == 16
    p = make_ring("P(Z/2)")
    assert not p.exact_equality and not p.enumerable
    assert make_ring("Z").exact_equality and make_ring("Poly(Z,y)").exact_equality
    assert not make_ring("Laurent(Z/2,prec=4)").exact_equality


@pytest.mark.parametrize("bad", ["Z/0", "Q", "M2(", "Poly(Z)", "Laurent(Z/2)", "Z/x", "Free(uv)"])
def test_make_ring_rejects_malformed(bad):
    with pytest.raises(DescriptorError):
        make_ring(bad)


def test_not_enumerable():
    with pytest.raises(NotEnumerableError):
        list(make_ring("Z").elements())


def test_mixing_rings_is_an_error():
    with pytest.raises(RingMismatchError):
        make_ring("Z/2").one + make_ring("Z/3").one


def test_big_integers_do_not_overflow():
    Z = make_ring("Z")
    assert (Z(2) ** 200).value == 2 ** 200


@pytest.mark.parametrize("spec", REGISTERED)
@pytest.mark.parametrize("seed", range(5))
def test_ring_axioms_registered(spec, seed):
    rep = ring_axioms_check(make_ring(spec), seed, 200 if spec not in ("UMat(Z/2)",) else 40)
    assert rep.passed, rep.failures()


class _BrokenRing(IntegerModRing):
    """Z/5 with a product that is not associative: a*b = a + 2b (mod 5)."""

    def __init__(self):
        super().__init__(5)
        self.descriptor = "Broken5"

    def _mul(self, a, b):
        return (a + 2 * b) % 5


def test_broken_ring_flags_associativity():
    rep = ring_axioms_check(_BrokenRing(), 0, 50)
    assert not rep.check("mul_associative").passed
    # one failing triple, evaluated directly: (1*1)*1 = 3+2 = 0, 1*(1*1) = 1+6 = 2
    R = _BrokenRing()
    one = R.wrap(1)
    assert (one * one) * one != one * (one * one)


def test_check_endomorphism_examples():
    assert check_endomorphism(builtin_morphisms("const_term", make_ring("Free(u,v)")), 0, 200).passed
    assert check_endomorphism(builtin_morphisms("shift", make_ring("P(Z/2)")), 0, 200).passed
    Z = make_ring("Z")
    plus_one = EndoMap(Z, lambda a: a + 1, "plus_one")
    rep = check_endomorphism(plus_one, 0, 20)
    assert not rep.check("additive").passed
    assert plus_one(Z(0) + Z(0)) != plus_one(Z(0)) + plus_one(Z(0))


def test_check_sigma_derivation_examples():
    P = make_ring("Poly(Z,y)")
    assert check_sigma_derivation(builtin_morphisms("ddy", P), 0, 200).passed
    assert check_sigma_derivation(builtin_morphisms("coeff_shift", P), 0, 200).passed
    mixed = SigmaDerivation(P, const_term(P), d_dy(P).rule, "ddy")
    assert not check_sigma_derivation(mixed, 0, 200).passed
    y = P.gen()
    # at (y, y): delta(y^2) = 2y, delta(y)y + sigma(y)delta(y) = y
    assert mixed(y * y) == 2 * y
    assert mixed(y) * y + const_term(P)(y) * mixed(y) == y


def test_catalog_examples():
    P = make_ring("Poly(Z,y)")
    y = P.gen()
    assert builtin_morphisms("const_term", P)(3 * y ** 2 + 2) == P(2)
    assert builtin_morphisms("coeff_shift", P)(3 * y ** 2 + 2) == 3 * y
    L = make_ring("Laurent(Z/2,prec=6)")
    sq = builtin_morphisms("laurent_square", L)
    x = L.monomial(1)
    assert sq(L.inverse(x) + x) == L.monomial(-2) + L.monomial(2)


def test_catalog_rejects_mismatches():
    with pytest.raises(MorphismError):
        builtin_morphisms("nonexistent", make_ring("Z"))
    with pytest.raises(MorphismError):
        builtin_morphisms("shift", make_ring("Z"))
    with pytest.raises(MorphismError):
        builtin_morphisms("ddy", make_ring("Z/2"))


CATALOG_RINGS = {
    "id": "Z/4", "const_term": "Poly(Z,y)", "neg_y": "Poly(Z,y)", "shift": "P(Z/2)",
    "inner": "M2(Z/2)", "laurent_square": "Laurent(Z/2,prec=6)", "umat_shift": "UMat(Z/2)",
}


@pytest.mark.parametrize("name", sorted(ENDOMORPHISMS))
@pytest.mark.parametrize("seed", range(5))
def test_every_catalog_endomorphism_passes(name, seed):
    R = make_ring(CATALOG_RINGS[name])
    count = 40 if name == "umat_shift" else 200
    assert check_endomorphism(builtin_morphisms(name, R), seed, count).passed


@pytest.mark.parametrize("name", sorted(DERIVATIONS))
@pytest.mark.parametrize("seed", range(5))
def test_every_catalog_derivation_passes(name, seed):
    R = make_ring("Poly(Z,y)")
    assert check_sigma_derivation(builtin_morphisms(name, R), seed, 200).passed


def test_entrywise_lift():
    M = make_ring("M2(Poly(Z,y))")
    lifted = builtin_morphisms("entrywise(const_term)", M)
    assert check_endomorphism(lifted, 0, 100).passed


def test_sequence_shift_window_witnesses():
    P = make_ring("P(Z/2)")
    shift = builtin_morphisms("shift", P)
    rng = random.Random(0)
    for _ in range(50):
        s = P.sample(rng)
        assert P.eq(shift(P.prepend(rng.randrange(2), s)), s, window=8)
    a = P.make([0], const=1)
    b = P.make([1], const=1)
    assert not P.eq(a, b, window=8) and P.eq(shift(a), shift(b), window=8)


def test_laurent_square_bounded_nonsurjectivity():
    L = make_ring("Laurent(Z/2,prec=4)")
    ok, tried = square_nonsurjectivity_check(L, window=4)
    assert ok and tried > 0
    found, _ = square_nonsurjectivity_check(L, window=4, target=L.monomial(2))
    assert not found


def test_matrix_ring_product():
    M = MatrixRing(make_ring("Z"), 2)
    a = M([[1, 2], [3, 4]])
    b = M([[0, 1], [1, 0]])
    assert a * b == M([[2, 1], [4, 3]])
    assert b * a == M([[3, 4], [1, 2]])

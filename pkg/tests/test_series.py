import random

import pytest

from orelab.errors import PrecisionError, PreconditionError, RingMismatchError
from orelab.morphisms import builtin_morphisms
from orelab.rings import make_ring
from orelab.series import (SkewSeriesRing, direct_finiteness_instance, idempotent_constant_one_solve,
                           idempotents_brute_force, matrix_of_series_mul, matrix_series_iso,
                           matrix_series_iso_inverse, right_inverse, series_mul)

P2 = make_ring("P(Z/2)")
SHIFT = builtin_morphisms("shift", P2)


def test_shift_twists_right_factor():
    S = SkewSeriesRing(P2, SHIFT, 6)
    rng = random.Random(0)
    for _ in range(20):
        r = P2.sample(rng)
        assert S.gen() * S(r) == S(SHIFT(r)) * S.gen()


def test_binomial_char_two():
    S = SkewSeriesRing(make_ring("Z/2"), None, 4)
    one_plus_x = S.series([1, 1])
    assert series_mul(one_plus_x, one_plus_x) == S.series([1, 0, 1])
    p = S.series([1, 1, 0, 1])
    assert p * S.one == p


def test_precision_mismatch():
    a = SkewSeriesRing(make_ring("Z/2"), None, 4).one
    b = SkewSeriesRing(make_ring("Z/2"), None, 5).one
    with pytest.raises(PrecisionError):
        series_mul(a, b)
    c = SkewSeriesRing(make_ring("Z/3"), None, 4).one
    with pytest.raises(RingMismatchError):
        series_mul(a, c)


def test_idempotent_solve():
    assert idempotent_constant_one_solve(make_ring("Z/4"), None, 8).is_one
    sol = idempotent_constant_one_solve(P2, SHIFT, 4)
    assert sol.is_one and sol.series * sol.series == sol.series
    assert len(sol.steps) == 3


def test_idempotent_brute_force_z2():
    found = idempotents_brute_force(make_ring("Z/2"), None, 3)
    assert len(found) == 1 and found[0].is_one()


@pytest.mark.parametrize("spec,sigma", [("Z/2", "id"), ("Z/4", "id"), ("P(Z/2)", "shift")])
@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_unique_idempotent_small_precision(spec, sigma, N):
    R = make_ring(spec)
    assert idempotent_constant_one_solve(R, builtin_morphisms(sigma, R), N).is_one
    if R.enumerable and N <= 3:
        found = idempotents_brute_force(R, None, N)
        assert len(found) == 1 and found[0].is_one()


def test_right_inverse_geometric():
    S = SkewSeriesRing(make_ring("Z"), None, 5)
    assert right_inverse(S.series([1, -1])) == S.series([1, 1, 1, 1, 1])
    assert right_inverse(S.one) == S.one
    with pytest.raises(PreconditionError):
        right_inverse(S.series([2, 1]))


def test_right_inverse_over_sequences():
    N = 6
    S = SkewSeriesRing(P2, SHIFT, N)
    a = P2.make(period=[1, 0])
    q = right_inverse(S.series([1, -a]))
    # q_k = a sigma(a) ... sigma^{k-1}(a)
    expected = [P2.one]
    for k in range(1, N):
        term = P2.one
        for i in range(k):
            term = term * SHIFT.power(i, a)
        expected.append(term)
    assert q == S.series(expected)
    assert (S.series([1, -a]) * q).is_one()


@pytest.mark.parametrize("spec,sigma", [("Z/4", "id"), ("P(Z/2)", "shift"), ("M2(Z/2)", "id"),
                                        ("M2(Z/2)", "inner"), ("Z", "id")])
def test_right_inverse_property(spec, sigma):
    R = make_ring(spec)
    S = SkewSeriesRing(R, builtin_morphisms(sigma, R), 8)
    rng = random.Random(0)
    for _ in range(100):
        p = S.sample_unit_constant(rng)
        q = right_inverse(p)
        assert (p * q).is_one() and (q * p).is_one()


@pytest.mark.parametrize("spec,sigma", [("Z/4", "id"), ("P(Z/2)", "shift"), ("M2(Z/2)", "inner")])
def test_series_ring_laws(spec, sigma):
    R = make_ring(spec)
    S = SkewSeriesRing(R, builtin_morphisms(sigma, R), 6)
    rng = random.Random(4)
    for _ in range(200):
        p, q, r = S.sample(rng), S.sample(rng), S.sample(rng)
        assert (p * q) * r == p * (q * r)
        assert p * S.one == p and S.one * p == p


def test_direct_finiteness_instance():
    S = SkewSeriesRing(make_ring("Z"), None, 8)
    p = S.series([1, -1])
    q = S.series([1] * 8)
    assert direct_finiteness_instance(p, q).passed
    S2 = SkewSeriesRing(P2, SHIFT, 8)
    rng = random.Random(0)
    p = S2.sample_unit_constant(rng)
    assert direct_finiteness_instance(p, right_inverse(p)).passed
    M = make_ring("M2(Z/2)")
    S3 = SkewSeriesRing(M, None, 8)
    p = S3.sample_unit_constant(rng)
    assert direct_finiteness_instance(p, right_inverse(p)).passed
    with pytest.raises(PreconditionError):
        direct_finiteness_instance(S.series([1, 1]), S.one)


def test_matrix_series_iso():
    S = SkewSeriesRing(make_ring("Z/2"), None, 8)
    ident = [[S.one, S.zero], [S.zero, S.one]]
    assert matrix_series_iso(ident).is_one()
    rng = random.Random(0)
    for _ in range(50):
        A = [[S.sample(rng) for _ in range(2)] for _ in range(2)]
        B = [[S.sample(rng) for _ in range(2)] for _ in range(2)]
        iA = matrix_series_iso(A)
        assert matrix_series_iso(matrix_of_series_mul(A, B)) == iA * matrix_series_iso(B)
        assert matrix_series_iso([[A[i][j] + B[i][j] for j in range(2)] for i in range(2)]) == \
            iA + matrix_series_iso(B)
        assert iA.coeff(1).value[0][1] == A[0][1].coeff(1)
        assert matrix_series_iso_inverse(iA, S) == A


def test_matrix_series_iso_twisted():
    P = make_ring("Poly(Z,y)")
    S = SkewSeriesRing(P, builtin_morphisms("neg_y", P), 5)
    rng = random.Random(1)
    for _ in range(30):
        A = [[S.sample(rng) for _ in range(2)] for _ in range(2)]
        B = [[S.sample(rng) for _ in range(2)] for _ in range(2)]
        assert matrix_series_iso(matrix_of_series_mul(A, B)) == matrix_series_iso(A) * matrix_series_iso(B)

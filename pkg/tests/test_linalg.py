import random

import pytest

from rmx.field import PrimeField, RationalField
from rmx.linalg import (SpanTracker, charpoly, fp_roots, inverse, nullspace,
                        poly_eval, poly_gcd, poly_monic_nth_root, poly_mul,
                        poly_pow, rank, rref)


def test_rref_rank_inverse_prime():
    F = PrimeField()
    rng = random.Random(0)
    A = F.arr_rand(rng, (8, 8))
    Ainv = inverse(F, A)
    prod = F.matmul(A, Ainv)
    assert (prod == F.eye(8)).all()
    # rank of a constructed rank-3 matrix
    B = F.matmul(F.arr_rand(rng, (8, 3)), F.arr_rand(rng, (3, 8)))
    assert rank(F, B) == 3


def test_rref_rational():
    F = RationalField()
    A = F.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, piv = rref(F, A)
    assert len(piv) == 2


def test_nullspace():
    F = PrimeField()
    A = F.array([[1, 2, 3], [2, 4, 6]])
    N = nullspace(F, A)
    assert N.shape[1] == 2
    prod = F.matmul(A, N)
    assert not prod.any()


def test_charpoly_companion():
    F = PrimeField()
    # companion matrix of x^3 - 2x^2 + 5x - 7
    A = F.array([[0, 0, 7], [1, 0, F.neg(5)], [0, 1, 2]])
    cp = charpoly(F, A)
    assert [int(c) for c in cp] == [int(F.neg(7)) % F.p, 5, int(F.neg(2)) % F.p, 1]


def test_charpoly_rational_diag():
    F = RationalField()
    from fractions import Fraction
    A = F.array([[Fraction(1, 2), 0], [0, Fraction(3)]])
    cp = charpoly(F, A)
    # (x - 1/2)(x - 3) = x^2 - 7/2 x + 3/2
    assert cp == [Fraction(3, 2), Fraction(-7, 2), Fraction(1)]


def test_poly_nth_root():
    F = PrimeField()
    rng = random.Random(1)
    g = [F.rand(rng), F.rand(rng), F.rand(rng), 1]  # monic cubic
    f = poly_pow(F, g, 36)
    root = poly_monic_nth_root(F, f, 36)
    assert root == g
    f[0] = F.add(f[0], 1)
    assert poly_monic_nth_root(F, f, 36) is None


def test_fp_roots():
    F = PrimeField()
    rng = random.Random(2)
    roots = sorted(rng.randrange(F.p) for _ in range(6))
    f = [1]
    for r in roots:
        f = poly_mul(F, f, [F.neg(r), 1])
    got = fp_roots(F, f, rng)
    assert got == roots
    # a quadratic with no roots in F_p: x^2 - s for a non-square s
    s = 3
    while pow(s, (F.p - 1) // 2, F.p) == 1:
        s += 1
    assert fp_roots(F, [F.neg(s), 0, 1], rng) is None


def test_span_tracker_coordinates():
    F = PrimeField()
    rng = random.Random(3)
    tr = SpanTracker(F, 6)
    v1 = F.arr_rand(rng, (6,))
    v2 = F.arr_rand(rng, (6,))
    assert tr.insert(v1.copy()) and tr.insert(v2.copy())
    combo = F.arr_add(F.arr_scale(tr.rows[0], 3), F.arr_scale(tr.rows[1], 5))
    coords = tr.coordinates(combo)
    assert coords is not None
    out = F.arr_rand(rng, (6,))
    assert tr.coordinates(out) is None or rank(F, F.array([list(tr.rows[0]), list(tr.rows[1]), list(out)])) == 2

import pytest

from rmx.field import DegeneratePoint, PrimeField, RationalField
from rmx.points import (EvalPoint, admissible, guard_bound, quantum_int,
                        sample_admissible_point)


def test_sample_so_prime_deterministic():
    F = PrimeField()
    a = sample_admissible_point("so", 9, F, seed=42)
    b = sample_admissible_point("so", 9, F, seed=42)
    assert (a.qh, a.uh, a.Qh) == (b.qh, b.uh, b.Qh)
    assert F.eq(a.Q, F.pow(a.q, 9))
    # all small quantum integers nonzero up to the guard bound
    for m in range(1, guard_bound(9) + 1):
        assert not F.is_zero(quantum_int(F, a.qh, 2 * m))


def test_sample_sp_specialization():
    F = PrimeField()
    p = sample_admissible_point("sp", 8, F, seed=1)
    assert F.eq(p.Q, F.pow(p.q, -8))


def test_sample_rational():
    F = RationalField()
    p = sample_admissible_point("so", 9, F, seed=7)
    assert admissible(p)
    assert p.qh != 0 and abs(p.qh) != 1


def test_preconditions():
    F = PrimeField()
    with pytest.raises(ValueError):
        sample_admissible_point("so", 2, F, seed=0)
    with pytest.raises(ValueError):
        EvalPoint("sp", 9, F, 2, 3)
    with pytest.raises(ValueError):
        EvalPoint("xx", 9, F, 2, 3)
    with pytest.raises(ValueError):
        sample_admissible_point("so", 9, PrimeField(47), seed=0)  # p <= 4n+16
    with pytest.raises(DegeneratePoint):
        EvalPoint("so", 9, F, 0, 3)


def test_small_field_exhausts():
    from rmx.points import AdmissibleExhausted
    with pytest.raises(AdmissibleExhausted):
        sample_admissible_point("so", 9, PrimeField(53), seed=0)


def test_with_uh_preserves_q_side():
    F = PrimeField()
    p = sample_admissible_point("so", 9, F, seed=3)
    p2 = p.with_uh(12345)
    assert p2.qh == p.qh and p2.Qh == p.Qh and p2.uh == 12345

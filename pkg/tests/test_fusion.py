import random

import pytest

from rmx import fusion
from rmx.field import DegeneratePoint, PrimeField
from rmx.points import sample_admissible_point, sample_spectral_value
from rmx.vectorrep import build_rep


@pytest.fixture(scope="module")
def so9():
    F = PrimeField()
    pt = sample_admissible_point("so", 9, F, seed=42)
    return build_rep("so", 9, pt)


def fresh_u(fam, seed):
    rng = random.Random(seed)
    uh = sample_spectral_value(fam.point, rng)
    return fam.field.mul(uh, uh)


def test_spectral_word_validation():
    w = fusion.SpectralWord(4, (1, 2, 1, 3, 2, 1), (1, 2, 3, 4))
    assert w.permutation() == (4, 3, 2, 1)
    with pytest.raises(ValueError):
        fusion.SpectralWord(4, (1, 1), (1, 2, 3, 4))  # strands cross twice
    with pytest.raises(ValueError):
        fusion.SpectralWord(3, (1, 2), (1, 2))        # wrong param count
    with pytest.raises(ValueError):
        fusion.SpectralWord(3, (5,), (1, 2, 3))       # letter out of range


def test_identity_word_is_identity(so9):
    from rmx.tensorops import random_vectors, vecs_equal
    F = so9.field
    w = fusion.SpectralWord(4, (), (2, 3, 5, 7))
    op = fusion.word_operator(so9, w)
    rng = random.Random(0)
    P = random_vectors(F, rng, so9.n ** 4, 2)
    assert vecs_equal(F, op.apply(P, 4), P)


def test_single_transposition_word(so9):
    """Word s1 with strands (u1, u2) is the crossing factor at u2/u1."""
    from rmx.tensorops import random_vectors, vecs_equal
    F = so9.field
    u1, u2 = 5, 11
    w = fusion.SpectralWord(3, (1,), (u1, u2, 13))
    op = fusion.word_operator(so9, w)
    rng = random.Random(1)
    P = random_vectors(F, rng, so9.n ** 3, 2)
    direct = so9.r_two_leg(F.div(u2, u1)).apply(P, 1, 3)
    assert vecs_equal(F, op.apply(P, 3), direct)


def test_matsumoto_longest_elements(so9):
    r = fusion.matsumoto_check(so9, (3, 2, 1, 4), (1, 2, 1), (2, 1, 2), probes=5, seed=2)
    assert r["verdict"] == "PASS"
    r = fusion.matsumoto_check(so9, (4, 3, 2, 1), (1, 2, 1, 3, 2, 1), (3, 2, 3, 1, 2, 3),
                               probes=5, seed=3)
    assert r["verdict"] == "PASS"


def test_matsumoto_rejects_wrong_permutation(so9):
    with pytest.raises(ValueError):
        fusion.matsumoto_check(so9, (4, 3, 2, 1), (1, 2, 1), (2, 1, 2))


def test_word_equals_fused_product(so9):
    """The longest-element word with fusion parameters reproduces the
    six-factor product of the fused display."""
    from rmx.tensorops import OpChain, random_vectors, vecs_equal
    F = so9.field
    q = so9.point.q
    v = F.inv(F.mul(q, q))
    u = fresh_u(so9, 4)
    params = (F.one, v, u, F.mul(u, v))
    w = fusion.SpectralWord(4, (2, 1, 3, 2, 1, 3), params)
    op = fusion.word_operator(so9, w)
    q2 = F.mul(q, q)
    ref = OpChain(F, [
        (so9.r_two_leg(F.mul(q2, u)), 2),
        (so9.r_two_leg(u), 1),
        (so9.r_two_leg(u), 3),
        (so9.r_two_leg(F.div(u, q2)), 2),
        (so9.r_two_leg(v), 1),
        (so9.r_two_leg(v), 3),
    ])
    rng = random.Random(5)
    P = random_vectors(F, rng, so9.n ** 4, 2)
    assert vecs_equal(F, op.apply(P, 4), ref.apply(P, 4))


def test_dropping_a_factor_breaks_equality(so9):
    """Negative control: a five-letter subword of the longest element does not
    agree with a full reduced word."""
    from rmx.tensorops import random_vectors, vecs_equal
    F = so9.field
    rng = random.Random(6)
    params = tuple(F.rand_nonzero(rng) for _ in range(4))
    full = fusion.word_operator(so9, fusion.SpectralWord(4, (1, 2, 1, 3, 2, 1), params))
    partial = fusion.word_operator(so9, fusion.SpectralWord(4, (2, 1, 3, 2, 1), params))
    P = random_vectors(F, rng, so9.n ** 4, 2)
    assert not vecs_equal(F, full.apply(P, 4), partial.apply(P, 4))


def test_fused_unitarity_and_controls(so9):
    u = fresh_u(so9, 7)
    assert fusion.s_unitarity(so9, u, probes=3, seed=1)["verdict"] == "PASS"
    assert fusion.s_unitarity(so9, u, probes=2, seed=1,
                              normalization="paper")["verdict"] == "FAIL"
    assert fusion.s_unitarity(so9, u, probes=2, seed=1,
                              normalization="none")["verdict"] == "FAIL"


def test_fused_annihilates_complement(so9):
    u = fresh_u(so9, 8)
    assert fusion.annihilates_complement(so9, u, seed=2)["verdict"] == "PASS"


def test_s_at_one_kills_fused_square(so9):
    """At u = 1 the four spectral factors collapse onto the degenerate pair
    R(q^2)R(q^-2) = 0, so the unnormalized fused operator acts as the zero
    scalar on the fused square (the normalizer itself vanishes there)."""
    from rmx.tensorops import random_vectors, vec_is_zero
    F = so9.field
    with pytest.raises(DegeneratePoint):
        fusion.fused_s(so9, F.one, "unitary")
    s = fusion.fused_s(so9, F.one, "none")
    rng = random.Random(9)
    P = fusion.project_fused(so9, random_vectors(F, rng, so9.n ** 4, 2), (1, 3), 4)
    assert vec_is_zero(F, s.apply(P, 4))


@pytest.mark.slow
def test_fused_ybe_so9(so9):
    u = fresh_u(so9, 10)
    v = fresh_u(so9, 11)
    assert fusion.ybe_residual(so9, u, v, probes=3, seed=4)["verdict"] == "PASS"
    assert fusion.ybe_residual(so9, u, v, probes=2, seed=4,
                               _corrupt=True)["verdict"] == "FAIL"


def test_s_commutes_with_fused_projection(so9):
    from rmx.tensorops import random_vectors, vecs_equal
    F = so9.field
    u = fresh_u(so9, 12)
    s = fusion.fused_s(so9, u, "unitary")
    rng = random.Random(13)
    P = random_vectors(F, rng, so9.n ** 4, 2)
    a = fusion.project_fused(so9, s.apply(P, 4), (1, 3), 4)
    b = s.apply(fusion.project_fused(so9, P, (1, 3), 4), 4)
    assert vecs_equal(F, a, b)


def _reduced_words(perm):
    """Two distinct reduced words for a permutation of {1..4} (BFS), or None."""
    from collections import deque
    start = (1, 2, 3, 4)
    if perm == start:
        return ((), ())
    seen = {start: [()]}
    queue = deque([start])
    length = {start: 0}
    while queue:
        cur = queue.popleft()
        for i in range(3):
            nxt = list(cur)
            nxt[i], nxt[i + 1] = nxt[i + 1], nxt[i]
            nxt = tuple(nxt)
            nl = length[cur] + 1
            if nxt not in length:
                length[nxt] = nl
                seen[nxt] = [w + (i + 1,) for w in seen[cur][:2]]
                queue.append(nxt)
            elif length[nxt] == nl and len(seen[nxt]) < 2:
                for w in seen[cur]:
                    cand = w + (i + 1,)
                    if cand not in seen[nxt]:
                        seen[nxt].append(cand)
                        break
    words = seen[perm]
    return (words[0], words[1]) if len(words) >= 2 else (words[0], None)


@pytest.mark.slow
def test_matsumoto_every_s4_permutation(so9):
    """Well-definedness over the choice of reduced word, for every permutation
    of four strands that admits more than one reduced word."""
    import itertools
    for perm in itertools.permutations((1, 2, 3, 4)):
        wa, wb = _reduced_words(perm)
        if wb is None or wa == wb:
            continue
        rec = fusion.matsumoto_check(so9, perm, wa, wb, probes=2, seed=17)
        assert rec["verdict"] == "PASS", (perm, wa, wb)

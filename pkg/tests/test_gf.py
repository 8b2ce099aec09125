import itertools
import random

import pytest
from hypothesis import given, strategies as st

from secureic.gf import PRIMITIVE_POLY, FieldTooSmall, FiniteField, GFMatrix, cauchy_superregular, gf, rank


def clmul_mod(a, b, m, poly):
    """Shift-and-add multiply, reduced bit by bit."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> m & 1:
            a ^= poly
    return out


def det(F, M):
    """Leibniz expansion; characteristic 2 so signs vanish."""
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term = F.mul(term, M[i][j])
        total ^= term
    return total


def span_rank(F, rows):
    """Rank from the size of the row space, q^rank."""
    cols = len(rows[0])
    span = {tuple([0] * cols)}
    for r in rows:
        span = {tuple(a ^ F.mul(c, b) for a, b in zip(v, r)) for v in span for c in range(F.q)}
    size, k = len(span), 0
    while F.q ** k < size:
        k += 1
    return k


@pytest.mark.parametrize("m", sorted(PRIMITIVE_POLY))
def test_tables_match_shift_and_add(m):
    F = gf(m)
    rng = random.Random(m)
    for _ in range(300):
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        assert F.mul(a, b) == clmul_mod(a, b, m, F.modulus)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 8, 16])
def test_inverse(m):
    F = gf(m)
    xs = range(1, F.q) if F.q <= 256 else random.Random(0).sample(range(1, F.q), 500)
    for x in xs:
        assert F.mul(x, F.inv(x)) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_non_primitive_modulus_rejected():
    with pytest.raises(ValueError):
        FiniteField(4, 0x1F)  # x^4+x^3+x^2+x+1 has order 5


@given(st.integers(1, 16).flatmap(lambda m: st.tuples(st.just(m), *[st.integers(0, (1 << m) - 1)] * 3)))
def test_field_axioms(args):
    m, a, b, c = args
    F = gf(m)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
    assert F.mul(a, 1) == a
    if a:
        assert F.div(F.mul(a, b), a) == b


def test_rank_matches_span_size():
    rng = random.Random(5)
    for m in (1, 2):
        F = gf(m)
        for _ in range(60):
            r, c = rng.randint(1, 4), rng.randint(1, 4)
            rows = [[rng.randrange(F.q) for _ in range(c)] for _ in range(r)]
            k = rank(F, rows)
            assert k == span_rank(F, rows)
            assert k <= min(r, c)


def test_matrix_product_and_identity():
    F = gf(4)
    A = GFMatrix(F, [[1, 2, 3], [4, 5, 6]])
    assert GFMatrix.identity(F, 2) @ A == A
    assert (A @ A.transpose()).shape == (2, 2)
    assert A.columns([2, 0]).data == [[3, 1], [6, 4]]


def test_cauchy_minors_exhaustive():
    F = gf(4)
    C = cauchy_superregular(2, 3, F)
    for k in (1, 2):
        for rows in itertools.combinations(range(2), k):
            for cols in itertools.combinations(range(3), k):
                assert det(F, [[C[i, j] for j in cols] for i in rows]) != 0
    assert all(C[0, j] == 1 for j in range(3)) and all(C[i, 0] == 1 for i in range(2))


def test_cauchy_small_cases():
    assert cauchy_superregular(1, 1, gf(1)).data == [[1]]
    with pytest.raises(FieldTooSmall):
        cauchy_superregular(3, 3, gf(2))


def test_cauchy_random_minors_large():
    F = gf(8)
    rng = random.Random(9)
    for _ in range(20):
        r, k = rng.randint(1, 5), rng.randint(1, 5)
        C = cauchy_superregular(r, k, F, rng.sample(range(F.q), r + k))
        size = rng.randint(1, min(r, k))
        rows = rng.sample(range(r), size)
        cols = rng.sample(range(k), size)
        assert det(F, [[C[i, j] for j in cols] for i in rows]) != 0

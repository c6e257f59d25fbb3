import random

from bosokit import linalg
from bosokit.scalars import FieldSpec

from conftest import random_scalar


def _mat(field, rows):
    return [[field.from_int(x) for x in row] for row in rows]


def test_rref_rank_nullspace():
    F = FieldSpec.prime(5)
    m = _mat(F, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert linalg.rank(m, F) == 2
    ns = linalg.nullspace(m, F, 3)
    assert len(ns) == 1
    for row in m:
        acc = F.zero()
        for c, x in zip(row, ns[0]):
            acc = acc + c * x
        assert acc.is_zero()


def test_solve_right_consistency():
    rng = random.Random(3)
    F = FieldSpec.cyclotomic(4)
    for _ in range(20):
        a = [[random_scalar(F, rng) for _ in range(4)] for _ in range(3)]
        x = [random_scalar(F, rng) for _ in range(4)]
        b = linalg.mat_vec(a, x, F)
        sol = linalg.solve_right(a, b, F)
        assert sol is not None
        assert linalg.mat_vec(a, sol, F) == b


def test_solve_right_inconsistent():
    F = FieldSpec.prime(5)
    a = _mat(F, [[1, 0], [1, 0]])
    b = [F.from_int(1), F.from_int(2)]
    assert linalg.solve_right(a, b, F) is None


def test_span_basis_matches_rank():
    rng = random.Random(11)
    F = FieldSpec.prime(7)
    vecs = [[random_scalar(F, rng) for _ in range(6)] for _ in range(10)]
    span = linalg.SpanBasis(F, 6)
    for v in vecs:
        span.add(v)
    assert span.dim == linalg.rank(vecs, F)
    for v in vecs:
        assert span.contains(v)


def test_span_basis_sparse_input():
    F = FieldSpec.prime(5)
    span = linalg.SpanBasis(F, 4)
    assert span.add({0: F.one(), 2: F.from_int(3)})
    assert not span.add({0: F.from_int(2), 2: F.from_int(6)})
    assert span.contains({0: F.from_int(4), 2: F.from_int(12)})
    assert not span.contains({1: F.one()})

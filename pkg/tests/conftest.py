import itertools

import pytest

from bosokit.linalg import SpanBasis
from bosokit.scalars import FieldSpec


@pytest.fixture
def rationals():
    return FieldSpec.rationals()


@pytest.fixture
def f3():
    return FieldSpec.prime(3)


@pytest.fixture
def f5():
    return FieldSpec.prime(5)


def brute_quotient_dims(presentation, D):
    """Independent dimension oracle: rank of the degree-d ideal slice inside
    the free algebra, with no rewriting involved.

    dim A_d = #(all words of degree d) - rank{u * r * v expansions}.
    """
    free = presentation.free
    field = free.field
    ngen = len(free.generators)
    degs = [g.degree for g in free.generators]

    def words_of_degree(d):
        out = []
        stack = [((), 0)]
        while stack:
            w, deg = stack.pop()
            if deg == d:
                out.append(w)
            for i in range(ngen):
                nd = deg + degs[i]
                if nd <= d and (degs[i] > 0 or len(w) < 4 * D + 8):
                    stack.append((w + (i,), nd))
        return sorted(set(out))

    dims = []
    for d in range(D + 1):
        words = words_of_degree(d)
        index = {w: i for i, w in enumerate(words)}
        span = SpanBasis(field, len(words))
        for rel in presentation.relations:
            rdeg = rel.degree()
            if rdeg is None or rdeg > d:
                continue
            remaining = d - rdeg
            for du in range(remaining + 1):
                for u in words_of_degree(du):
                    for v in words_of_degree(remaining - du):
                        vec = {}
                        for rw, c in rel.terms.items():
                            key = index.get(u + rw + v)
                            if key is None:
                                continue
                            vec[key] = vec.get(key, field.zero()) + c
                        span.add(vec)
        dims.append(len(words) - span.dim)
    return dims


def random_scalar(field, rng):
    if field.kind == "prime":
        return field.from_int(rng.randrange(field.param))
    from fractions import Fraction

    coeffs = [Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(field.degree)]
    vec = [Fraction(0)] * field.degree
    for i, c in enumerate(coeffs):
        vec[i] = c
    from bosokit.scalars import Scalar

    return Scalar(field, tuple(vec))


def random_poly(alg, rng, max_degree, terms=3):
    """Random NcPoly in a PresentedAlgebra's free algebra."""
    from bosokit.ncalg import NcPoly

    free = alg.free
    ngen = len(free.generators)
    out = free.zero()
    for _ in range(terms):
        word = []
        deg = 0
        while deg < max_degree:
            i = rng.randrange(ngen)
            if deg + free.generators[i].degree > max_degree:
                break
            word.append(i)
            deg += free.generators[i].degree
            if rng.random() < 0.3:
                break
        c = random_scalar(free.field, rng)
        out = out + NcPoly(free, {tuple(word): free.field.one()}).scale(c)
    return out

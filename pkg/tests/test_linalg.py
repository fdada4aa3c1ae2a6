import random

import pytest

from polyhasse import GF, QQ, Polynomial, RingElement, Zmod, matrix_adjugate, matrix_adjugate_inverse, matrix_det
from polyhasse.errors import NonSquare, NotAUnitDeterminant
from polyhasse.linalg import _bird_det, _cofactor_det, matrix_mul, polynomial_unit_inverse, series_unit_inverse
from polyhasse.polynomial import TruncatedSeries

from _gen import RINGS, coeff, poly

XY = ("x", "y")


def P(text, ring=QQ, vars=XY):
    return Polynomial.parse(text, vars, ring)


def elem(ring, v):
    return RingElement(ring, ring.canon(v))


def test_triangular_examples():
    M = [[P("1"), P("2*y")], [P("0"), P("1")]]
    assert matrix_det(M) == 1
    inv = matrix_adjugate_inverse(M)
    assert inv == [[P("1"), P("-2*y")], [P("0"), P("1")]]


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_bird_matches_cofactor(ring):
    rng = random.Random(1)
    for n in range(1, 6):
        for _ in range(10):
            M = [[elem(ring, coeff(rng, ring)) for _ in range(n)] for _ in range(n)]
            assert _bird_det(M) == _cofactor_det(M)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_adjugate_identity(ring):
    rng = random.Random(2)
    for n in range(1, 5):
        M = [[poly(rng, ring, XY, 2, 2) for _ in range(n)] for _ in range(n)]
        d = matrix_det(M)
        prod = matrix_mul(M, matrix_adjugate(M))
        for i in range(n):
            for j in range(n):
                assert prod[i][j] == (d if i == j else d * 0)


def test_polynomial_units_over_z4():
    ring = Zmod(4)
    u = P("1 + 2*x", ring)
    assert u * polynomial_unit_inverse(u) == 1
    v = P("3 + 2*x*y + 2*y^3", ring)
    assert v * polynomial_unit_inverse(v) == 1
    with pytest.raises(NotAUnitDeterminant):
        polynomial_unit_inverse(P("1 + x", ring))
    with pytest.raises(NotAUnitDeterminant):
        polynomial_unit_inverse(P("1 + x", QQ))


def test_series_unit_inverse():
    base, tangent = ("x",), ("T",)
    p = Polynomial.parse("2 + x*T + T^2", base + tangent, GF(5))
    s = TruncatedSeries.from_combined(p, 1, 4)
    assert s * series_unit_inverse(s) == 1


def test_not_a_unit_determinant():
    M = [[P("2*x", Zmod(4)), P("0", Zmod(4))], [P("0", Zmod(4)), P("1", Zmod(4))]]
    with pytest.raises(NotAUnitDeterminant):
        matrix_adjugate_inverse(M)
    with pytest.raises(NonSquare):
        matrix_det([[P("1"), P("2")]])

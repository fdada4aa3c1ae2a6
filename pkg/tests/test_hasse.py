import random

import pytest

from polyhasse import (
    GF,
    QQ,
    JacobianMatrix,
    Polynomial,
    PolyMap,
    binom_multi,
    hasse_multi,
    hasse_single,
    jacobian,
    taylor,
    taylor_by_derivatives,
)
from polyhasse import multiindex as mi
from polyhasse.errors import DimensionMismatch

from _gen import RINGS, multiindex, names, poly

XY = ("x", "y")


def P(text, ring=QQ, vars=XY):
    return Polynomial.parse(text, vars, ring)


def test_single_examples():
    assert hasse_single(P("x^3*y"), "x", 2) == P("3*x*y")
    assert hasse_single(P("x^3*y", GF(3)), 0, 2).is_zero()
    assert hasse_single(P("x^4", GF(2)), 0, 4) == 1
    p = P("x^3*y + y^2")
    assert hasse_single(p, 0, 0) == p
    assert hasse_single(p, 1, 1) == P("x^3 + 2*y")


def test_multi_examples():
    assert hasse_multi(P("x^2*y^2"), (1, 1)) == P("4*x*y")
    p = P("x^2*y^2 + 7")
    assert hasse_multi(p, (0, 0)) == p
    assert hasse_multi(P("x^2*y^2", GF(2)), (1, 1)).is_zero()
    with pytest.raises(DimensionMismatch):
        hasse_multi(p, (1,))


def test_taylor_examples():
    assert str(taylor(P("x^2", GF(2), ("x",)), 2)) == "x^2 + T^2"
    assert str(taylor(P("x^2", QQ, ("x",)), 2)) == "x^2 + 2*x*T + T^2"
    c = taylor(P("5", QQ, ("x",)), 3)
    assert c.t_degree() == 0 and c.at_tangent_zero() == 5


def test_jacobian_examples():
    J = jacobian(PolyMap.from_strings(["x + y^2", "y"], XY, QQ))
    assert J == [[P("1"), P("2*y")], [P("0"), P("1")]]
    assert jacobian(PolyMap.from_strings(["x + x^2"], ("x",), GF(2))) == [[Polynomial.constant(GF(2), ("x",), 1)]]
    I = jacobian(PolyMap.identity(QQ, XY))
    assert I == [[P("1"), P("0")], [P("0"), P("1")]]
    assert I.det() == 1 and isinstance(I, JacobianMatrix)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_leibniz(ring):
    rng = random.Random(21)
    vars = names(3)
    for _ in range(20):
        r, s = poly(rng, ring, vars, 5, 4), poly(rng, ring, vars, 5, 4)
        gamma = multiindex(rng, 3, 4)
        rhs = Polynomial.zero(ring, vars)
        for a in mi.graded(3, 0, sum(gamma)):
            if mi.leq(a, gamma):
                rhs = rhs + hasse_multi(r, a) * hasse_multi(s, mi.sub(gamma, a))
        assert hasse_multi(r * s, gamma) == rhs


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_iterativity(ring):
    rng = random.Random(22)
    vars = names(3)
    for _ in range(20):
        r = poly(rng, ring, vars, 5, 4)
        a = multiindex(rng, 3, 3)
        b = multiindex(rng, 3, 5 - sum(a))
        lhs = hasse_multi(hasse_multi(r, b), a)
        rhs = hasse_multi(r, mi.add(a, b)) * binom_multi(mi.add(a, b), a, ring)
        assert lhs == rhs


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_taylor_matches_derivatives(ring):
    rng = random.Random(23)
    vars = names(2)
    for _ in range(20):
        p = poly(rng, ring, vars, 5, 5)
        N = rng.randint(0, 5)
        t = taylor(p, N)
        assert t == taylor_by_derivatives(p, N)
        assert t.at_tangent_zero() == p


def test_single_derivatives_commute():
    rng = random.Random(24)
    vars = names(3)
    for _ in range(100):
        ring = rng.choice(RINGS)
        p = poly(rng, ring, vars, 5, 4)
        i, j = rng.randrange(3), rng.randrange(3)
        n, m = rng.randint(0, 3), rng.randint(0, 3)
        assert hasse_single(hasse_single(p, i, n), j, m) == hasse_single(hasse_single(p, j, m), i, n)


def test_first_order_is_partial_derivative():
    p = P("x^5*y^2 - 3*x*y + 4")
    assert hasse_single(p, 0, 1) == P("5*x^4*y^2 - 3*y")

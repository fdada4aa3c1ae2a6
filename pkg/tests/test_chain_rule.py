import math
import random

import pytest

from polyhasse import (
    GF,
    QQ,
    Polynomial,
    PolyMap,
    chain_lhs,
    chain_rhs,
    fdb_coefficient,
    fdb_terms,
    hasse_multi,
    jacobian,
    substitute,
    taylor,
)
from polyhasse import multiindex as mi
from polyhasse.errors import ArityMismatch, DimensionMismatch, RingMismatch
from polyhasse.linalg import matrix_mul
from polyhasse.polynomial import TruncatedSeries

from _gen import RINGS, names, poly, polymap


def test_worked_instance_over_f2():
    g = Polynomial.parse("y^2 + y", ("y",), GF(2))
    F = PolyMap.from_strings(["x^2"], ("x",), GF(2))
    expected = TruncatedSeries.from_combined(
        Polynomial.parse("x^4 + x^2 + T^2 + T^4", ("x", "T"), GF(2)), 1, 4)
    assert chain_lhs(g, F, 4) == expected
    assert chain_rhs(g, F, 4) == expected


def test_rational_instance():
    g = Polynomial.parse("y^2", ("y",), QQ)
    F = PolyMap.from_strings(["x + x^2"], ("x",), QQ)
    lhs = chain_lhs(g, F, 2)
    x = ("x",)
    assert lhs.coeff_of((0,)) == Polynomial.parse("x^2 + 2*x^3 + x^4", x, QQ)
    assert lhs.coeff_of((1,)) == Polynomial.parse("2*x + 6*x^2 + 4*x^3", x, QQ)
    assert lhs.coeff_of((2,)) == Polynomial.parse("1 + 6*x + 6*x^2", x, QQ)
    assert fdb_coefficient(g, F, (2,)) == Polynomial.parse("1 + 6*x + 6*x^2", x, QQ)
    assert chain_rhs(g, F, 2) == lhs


def test_trivial_cases():
    F = PolyMap.from_strings(["x*y + 1", "x^3"], ("x", "y"), QQ)
    y = Polynomial.parse("y1", ("y1", "y2"), QQ)
    assert chain_lhs(y, F, 3) == taylor(F[0], 3)
    assert fdb_coefficient(y, F, (2, 0)) == hasse_multi(F[0], (2, 0))
    c = Polynomial.constant(QQ, ("y1", "y2"), 7)
    assert chain_rhs(c, F, 3).t_degree() == 0
    g = Polynomial.parse("y1^2*y2", ("y1", "y2"), QQ)
    I = PolyMap.identity(QQ, ("x", "y"))
    assert chain_rhs(g, I, 3) == taylor(g.rename(("x", "y")), 3)


def test_first_order_is_jacobian_chain_rule():
    F = PolyMap.from_strings(["x*y", "x + y^2"], ("x", "y"), QQ)
    g = Polynomial.parse("y1^2 + y1*y2", ("y1", "y2"), QQ)
    for j in range(2):
        lam = mi.unit(2, j)
        expected = sum((substitute(hasse_multi(g, mi.unit(2, i)), F.components) * hasse_multi(F[i], lam)
                        for i in range(2)), Polynomial.zero(QQ, F.vars))
        assert fdb_coefficient(g, F, lam) == expected


def test_errors():
    F = PolyMap.from_strings(["x"], ("x",), QQ)
    with pytest.raises(ArityMismatch):
        chain_lhs(Polynomial.parse("a*b", ("a", "b"), QQ), F, 2)
    with pytest.raises(RingMismatch):
        chain_rhs(Polynomial.parse("a", ("a",), GF(2)), F, 2)
    with pytest.raises(DimensionMismatch):
        fdb_coefficient(Polynomial.parse("a", ("a",), QQ), F, (1, 1))


@pytest.mark.parametrize("nu, l", [((3,), 2), ((2, 1), 2), ((2, 2), 3), ((1, 1, 1), 2), ((4,), 4)])
def test_fdb_terms_invariants(nu, l):
    terms = fdb_terms(nu, l)
    assert terms
    for t in terms:
        assert sum(t.rho) == l
        total = [0] * len(nu)
        for beta, r in zip(t.support, t.rho):
            for k, b in enumerate(beta):
                total[k] += r * b
        assert tuple(total) == nu
        den = math.prod(math.factorial(r) for r in t.rho)
        assert t.multinomial * den == math.factorial(l) and t.multinomial > 0
    assert len({t.rho for t in terms}) == len(terms)


def test_fdb_terms_edge_cases():
    assert fdb_terms((0, 0), 0)[0].multinomial == 1
    assert fdb_terms((0, 0), 1) == []
    assert fdb_terms((2,), 0) == []
    assert fdb_terms((2,), 3) == []


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_lhs_equals_rhs_small(ring):
    rng = random.Random(31)
    for _ in range(8):
        n, m = rng.randint(1, 2), rng.randint(1, 2)
        F = polymap(rng, ring, n, m, 3, 3)
        g = poly(rng, ring, tuple(f"y{i}" for i in range(m)), 3, 3)
        assert chain_lhs(g, F, 3) == chain_rhs(g, F, 3)


def test_jacobian_of_composite():
    rng = random.Random(32)
    for _ in range(100):
        ring = rng.choice(RINGS)
        n, m, k = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 2)
        F = polymap(rng, ring, n, m, 3, 3)
        G = PolyMap([poly(rng, ring, names(m), 3, 3) for _ in range(k)], ring, names(m))
        composite = PolyMap([substitute(g, F.components) for g in G], ring, F.vars)
        JG = [[substitute(e, F.components) for e in row] for row in jacobian(G).rows]
        assert jacobian(composite) == matrix_mul(JG, jacobian(F).rows)

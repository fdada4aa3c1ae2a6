"""Hasse derivatives with respect to the coordinates, the Taylor map x -> x + T, Jacobians."""

from __future__ import annotations

from math import comb

from . import multiindex as mi
from .errors import DimensionMismatch
from .linalg import matrix_adjugate_inverse, matrix_det
from .polynomial import Polynomial, PolyMap, TruncatedSeries, _finish, substitute, tangent_names


def hasse_single(p: Polynomial, i: int, n: int) -> Polynomial:
    """Order-``n`` Hasse derivative in variable ``i``: x^a -> C(a_i, n) x^(a - n e_i)."""
    if isinstance(i, str):
        i = p.vars.index(i)
    if n < 0:
        raise ValueError("order must be >= 0")
    if n == 0:
        return p
    acc = {}
    for exp, c in p.terms.items():
        a = exp[i]
        if a < n:
            continue
        b = comb(a, n)
        new = exp[:i] + (a - n,) + exp[i + 1:]
        acc[new] = c * b
    return p._new(_finish(p.ring, acc))


def hasse_multi(p: Polynomial, alpha) -> Polynomial:
    """theta^(alpha) = theta_1^(alpha_1) o ... o theta_n^(alpha_n)."""
    alpha = tuple(alpha)
    if len(alpha) != p.nvars:
        raise DimensionMismatch(f"{alpha} does not match {p.vars}")
    for i in range(len(alpha) - 1, -1, -1):
        if alpha[i]:
            p = hasse_single(p, i, alpha[i])
    return p


def _taylor_one(p: Polynomial, N: int, tnames) -> TruncatedSeries:
    n = p.nvars
    if tnames is None:
        tnames = tangent_names(n)
    values = []
    for i in range(n):
        key = mi.unit(n, i) + (0,) * n
        tkey = (0,) * n + mi.unit(n, i)
        values.append(TruncatedSeries(p.ring, p.vars, tnames, N, {key: 1, tkey: 1}))
    if not values:
        raise ValueError("taylor needs at least one variable")
    if p.is_zero() or p.is_constant():
        return TruncatedSeries.from_polynomial(p, tnames, N)
    return substitute(p, values)


def taylor(p, N: int, tangent=None):
    """theta_x(p) cut at total T-degree ``N``; componentwise for a :class:`PolyMap`."""
    if N < 0:
        raise ValueError("N must be >= 0")
    if isinstance(p, PolyMap):
        return [_taylor_one(c, N, tangent) for c in p.components]
    return _taylor_one(p, N, tangent)


def taylor_by_derivatives(p: Polynomial, N: int, tangent=None) -> TruncatedSeries:
    """Sum of hasse_multi(p, alpha) T^alpha over |alpha| <= N."""
    n = p.nvars
    if tangent is None:
        tangent = tangent_names(n)
    terms = {}
    for alpha in mi.graded(n, 0, N):
        d = hasse_multi(p, alpha)
        for k, v in d.terms.items():
            terms[k + alpha] = v
    s = TruncatedSeries(p.ring, p.vars, tangent, N)
    s.terms = terms
    return s


class JacobianMatrix:
    """Entry (i, j) is the partial derivative of component i in variable j."""

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, JacobianMatrix):
            other = other.rows
        return self.rows == [list(r) for r in other]

    def det(self):
        return matrix_det(self.rows)

    def inverse(self):
        return matrix_adjugate_inverse(self.rows)

    def at_zero(self):
        return [[e.constant_coeff() for e in row] for row in self.rows]

    def to_strings(self):
        return [[str(e) for e in row] for row in self.rows]

    def __repr__(self):
        return f"JacobianMatrix({self.to_strings()})"


def jacobian(F: PolyMap) -> JacobianMatrix:
    return JacobianMatrix(
        [[hasse_single(f, j, 1) for j in range(len(F.vars))] for f in F.components])

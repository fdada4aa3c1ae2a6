"""Higher derivatives with respect to a new coordinate system f = (f_1, ..., f_n).

For a square polynomial map ``f`` whose Jacobian determinant is a unit, the
derivation theta_f (defined by theta_f(f_i) = f_i + T_i) extends uniquely
to all of A[x].  :func:`dual_derivatives` computes the values
theta_f^(mu)(x_i) grade by grade; :func:`theta_f_apply` then expands any
polynomial in f-coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from . import multiindex as mi
from .errors import BoundExceeded, NonSquare
from .hasse import jacobian, taylor
from .linalg import matrix_adjugate_inverse
from .polynomial import Polynomial, PolyMap, TruncatedSeries, substitute, tangent_names


@dataclass(frozen=True)
class SymPowerMatrix:
    """Rows and columns indexed by ``index`` (all |mu| = m, graded-lex)."""

    m: int
    index: tuple
    entries: list

    def __getitem__(self, lm):
        lam, mu = lm
        return self.entries[self.index.index(tuple(lam))][self.index.index(tuple(mu))]


def sym_power_matrix(J, m: int) -> SymPowerMatrix:
    """c[lam][mu] = coefficient of T^lam in prod_j (sum_l J[j][l] T_l)^mu_j."""
    rows = J.rows if hasattr(J, "rows") else J
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare("symmetric power needs a square matrix")
    if m < 1:
        raise ValueError("m must be >= 1")
    z = rows[0][0] * 0
    one = z + 1
    forms = []
    for j in range(n):
        forms.append({mi.unit(n, l): rows[j][l] for l in range(n) if rows[j][l]})

    memo = {mi.zero(n): {mi.zero(n): one}}

    def product(mu):
        if mu in memo:
            return memo[mu]
        j = next(k for k, a in enumerate(mu) if a)
        prev = product(mu[:j] + (mu[j] - 1,) + mu[j + 1:])
        acc = {}
        for e1, c1 in prev.items():
            for e2, c2 in forms[j].items():
                k = mi.add(e1, e2)
                acc[k] = acc[k] + c1 * c2 if k in acc else c1 * c2
        memo[mu] = acc
        return acc

    index = tuple(mi.enumerate_multiindices(n, m))
    cols = [product(mu) for mu in index]
    entries = [[col.get(lam, z) for col in cols] for lam in index]
    return SymPowerMatrix(m, index, entries)


def sym_power_det_exponent(n: int, m: int) -> int:
    """det S_m(phi) = det(phi) ** sym_power_det_exponent(n, m)."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    return comb(n + m - 1, n)


@dataclass(frozen=True)
class DerivativeTable:
    """theta_f^(mu)(x_i) for every component i and 0 < |mu| <= bound."""

    f: PolyMap
    bound: int
    entries: dict = field(repr=False)

    def __getitem__(self, key):
        i, mu = key
        mu = tuple(mu)
        if sum(mu) > self.bound:
            raise BoundExceeded(f"|{mu}| exceeds table bound {self.bound}")
        if not any(mu):
            return Polynomial.variable(self.f.ring, self.f.vars, i)
        return self.entries[i, mu]

    def at_zero(self) -> dict:
        return {k: v.constant_coeff() for k, v in self.entries.items()}

    def change_ring(self, ring) -> DerivativeTable:
        return DerivativeTable(
            self.f.change_ring(ring), self.bound,
            {k: v.change_ring(ring) for k, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, DerivativeTable):
            return NotImplemented
        return (self.f, self.bound, self.entries) == (other.f, other.bound, other.entries)


def _shift_powers(f: PolyMap, M: int, tangent):
    """Coefficient tables of prod_j (theta_x(f_j) - f_j)^nu_j for 0 < |nu| < M."""
    n = len(f.vars)
    shifts = [t - TruncatedSeries.from_polynomial(c, tangent, M)
              for t, c in zip(taylor(f, M, tangent), f.components)]
    powers = {}
    coeffs = {}
    for nu in mi.graded(n, 1, M - 1):
        j = next(k for k, a in enumerate(nu) if a)
        parent = nu[:j] + (nu[j] - 1,) + nu[j + 1:]
        powers[nu] = shifts[j] if not any(parent) else powers[parent] * shifts[j]
        coeffs[nu] = powers[nu].coefficients()
    return coeffs


def dual_derivatives(f: PolyMap, M: int) -> DerivativeTable:
    """Solve for theta_f^(mu)(x_i), 0 < |mu| <= M, one grade at a time.

    Grade 1 is the inverse Jacobian.  At grade m the unknowns satisfy
    C v = -r where C is the m-th symmetric power of the Jacobian and r
    collects lower-grade values against the shift powers.  C is inverted as
    the symmetric power of the inverse Jacobian, which is exact over any
    commutative ring once det J is a unit.
    """
    if not f.is_square:
        raise NonSquare(f"map has {len(f)} components in {len(f.vars)} variables")
    if M < 1:
        return DerivativeTable(f, M, {})
    n = len(f.vars)
    J = jacobian(f).rows
    Jinv = matrix_adjugate_inverse(J)
    entries = {}
    for i in range(n):
        for j in range(n):
            entries[i, mi.unit(n, j)] = Jinv[i][j]
    if M == 1:
        return DerivativeTable(f, M, entries)

    tangent = tangent_names(n)
    Q = _shift_powers(f, M, tangent)
    zero = Polynomial.zero(f.ring, f.vars)
    for m in range(2, M + 1):
        Cinv = sym_power_matrix(Jinv, m)
        index = Cinv.index
        lower = mi.graded(n, 1, m - 1)
        for i in range(n):
            r = []
            for lam in index:
                acc = zero
                for nu in lower:
                    q = Q[nu].get(lam)
                    if q is not None:
                        v = entries[i, nu]
                        if v:
                            acc = acc + v * q
                r.append(acc)
            for row, mu in zip(Cinv.entries, index):
                acc = zero
                for c, rv in zip(row, r):
                    if c and rv:
                        acc = acc + c * rv
                entries[i, mu] = -acc
    return DerivativeTable(f, M, entries)


def theta_f_apply(table: DerivativeTable, h: Polynomial, M: int) -> TruncatedSeries:
    """theta_f(h) cut at T-degree M: theta_x(h) with T_i -> theta_f(x_i) - x_i."""
    if M > table.bound:
        raise BoundExceeded(f"bound {M} exceeds table bound {table.bound}")
    f = table.f
    n = len(f.vars)
    tangent = tangent_names(n)
    expanded = taylor(h, M, tangent)
    values = [TruncatedSeries.from_polynomial(Polynomial.variable(f.ring, f.vars, k), tangent, M)
              for k in range(n)]
    for i in range(n):
        terms = {}
        for nu in mi.graded(n, 1, M):
            for k, v in table[i, nu].terms.items():
                terms[k + nu] = v
        s = TruncatedSeries(f.ring, f.vars, tangent, M)
        s.terms = terms
        values.append(s)
    return substitute(expanded, values)

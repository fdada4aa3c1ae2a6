"""Division-free matrix algebra over commutative rings.

Matrices are lists of rows.  Entries may be :class:`RingElement`,
:class:`Polynomial` or :class:`TruncatedSeries`; only ``+``, ``-`` and ``*``
are used, so determinants and adjugates are exact over any commutative ring,
including rings with zero divisors such as Z/4.
"""

from __future__ import annotations

from .errors import NonSquare, NotAUnit, NotAUnitDeterminant
from .polynomial import Polynomial, TruncatedSeries
from .rings import RingElement

# Laplace expansion is cheaper than Bird's algorithm up to this size.
_COFACTOR_MAX = 4


def _zero(e):
    return e * 0


def _check_square(M):
    n = len(M)
    if any(len(row) != n for row in M):
        raise NonSquare(f"matrix is not square ({n} rows)")
    return n


def matrix_mul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    if A and len(A[0]) != k:
        raise ValueError("shape mismatch")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                a, b = A[i][t], B[t][j]
                if not a or not b:
                    continue
                acc = a * b if acc is None else acc + a * b
            row.append(acc if acc is not None else _zero(A[i][0]))
        out.append(row)
    return out


def transpose(M):
    return [list(col) for col in zip(*M)]


def identity_like(M):
    n = len(M)
    z = _zero(M[0][0])
    one = z + 1
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def _cofactor_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    acc = _zero(M[0][0])
    for j in range(n):
        a = M[0][j]
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = a * _cofactor_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _bird_det(A):
    """Bird's division-free determinant, O(n^4) ring operations."""
    n = len(A)
    z = _zero(A[0][0])
    X = A
    for _ in range(n - 1):
        mu = [[z] * n for _ in range(n)]
        s = z
        for i in range(n - 1, -1, -1):
            mu[i][i] = -s
            s = s + X[i][i]
            for j in range(i + 1, n):
                mu[i][j] = X[i][j]
        X = matrix_mul(mu, A)
    return X[0][0] if n % 2 == 1 else -X[0][0]


def matrix_det(M):
    n = _check_square(M)
    if n == 0:
        raise NonSquare("empty matrix")
    if n <= _COFACTOR_MAX:
        return _cofactor_det(M)
    return _bird_det(M)


def matrix_adjugate(M):
    n = _check_square(M)
    if n == 1:
        return [[_zero(M[0][0]) + 1]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            d = matrix_det(minor)
            adj[j][i] = d if (i + j) % 2 == 0 else -d
    return adj


def _nilradical(m: int) -> int:
    rad, k = 1, 2
    while k * k <= m:
        if m % k == 0:
            rad *= k
            while m % k == 0:
                m //= k
        k += 1
    if m > 1:
        rad *= m
    return rad


def polynomial_unit_inverse(p: Polynomial) -> Polynomial:
    """Inverse of a unit of A[x]: a unit constant plus a nilpotent part."""
    ring = p.ring
    c0 = p.constant_coeff()
    if not c0.is_unit():
        raise NotAUnitDeterminant(f"{p} is not a unit")
    nil = p - c0
    if nil:
        rad = _nilradical(ring.modulus) if ring.modulus else 0
        if not rad or any(v % rad for v in nil.terms.values()):
            raise NotAUnitDeterminant(f"{p} is not a unit")
    u_inv = ring.inverse(c0.raw)
    # (c0 + nil)^-1 = c0^-1 * sum_k (-c0^-1 nil)^k, a finite sum
    step = nil.scale(-u_inv)
    acc = p.one_like()
    power = p.one_like()
    while True:
        power = power * step
        if not power:
            break
        acc = acc + power
    return acc.scale(u_inv)


def series_unit_inverse(s: TruncatedSeries) -> TruncatedSeries:
    """Inverse in the truncated series ring via a finite geometric series."""
    u = s.at_tangent_zero()
    u_inv = TruncatedSeries.from_polynomial(polynomial_unit_inverse(u), s.tangent_vars, s.bound)
    corr = s.one_like() - s * u_inv  # positive T-degree, so corr^(bound+1) == 0
    acc = s.one_like()
    power = s.one_like()
    for _ in range(s.bound):
        power = power * corr
        if not power:
            break
        acc = acc + power
    return u_inv * acc


def unit_inverse(d):
    if isinstance(d, RingElement):
        try:
            return RingElement(d.ring, d.ring.inverse(d.raw))
        except NotAUnit as exc:
            raise NotAUnitDeterminant(str(exc)) from None
    if isinstance(d, TruncatedSeries):
        return series_unit_inverse(d)
    if isinstance(d, Polynomial):
        return polynomial_unit_inverse(d)
    raise TypeError(f"unsupported entry type {type(d).__name__}")


def matrix_adjugate_inverse(M):
    """``adj(M) * det(M)^-1``; raises :class:`NotAUnitDeterminant` unless det is a unit."""
    d_inv = unit_inverse(matrix_det(M))
    return [[a * d_inv for a in row] for row in matrix_adjugate(M)]


def matrix_equal(A, B) -> bool:
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))

"""Inversion of polynomial automorphisms.

A square map F is split as ``F = c + L * core`` with ``core(0) = 0`` and
identity linear part.  The inverse of the core is read off the coefficient
recursion

    alpha[i, lam] = - sum_{0 < |nu| < |lam|} alpha[i, nu] * [x^lam] core^nu

up to the degree bound N = deg(core)^(n-1), and the candidate is always
verified by composing in both orders.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import multiindex as mi
from .coord_change import dual_derivatives, theta_f_apply
from .errors import (
    BoundInconclusive,
    NonSquare,
    NotAnAutomorphism,
    NotAUnitDeterminant,
    SingularLinearPart,
)
from .hasse import jacobian
from .linalg import matrix_adjugate_inverse
from .polynomial import NEG_INF, Polynomial, PolyMap, compose_map, substitute
from .rings import RingElement, RingSpec


@dataclass(frozen=True)
class NormalizedMap:
    translation: tuple
    linear: list
    linear_inverse: list
    core: PolyMap

    def reassemble(self) -> PolyMap:
        core = self.core
        n = len(core)
        out = []
        for i in range(n):
            acc = Polynomial.constant(core.ring, core.vars, self.translation[i])
            for j in range(n):
                if self.linear[i][j]:
                    acc = acc + core[j] * self.linear[i][j]
            out.append(acc)
        return PolyMap(out, core.ring, core.vars)

    def affine_inverse(self) -> PolyMap:
        """x -> L^-1 (x - c)."""
        ring, vars = self.core.ring, self.core.vars
        n = len(vars)
        shifted = [Polynomial.variable(ring, vars, j) - self.translation[j] for j in range(n)]
        out = []
        for i in range(n):
            acc = Polynomial.zero(ring, vars)
            for j in range(n):
                if self.linear_inverse[i][j]:
                    acc = acc + shifted[j] * self.linear_inverse[i][j]
            out.append(acc)
        return PolyMap(out, ring, vars)

    @property
    def is_trivial_affine(self) -> bool:
        n = len(self.translation)
        return (not any(self.translation) and all(
            self.linear[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)))


def normalize(F: PolyMap) -> NormalizedMap:
    if not F.is_square:
        raise NonSquare(f"map has {len(F)} components in {len(F.vars)} variables")
    n = len(F)
    c = tuple(f.constant_coeff() for f in F.components)
    L = jacobian(F).at_zero()
    try:
        Linv = matrix_adjugate_inverse(L)
    except NotAUnitDeterminant as exc:
        raise SingularLinearPart(f"linear part is not invertible over {F.ring}: {exc}") from None
    shifted = [f - ci for f, ci in zip(F.components, c)]
    core = []
    for i in range(n):
        acc = Polynomial.zero(F.ring, F.vars)
        for j in range(n):
            if Linv[i][j]:
                acc = acc + shifted[j] * Linv[i][j]
        core.append(acc)
    return NormalizedMap(c, L, Linv, PolyMap(core, F.ring, F.vars))


@dataclass(frozen=True)
class InverseCoefficients:
    """alpha[i, lam] for 0 < |lam| <= bound; missing keys are zero."""

    ring: RingSpec
    n: int
    bound: int
    coefficients: dict = field(repr=False)

    def __getitem__(self, key) -> RingElement:
        i, lam = key
        lam = tuple(lam)
        if not 0 < sum(lam) <= self.bound:
            raise KeyError(key)
        return RingElement(self.ring, self.coefficients.get((i, lam), 0))

    def to_polymap(self, vars) -> PolyMap:
        comps = []
        for i in range(self.n):
            terms = {lam: v for (k, lam), v in self.coefficients.items() if k == i}
            comps.append(Polynomial(self.ring, vars, terms))
        return PolyMap(comps, self.ring, vars)


# -- graded kernel ----------------------------------------------------------
# Polynomials of total degree <= N are kept as lists of buckets by degree,
# each bucket mapping a packed exponent (base N+1 digits) to a raw value.
# Two exponents whose degrees sum to at most N add digitwise without carry.


def _packer(n: int, N: int):
    base = N + 1
    weights = [base ** k for k in range(n)]

    def pack(exp):
        return sum(e * w for e, w in zip(exp, weights))

    return pack


def _graded(p: Polynomial, N: int, pack):
    buckets = [dict() for _ in range(N + 1)]
    for exp, c in p.terms.items():
        d = sum(exp)
        if d <= N:
            buckets[d][pack(exp)] = c
    return buckets


def _graded_mul(a, b, N, reduce):
    out = [dict() for _ in range(N + 1)]
    b_nonempty = [(db, Bb) for db, Bb in enumerate(b) if Bb]
    for da, Ba in enumerate(a):
        if not Ba:
            continue
        for db, Bb in b_nonempty:
            d = da + db
            if d > N:
                break
            target = out[d]
            get = target.get
            for ka, ca in Ba.items():
                for kb, cb in Bb.items():
                    k = ka + kb
                    target[k] = get(k, 0) + ca * cb
    for bucket in out:
        for k in list(bucket):
            v = reduce(bucket[k])
            if v:
                bucket[k] = v
            else:
                del bucket[k]
    return out


def invert_core(core: PolyMap, N: int) -> InverseCoefficients:
    """Coefficients of the inverse of a normalized map up to total degree N."""
    n = len(core)
    ring = core.ring
    reduce = ring.reduce
    coeffs = {}
    for i in range(n):
        coeffs[i, mi.unit(n, i)] = 1
    if N < 2:
        return InverseCoefficients(ring, n, max(N, 1), coeffs)

    pack = _packer(n, N)
    fs = [_graded(f, N, pack) for f in core.components]
    # acc[i] = sum over processed nu of alpha[i, nu] * core^nu
    acc = [[dict(bucket) for bucket in fs[i]] for i in range(n)]
    prev = {mi.unit(n, j): fs[j] for j in range(n)}
    for l in range(2, N + 1):
        lams = mi.enumerate_multiindices(n, l)
        packed = [pack(lam) for lam in lams]
        for i in range(n):
            bucket = acc[i][l]
            for lam, key in zip(lams, packed):
                v = reduce(-bucket.get(key, 0))
                if v:
                    coeffs[i, lam] = v
        if l == N:
            break
        cur = {}
        for nu in lams:
            j = next(k for k, a in enumerate(nu) if a)
            parent = nu[:j] + (nu[j] - 1,) + nu[j + 1:]
            cur[nu] = _graded_mul(prev[parent], fs[j], N, reduce)
        prev = cur
        for i in range(n):
            target = acc[i]
            for nu, power in cur.items():
                a = coeffs.get((i, nu))
                if not a:
                    continue
                for d in range(l + 1, N + 1):
                    tb = target[d]
                    get = tb.get
                    for k, c in power[d].items():
                        tb[k] = get(k, 0) + a * c
            for d in range(l + 1, N + 1):
                tb = target[d]
                for k in list(tb):
                    tb[k] = reduce(tb[k])
    return InverseCoefficients(ring, n, N, coeffs)


def degree_bound(core: PolyMap) -> int:
    d = core.degree()
    if d == NEG_INF or d <= 1:
        return 1
    return d ** (len(core) - 1)


@dataclass(frozen=True)
class Inversion:
    inverse: PolyMap
    degree_bound: int
    normalized: NormalizedMap
    coefficients: InverseCoefficients


def _check_identity(composed: PolyMap, side: str, ring: RingSpec, bound: int):
    for i, c in enumerate(composed.components):
        if c != Polynomial.variable(ring, composed.vars, i):
            if ring.is_field:
                raise NotAnAutomorphism(i, c, side)
            raise BoundInconclusive(
                i, c, side,
                f"verification failed at degree bound {bound} over {ring}: component "
                f"{i + 1} of {side} is {c}; the bound is only guaranteed over fields, "
                f"retry formal_inverse with a larger order")


def _unnormalize(Gt: PolyMap, nm: NormalizedMap) -> PolyMap:
    if nm.is_trivial_affine:
        return Gt
    return compose_map(Gt, nm.affine_inverse())


def invert_detailed(F: PolyMap) -> Inversion:
    nm = normalize(F)
    N = degree_bound(nm.core)
    coeffs = invert_core(nm.core, N)
    G = _unnormalize(coeffs.to_polymap(F.vars), nm)
    _check_identity(compose_map(G, F), "G o F", F.ring, N)
    _check_identity(compose_map(F, G), "F o G", F.ring, N)
    return Inversion(G, N, nm, coeffs)


def invert(F: PolyMap) -> PolyMap:
    """The verified polynomial inverse of ``F``.

    Raises :class:`NotAnAutomorphism` when the degree-bounded candidate does
    not compose to the identity (:class:`BoundInconclusive` over non-fields).
    """
    return invert_detailed(F).inverse


def is_automorphism(F: PolyMap) -> bool:
    try:
        invert_detailed(F)
    except NotAnAutomorphism:
        return False
    return True


def formal_inverse(F: PolyMap, M: int) -> PolyMap:
    """Power-series inverse of F up to total degree M (no automorphism check)."""
    nm = normalize(F)
    coeffs = invert_core(nm.core, M)
    G = _unnormalize(coeffs.to_polymap(F.vars), nm)
    check = compose_map(G, F, degree_bound=M)
    for i, c in enumerate(check.components):
        if c != Polynomial.variable(F.ring, F.vars, i):
            raise RuntimeError(f"formal inverse check failed in component {i + 1}: {c}")
    return G


def ns_inverse_apply(F: PolyMap, h: Polynomial, M: int) -> Polynomial:
    """h o F^-1 up to total degree M, as sum_alpha theta_f^(alpha)(h) (x - f)^alpha.

    Evaluated for the normalized core, where x - f starts in degree 2, so
    only |alpha| <= M // 2 contributes; the affine part is applied last.
    """
    nm = normalize(F)
    core = nm.core
    vars = F.vars
    K = max(M // 2, 1)
    table = dual_derivatives(core, K)
    expanded = theta_f_apply(table, h, K)
    gaps = [Polynomial.variable(F.ring, vars, i) - f for i, f in enumerate(core.components)]
    total = Polynomial.zero(F.ring, vars)
    for alpha, coeff in expanded.coefficients().items():
        if 2 * sum(alpha) > M:
            continue
        term = coeff.truncate(M)
        for g, a in zip(gaps, alpha):
            for _ in range(a):
                term = term.mul(g, M)
        total = total + term
    if nm.is_trivial_affine:
        return total
    return substitute(total, nm.affine_inverse().components)

"""Characteristic-free chain rule for higher derivations.

Three routes to the Taylor expansion of ``g o F``:

* :func:`chain_lhs` composes first and then expands,
* :func:`chain_rhs` expands ``g`` at ``y + T``, substitutes ``y -> F`` and
  then ``T -> theta_x(F) - F``,
* :func:`fdb_coefficient` evaluates the closed-form Faa di Bruno style sum
  for one coefficient, with integer multinomials reduced into the ring only
  at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import multiindex as mi
from .errors import ArityMismatch, DimensionMismatch, RingMismatch
from .hasse import hasse_multi, taylor
from .polynomial import Polynomial, PolyMap, TruncatedSeries, substitute, tangent_names


def _check(g: Polynomial, F: PolyMap):
    if g.ring != F.ring:
        raise RingMismatch(f"{g.ring} vs {F.ring}")
    if g.nvars != len(F):
        raise ArityMismatch(f"g has {g.nvars} variables, F has {len(F)} components")


def chain_lhs(g: Polynomial, F: PolyMap, N: int, tangent=None) -> TruncatedSeries:
    """theta_x(g o F) cut at T-degree N."""
    _check(g, F)
    composed = substitute(g, F.components)
    return taylor(composed, N, tangent)


def chain_rhs(g: Polynomial, F: PolyMap, N: int, tangent=None) -> TruncatedSeries:
    """(theta_y(g)|_{y=F})|_{T = theta_x(F) - F} cut at T-degree N."""
    _check(g, F)
    n = len(F.vars)
    if tangent is None:
        tangent = tangent_names(n)
    expanded = taylor(g, N, tangent_names(g.nvars, "U"))
    base = [TruncatedSeries.from_polynomial(f, tangent, N) for f in F.components]
    shifts = [t - b for t, b in zip(taylor(F, N, tangent), base)]
    return substitute(expanded, base + shifts)


@dataclass(frozen=True)
class FdBTerm:
    """One partition rho of nu into ``l`` parts drawn from {beta : 0 < beta <= nu}."""

    nu: tuple
    l: int
    support: tuple
    rho: tuple
    multinomial: int


def fdb_terms(nu, l: int) -> list[FdBTerm]:
    """All (rho_beta) with sum rho_beta = l and sum rho_beta * beta = nu.

    Depth-first over the support in graded-lex order, pruning on the
    remaining part count and remaining vector.
    """
    nu = tuple(nu)
    if not any(nu):
        if l == 0:
            return [FdBTerm(nu, 0, (), (), 1)]
        return []
    if l == 0:
        return []
    support = tuple(mi.below(nu))
    out = []
    rho = [0] * len(support)

    def dfs(k, count_left, vec_left):
        if count_left == 0:
            if not any(vec_left):
                used = tuple(r for r in rho)
                den = 1
                for r in used:
                    den *= math.factorial(r)
                num = math.factorial(l)
                assert num % den == 0, "multinomial must be integral"
                out.append(FdBTerm(nu, l, support, used, num // den))
            return
        if k == len(support) or sum(vec_left) < count_left:
            return
        beta = support[k]
        top = count_left
        for a, b in zip(vec_left, beta):
            if b:
                top = min(top, a // b)
        for r in range(top, -1, -1):
            rho[k] = r
            rest = tuple(a - r * b for a, b in zip(vec_left, beta))
            dfs(k + 1, count_left - r, rest)
        rho[k] = 0

    dfs(0, l, nu)
    return out


def _splits(lam, m):
    """All (nu_1, ..., nu_m) of multi-indices summing to ``lam``."""
    if m == 1:
        yield (tuple(lam),)
        return
    boxes = [()]
    for a in lam:
        boxes = [b + (k,) for b in boxes for k in range(a + 1)]
    for first in boxes:
        rest = tuple(a - b for a, b in zip(lam, first))
        for tail in _splits(rest, m - 1):
            yield (first,) + tail


def fdb_coefficient(g: Polynomial, F: PolyMap, lam) -> Polynomial:
    """Coefficient of T^lam in theta_x(g o F) from the closed-form sum."""
    _check(g, F)
    n = len(F.vars)
    lam = tuple(lam)
    if len(lam) != n:
        raise DimensionMismatch(f"{lam} does not have dimension {n}")
    if not any(lam):
        raise ValueError("lam must be nonzero")
    ring, xvars = F.ring, F.vars
    one = Polynomial.constant(ring, xvars, 1)
    zero = Polynomial.zero(ring, xvars)
    L = sum(lam)

    derivs = {}

    def deriv(j, beta):
        if (j, beta) not in derivs:
            derivs[j, beta] = hasse_multi(F.components[j], beta)
        return derivs[j, beta]

    pcache = {}

    def P(j, nu, l):
        key = (j, nu, l)
        if key in pcache:
            return pcache[key]
        acc = zero
        for term in fdb_terms(nu, l):
            prod = one
            for beta, r in zip(term.support, term.rho):
                if r:
                    prod = prod * deriv(j, beta) ** r
            acc = acc + prod.scale(term.multinomial)
        pcache[key] = acc
        return acc

    total = zero
    m = len(F)
    for mu in mi.graded(m, 1, L):
        gmu = hasse_multi(g, mu)
        if gmu.is_zero():
            continue
        inner = zero
        for split in _splits(lam, m):
            prod = one
            for j in range(m):
                factor = P(j, split[j], mu[j])
                if factor.is_zero():
                    prod = zero
                    break
                prod = prod * factor
            if prod:
                inner = inner + prod
        if inner:
            total = total + substitute(gmu, F.components) * inner
    return total

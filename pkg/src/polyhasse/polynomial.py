"""Sparse multivariate polynomials, truncated tangent series and polynomial maps.

Terms are stored as ``{exponent tuple: raw coefficient}`` with zero
coefficients never stored, so structural equality is mathematical equality.
"""

from __future__ import annotations

from numbers import Rational
from operator import add as _add

from . import multiindex as mi
from .errors import (
    ArityMismatch,
    BoundExceeded,
    DimensionMismatch,
    MissingAssignment,
    RingMismatch,
    UnknownVariable,
    VariableMismatch,
)
from .rings import RingElement, RingSpec

NEG_INF = float("-inf")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Rational, RingElement)) and not isinstance(x, bool)


def _finish(ring: RingSpec, acc: dict) -> dict:
    red = ring.reduce
    out = {}
    for k, v in acc.items():
        v = red(v)
        if v:
            out[k] = v
    return out


class _Sparse:
    """Shared arithmetic; subclasses decide which products survive truncation."""

    __slots__ = ("ring", "vars", "terms")

    def __init__(self, ring: RingSpec, vars, terms=None):
        self.ring = ring
        self.vars = tuple(vars)
        n = len(self.vars)
        if terms:
            canon = ring.canon
            acc = {}
            for exp, c in terms.items():
                exp = mi.check_index(exp, n)
                if not self._admissible(exp):
                    continue
                acc[exp] = acc.get(exp, 0) + canon(c)
            self.terms = _finish(ring, acc)
        else:
            self.terms = {}

    # hooks --------------------------------------------------------------

    def _admissible(self, exp) -> bool:
        return True

    def _new(self, terms: dict):
        raise NotImplementedError

    def _check_compatible(self, other):
        raise NotImplementedError

    # basic queries ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp) -> RingElement:
        return RingElement(self.ring, self.terms.get(tuple(exp), 0))

    def constant_coeff(self) -> RingElement:
        return self.coeff(mi.zero(self.nvars))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def zero_like(self):
        return self._new({})

    def one_like(self):
        return self._new({mi.zero(self.nvars): 1})

    def scalar_like(self, c):
        v = self.ring.canon(c)
        return self._new({mi.zero(self.nvars): v} if v else {})

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    # arithmetic ---------------------------------------------------------

    def _operand(self, other):
        if isinstance(other, _Sparse):
            self._check_compatible(other)
            return other
        if _is_scalar(other):
            if isinstance(other, RingElement) and other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return self.scalar_like(other)
        return NotImplemented

    def __add__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return self._new(_finish(self.ring, acc))

    __radd__ = __add__

    def __neg__(self):
        return self._new(_finish(self.ring, {k: -v for k, v in self.terms.items()}))

    def __sub__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        c = self.ring.canon(c)
        return self._new(_finish(self.ring, {k: v * c for k, v in self.terms.items()}))

    def _mul_terms(self, a: dict, b: dict) -> dict:
        acc = {}
        get = acc.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                k = tuple(map(_add, ea, eb))
                acc[k] = get(k, 0) + ca * cb
        return acc

    def __mul__(self, other):
        if _is_scalar(other):
            if isinstance(other, RingElement) and other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return self.scale(other)
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return self._new(_finish(self.ring, self._mul_terms(self.terms, other.terms)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        result = self.one_like()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, _Sparse):
            return type(self) is type(other) and self._key() == other._key()
        if _is_scalar(other):
            try:
                return self == self.scalar_like(other)
            except (ArithmeticError, ValueError):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self._key()[:-1], frozenset(self.terms.items())))

    def _key(self):
        return (type(self), self.ring, self.vars, self.terms)

    def change_ring(self, ring: RingSpec):
        """Image under the canonical homomorphism ``self.ring -> ring``."""
        co = ring.coerce
        src = self.ring
        acc = {k: co(v, src) for k, v in self.terms.items()}
        out = self._new({})
        out.ring = ring
        out.terms = _finish(ring, acc)
        return out


class Polynomial(_Sparse):
    __slots__ = ()

    def _new(self, terms):
        p = Polynomial.__new__(Polynomial)
        p.ring, p.vars, p.terms = self.ring, self.vars, terms
        return p

    def _check_compatible(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if other.vars != self.vars:
            raise VariableMismatch(f"{self.vars} vs {other.vars}")

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring, vars):
        return cls(ring, vars)

    @classmethod
    def constant(cls, ring, vars, c):
        return cls(ring, vars, {mi.zero(len(tuple(vars))): c})

    @classmethod
    def monomial(cls, ring, vars, exp, c=1):
        return cls(ring, vars, {tuple(exp): c})

    @classmethod
    def variable(cls, ring, vars, name):
        vars = tuple(vars)
        if isinstance(name, int):
            idx = name
        else:
            if name not in vars:
                raise UnknownVariable(f"{name!r} not in {vars}")
            idx = vars.index(name)
        return cls(ring, vars, {mi.unit(len(vars), idx): 1})

    @classmethod
    def parse(cls, text, vars, ring):
        from .text import parse_poly

        return parse_poly(text, vars, ring)

    # queries ------------------------------------------------------------

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def homogeneous(self, m: int) -> Polynomial:
        return self._new({k: v for k, v in self.terms.items() if sum(k) == m})

    def truncate(self, degree: int) -> Polynomial:
        return self._new({k: v for k, v in self.terms.items() if sum(k) <= degree})

    def mul(self, other: Polynomial, degree_bound: int | None = None) -> Polynomial:
        """Product, dropping terms of total degree above ``degree_bound``."""
        if degree_bound is None:
            return self * other
        self._check_compatible(other)
        a = {k: (v, sum(k)) for k, v in self.terms.items() if sum(k) <= degree_bound}
        b = sorted(((k, v, sum(k)) for k, v in other.terms.items()), key=lambda t: t[2])
        acc = {}
        get = acc.get
        for ea, (ca, da) in a.items():
            room = degree_bound - da
            for eb, cb, db in b:
                if db > room:
                    break
                k = tuple(map(_add, ea, eb))
                acc[k] = get(k, 0) + ca * cb
        return self._new(_finish(self.ring, acc))

    def embed(self, vars) -> Polynomial:
        """Same polynomial viewed over a larger (or reordered) variable list."""
        vars = tuple(vars)
        pos = []
        for name in self.vars:
            if name not in vars:
                raise VariableMismatch(f"{name!r} missing from {vars}")
            pos.append(vars.index(name))
        n = len(vars)
        out = {}
        for k, v in self.terms.items():
            e = [0] * n
            for p, a in zip(pos, k):
                e[p] = a
            out[tuple(e)] = v
        p = Polynomial.__new__(Polynomial)
        p.ring, p.vars, p.terms = self.ring, vars, out
        return p

    def rename(self, vars) -> Polynomial:
        vars = tuple(vars)
        if len(vars) != len(self.vars):
            raise VariableMismatch("rename needs the same number of variables")
        p = Polynomial.__new__(Polynomial)
        p.ring, p.vars, p.terms = self.ring, vars, self.terms
        return p

    def __call__(self, *values, degree_bound=None):
        return substitute(self, list(values), degree_bound)

    def __str__(self):
        from .text import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={list(self.vars)}, ring={self.ring})"


class TruncatedSeries(_Sparse):
    """Polynomial in base variables x and tangent variables T, cut at T-degree ``bound``.

    Keys are flat tuples ``x-exponents + T-exponents``.
    """

    __slots__ = ("nbase", "bound")

    def __init__(self, ring, base_vars, tangent_vars, bound: int, terms=None):
        if bound < 0:
            raise ValueError("bound must be >= 0")
        self.nbase = len(tuple(base_vars))
        self.bound = bound
        super().__init__(ring, tuple(base_vars) + tuple(tangent_vars), terms)

    def _admissible(self, exp):
        return sum(exp[self.nbase:]) <= self.bound

    def _new(self, terms):
        s = TruncatedSeries.__new__(TruncatedSeries)
        s.ring, s.vars, s.terms, s.nbase, s.bound = (
            self.ring, self.vars, terms, self.nbase, self.bound)
        return s

    def _check_compatible(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"cannot combine TruncatedSeries with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if other.vars != self.vars or other.nbase != self.nbase:
            raise VariableMismatch(f"{self.vars} vs {other.vars}")
        if other.bound != self.bound:
            raise BoundExceeded(f"series bounds differ: {self.bound} vs {other.bound}")

    def _key(self):
        return (type(self), self.ring, self.vars, self.nbase, self.bound, self.terms)

    @property
    def base_vars(self):
        return self.vars[:self.nbase]

    @property
    def tangent_vars(self):
        return self.vars[self.nbase:]

    @classmethod
    def from_polynomial(cls, p: Polynomial, tangent_vars, bound: int) -> TruncatedSeries:
        d = len(tuple(tangent_vars))
        s = cls(p.ring, p.vars, tangent_vars, bound)
        pad = (0,) * d
        s.terms = {k + pad: v for k, v in p.terms.items()}
        return s

    @classmethod
    def from_combined(cls, p: Polynomial, nbase: int, bound: int) -> TruncatedSeries:
        """Read a polynomial over ``base + tangent`` variables as a series."""
        s = cls(p.ring, p.vars[:nbase], p.vars[nbase:], bound)
        s.terms = {k: v for k, v in p.terms.items() if sum(k[nbase:]) <= bound}
        return s

    def _mul_terms(self, a, b):
        nb, bound = self.nbase, self.bound
        bl = sorted(((k, v, sum(k[nb:])) for k, v in b.items()), key=lambda t: t[2])
        acc = {}
        get = acc.get
        for ea, ca in a.items():
            room = bound - sum(ea[nb:])
            for eb, cb, db in bl:
                if db > room:
                    break
                k = tuple(map(_add, ea, eb))
                acc[k] = get(k, 0) + ca * cb
        return acc

    def t_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(k[self.nbase:]) for k in self.terms)

    def truncate(self, bound: int) -> TruncatedSeries:
        if bound > self.bound:
            raise BoundExceeded(f"cannot raise precision from {self.bound} to {bound}")
        s = self._new({k: v for k, v in self.terms.items() if sum(k[self.nbase:]) <= bound})
        s.bound = bound
        return s

    def coefficients(self) -> dict:
        """``{T-exponent: Polynomial in the base variables}``."""
        nb = self.nbase
        groups: dict = {}
        for k, v in self.terms.items():
            groups.setdefault(k[nb:], {})[k[:nb]] = v
        out = {}
        for t, terms in groups.items():
            p = Polynomial.__new__(Polynomial)
            p.ring, p.vars, p.terms = self.ring, self.base_vars, terms
            out[t] = p
        return out

    def coeff_of(self, lam) -> Polynomial:
        lam = tuple(lam)
        if len(lam) != len(self.vars) - self.nbase:
            raise DimensionMismatch(f"{lam} does not match tangent block {self.tangent_vars}")
        nb = self.nbase
        terms = {k[:nb]: v for k, v in self.terms.items() if k[nb:] == lam}
        p = Polynomial.__new__(Polynomial)
        p.ring, p.vars, p.terms = self.ring, self.base_vars, terms
        return p

    def at_tangent_zero(self) -> Polynomial:
        return self.coeff_of(mi.zero(len(self.vars) - self.nbase))

    def as_polynomial(self) -> Polynomial:
        p = Polynomial.__new__(Polynomial)
        p.ring, p.vars, p.terms = self.ring, self.vars, dict(self.terms)
        return p

    def __str__(self):
        return str(self.as_polynomial())

    def __repr__(self):
        return (f"TruncatedSeries({str(self)!r}, base={list(self.base_vars)}, "
                f"tangent={list(self.tangent_vars)}, bound={self.bound}, ring={self.ring})")


def tangent_names(n: int, prefix: str = "T") -> tuple[str, ...]:
    if n == 1:
        return (prefix,)
    return tuple(f"{prefix}{i + 1}" for i in range(n))


# ---------------------------------------------------------------------------
# module-level operations


def poly_add(p, q):
    return p + q


def poly_mul(p, q, t_bound: int | None = None):
    """Product; ``t_bound`` truncates series at that T-degree (total degree for polynomials)."""
    if isinstance(p, TruncatedSeries):
        if t_bound is not None and t_bound != p.bound:
            p, q = p.truncate(t_bound), q.truncate(t_bound)
        return p * q
    return p.mul(q, t_bound)


def total_degree(p):
    return p.total_degree()


def coeff_of(p, lam, block=None) -> Polynomial:
    """Coefficient of ``T^lam`` where T is the variable ``block``.

    For a series the block defaults to its tangent variables.  For a
    polynomial pass ``block`` as variable names; the result lives in the
    remaining variables.
    """
    if isinstance(p, TruncatedSeries) and block is None:
        return p.coeff_of(lam)
    if block is None:
        raise ValueError("a variable block is required for polynomials")
    names = list(p.vars)
    idx = []
    for b in block:
        if isinstance(b, int):
            idx.append(b)
        elif b in names:
            idx.append(names.index(b))
        else:
            raise UnknownVariable(f"{b!r} not in {p.vars}")
    lam = tuple(lam)
    if len(lam) != len(idx):
        raise DimensionMismatch(f"{lam} does not match block {tuple(block)}")
    rest = [i for i in range(len(names)) if i not in idx]
    terms = {}
    for k, v in p.terms.items():
        if tuple(k[i] for i in idx) == lam:
            terms[tuple(k[i] for i in rest)] = v
    out = Polynomial.__new__(Polynomial)
    out.ring, out.vars, out.terms = p.ring, tuple(names[i] for i in rest), terms
    return out


def _value_bound(v, t_bound):
    if t_bound is None:
        return v
    if isinstance(v, TruncatedSeries):
        return v.truncate(t_bound) if v.bound != t_bound else v
    return v.truncate(t_bound)


def substitute(p, assignment, t_bound: int | None = None):
    """Image of ``p`` under the ring homomorphism sending its variables to ``assignment``.

    ``assignment`` is a mapping from variable names or a sequence aligned with
    ``p.vars``.  Values must be all polynomials or all series over one ring
    and variable set.  With ``t_bound`` the computation is truncated
    throughout: at that T-degree for series, at that total degree for
    polynomials.
    """
    if isinstance(assignment, dict):
        unknown = set(assignment) - set(p.vars)
        if unknown:
            raise UnknownVariable(f"{sorted(unknown)} not in {p.vars}")
        values = [assignment.get(name) for name in p.vars]
    else:
        values = list(assignment)
        if len(values) != len(p.vars):
            raise ArityMismatch(f"{len(values)} values for {len(p.vars)} variables")
    for k in p.terms:
        for name, e, v in zip(p.vars, k, values):
            if e and v is None:
                raise MissingAssignment(name)
    ref = next((v for v in values if v is not None), None)
    if ref is None:
        # nothing to substitute into: p has no variables in use
        raise MissingAssignment("no assignment given")
    for v in values:
        if v is None:
            continue
        if not isinstance(v, _Sparse):
            raise TypeError(f"cannot substitute {type(v).__name__}")
        if v.ring != p.ring:
            raise RingMismatch(f"{p.ring} vs {v.ring}")
        ref._check_compatible(v)
    values = [None if v is None else _value_bound(v, t_bound) for v in values]
    ref = _value_bound(ref, t_bound)

    if isinstance(ref, TruncatedSeries):
        def mul(a, b):
            return a * b
    else:
        def mul(a, b):
            return a.mul(b, t_bound)

    powers = [{1: v} if v is not None else {} for v in values]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            half = power(i, e // 2)
            sq = mul(half, half)
            cache[e] = mul(sq, values[i]) if e % 2 else sq
        return cache[e]

    prefix = {(): None}  # None stands for the multiplicative identity
    acc: dict = {}
    one = ref.one_like()
    for exp, c in p.terms.items():
        cur = None
        for j in range(len(exp)):
            key = exp[:j + 1]
            if key in prefix:
                cur = prefix[key]
                continue
            e = exp[j]
            if e:
                pw = power(j, e)
                cur = pw if cur is None else mul(cur, pw)
            prefix[key] = cur
        term = one if cur is None else cur
        get = acc.get
        for k, v in term.terms.items():
            acc[k] = get(k, 0) + c * v
    return ref._new(_finish(p.ring, acc))


class PolyMap:
    """A tuple of polynomials over common source variables."""

    __slots__ = ("ring", "vars", "components")

    def __init__(self, components, ring=None, vars=None):
        components = tuple(components)
        if not components and (ring is None or vars is None):
            raise ValueError("empty map needs ring and vars")
        if ring is None:
            ring = components[0].ring
        if vars is None:
            vars = components[0].vars
        vars = tuple(vars)
        for c in components:
            if not isinstance(c, Polynomial):
                raise TypeError("map components must be Polynomial")
            if c.ring != ring:
                raise RingMismatch(f"{c.ring} vs {ring}")
            if c.vars != vars:
                raise VariableMismatch(f"{c.vars} vs {vars}")
        self.ring = ring
        self.vars = vars
        self.components = components

    @classmethod
    def identity(cls, ring, vars):
        vars = tuple(vars)
        return cls([Polynomial.variable(ring, vars, i) for i in range(len(vars))], ring, vars)

    @classmethod
    def from_strings(cls, strings, vars, ring):
        from .text import parse_poly

        return cls([parse_poly(s, vars, ring) for s in strings], ring, vars)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return (self.ring, self.vars, self.components) == (other.ring, other.vars, other.components)

    def __hash__(self):
        return hash((self.ring, self.vars, self.components))

    @property
    def is_square(self) -> bool:
        return len(self.components) == len(self.vars)

    def degree(self):
        return max((c.total_degree() for c in self.components), default=NEG_INF)

    def change_ring(self, ring):
        return PolyMap([c.change_ring(ring) for c in self.components], ring, self.vars)

    def truncate(self, degree):
        return PolyMap([c.truncate(degree) for c in self.components], self.ring, self.vars)

    def to_strings(self):
        return [str(c) for c in self.components]

    def __str__(self):
        return "(" + ", ".join(self.to_strings()) + ")"

    def __repr__(self):
        return f"PolyMap({self.to_strings()}, vars={list(self.vars)}, ring={self.ring})"


def compose_map(F: PolyMap, G: PolyMap, degree_bound: int | None = None) -> PolyMap:
    """``result_i = F_i(G_1, ..., G_n)``: the map x -> F(G(x))."""
    if len(G.components) != len(F.vars):
        raise ArityMismatch(f"{len(G.components)} components for {len(F.vars)} variables")
    if F.ring != G.ring:
        raise RingMismatch(f"{F.ring} vs {G.ring}")
    out = []
    for f in F.components:
        if f.is_zero() or f.is_constant():
            out.append(Polynomial(G.ring, G.vars, {mi.zero(len(G.vars)): f.constant_coeff().raw}))
        else:
            out.append(substitute(f, G.components, degree_bound))
    return PolyMap(out, G.ring, G.vars)

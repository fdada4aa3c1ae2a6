"""Coefficient rings: the rationals, prime fields F_p and residue rings Z/m.

Polynomials store *raw* coefficient values for speed: ``int`` or
``Fraction`` over Q (integral values are kept as ``int``), and the canonical
residue in ``[0, m)`` over a modular ring.  :class:`RingElement` is the
public, self-describing wrapper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import NonInvertibleDenominator, NotAUnit, RingMismatch

RATIONALS = "Q"
PRIME_FIELD = "Fp"
RESIDUE = "Zmod"


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power(m: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``m == p**e`` or None."""
    if m < 2:
        return None
    for p in range(2, math.isqrt(m) + 1):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            return (p, e) if m == 1 else None
    return (m, 1)


@dataclass(frozen=True)
class RingSpec:
    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.modulus != 0:
                raise ValueError("the rationals take no modulus")
        elif self.kind == PRIME_FIELD:
            if not is_prime(self.modulus):
                raise ValueError(f"{self.modulus} is not prime")
        elif self.kind == RESIDUE:
            if self.modulus < 2:
                raise ValueError("residue ring needs m >= 2")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    # construction -------------------------------------------------------

    @classmethod
    def rationals(cls) -> RingSpec:
        return cls(RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> RingSpec:
        return cls(PRIME_FIELD, p)

    @classmethod
    def residue(cls, m: int) -> RingSpec:
        return cls(RESIDUE, m)

    @classmethod
    def from_json(cls, doc: dict) -> RingSpec:
        kind = doc.get("type")
        if kind == RATIONALS:
            return cls.rationals()
        if kind == PRIME_FIELD:
            return cls.prime_field(int(doc["p"]))
        if kind == RESIDUE:
            return cls.residue(int(doc["m"]))
        raise ValueError(f"unknown ring type {kind!r}")

    def to_json(self) -> dict:
        if self.kind == RATIONALS:
            return {"type": "Q"}
        if self.kind == PRIME_FIELD:
            return {"type": "Fp", "p": self.modulus}
        return {"type": "Zmod", "m": self.modulus}

    # properties ---------------------------------------------------------

    @property
    def is_modular(self) -> bool:
        return self.kind != RATIONALS

    @property
    def is_field(self) -> bool:
        return self.kind != RESIDUE or is_prime(self.modulus)

    @property
    def characteristic(self):
        """0 for Q, ``(p, e)`` for m = p^e, ``"composite(m)"`` otherwise."""
        if self.kind == RATIONALS:
            return 0
        pe = prime_power(self.modulus)
        if pe is None:
            return f"composite({self.modulus})"
        return pe

    def __str__(self):
        if self.kind == RATIONALS:
            return "QQ"
        if self.kind == PRIME_FIELD:
            return f"GF({self.modulus})"
        return f"Z/{self.modulus}"

    # raw-value arithmetic ---------------------------------------------

    def reduce(self, v):
        """Canonical raw form of an int/Fraction that is already known to be valid."""
        if self.modulus:
            if type(v) is int:
                return v % self.modulus
            return self.canon(v)
        if type(v) is Fraction and v.denominator == 1:
            return v.numerator
        return v

    def canon(self, v):
        """Canonical raw image of an integer or exact rational."""
        if isinstance(v, RingElement):
            return self.coerce(v.value, v.ring)
        if isinstance(v, bool) or not isinstance(v, (int, Rational)):
            raise TypeError(f"cannot map {type(v).__name__} into {self}")
        if isinstance(v, int):
            return v % self.modulus if self.modulus else v
        num, den = v.numerator, v.denominator
        if not self.modulus:
            return num if den == 1 else Fraction(num, den)
        m = self.modulus
        if math.gcd(den, m) != 1:
            raise NonInvertibleDenominator(f"denominator {den} is not invertible in {self}")
        return num * pow(den, -1, m) % m

    def coerce(self, v, source: RingSpec):
        """Image of a raw value of ``source`` under the canonical map into this ring."""
        if source == self:
            return v
        if not source.modulus:
            return self.canon(v)
        if self.modulus and source.modulus % self.modulus == 0:
            return v % self.modulus
        raise RingMismatch(f"no canonical homomorphism {source} -> {self}")

    def inverse(self, v):
        if self.modulus:
            if math.gcd(v, self.modulus) != 1:
                raise NotAUnit(f"{v} is not a unit in {self}")
            return pow(v, -1, self.modulus)
        if v == 0:
            raise NotAUnit("0 is not a unit in QQ")
        return self.reduce(1 / Fraction(v))

    def is_unit(self, v) -> bool:
        if self.modulus:
            return math.gcd(v, self.modulus) == 1
        return v != 0

    def element(self, v) -> RingElement:
        return RingElement(self, self.canon(v))

    def format(self, v) -> str:
        return str(v)


QQ = RingSpec.rationals()


def GF(p: int) -> RingSpec:
    return RingSpec.prime_field(p)


def Zmod(m: int) -> RingSpec:
    return RingSpec.residue(m)


@dataclass(frozen=True, eq=False)
class RingElement:
    """An element of a coefficient ring; ``value`` is canonical for ``ring``."""

    ring: RingSpec
    value: object

    def __post_init__(self):
        if self.ring.modulus:
            if not (type(self.value) is int and 0 <= self.value < self.ring.modulus):
                raise ValueError(f"{self.value!r} is not a canonical residue of {self.ring}")
        else:
            object.__setattr__(self, "value", Fraction(self.value))

    @property
    def raw(self):
        return self.ring.reduce(self.value)

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other.raw
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.ring.canon(other)
        return NotImplemented

    def _wrap(self, v):
        return RingElement(self.ring, self.ring.reduce(v))

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.raw + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.raw - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(o - self.raw)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.raw * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.raw)

    def __pow__(self, k: int):
        if k < 0:
            return invert_unit(self) ** (-k)
        if self.ring.modulus:
            return RingElement(self.ring, pow(self.value, k, self.ring.modulus))
        return self._wrap(self.raw ** k)

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        try:
            o = self._other(other)
        except (NonInvertibleDenominator, TypeError):
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.raw == o

    def __hash__(self):
        return hash((self.ring, self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.raw)

    def __repr__(self):
        return f"RingElement({self.ring}, {self.value})"

    def __str__(self):
        return str(self.value)


def canon(n, ring: RingSpec) -> RingElement:
    """Canonical image of an integer or exact rational in ``ring``."""
    return RingElement(ring, ring.canon(n))


def invert_unit(a: RingElement) -> RingElement:
    return RingElement(a.ring, a.ring.inverse(a.raw))


def binom_int(a: int, b: int) -> int:
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def binom_multi_int(alpha, beta) -> int:
    """Product of componentwise binomials as an exact integer."""
    if len(alpha) != len(beta):
        raise ValueError("multi-indices of different dimension")
    out = 1
    for a, b in zip(alpha, beta):
        if b > a:
            return 0
        out *= math.comb(a, b)
    return out


def binom_multi(alpha, beta, ring: RingSpec) -> RingElement:
    return canon(binom_multi_int(alpha, beta), ring)

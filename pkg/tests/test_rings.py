import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polyhasse import GF, QQ, RingElement, RingSpec, Zmod, binom_multi, canon, invert_unit
from polyhasse.errors import NonInvertibleDenominator, NotAUnit, RingMismatch
from polyhasse.rings import binom_multi_int, is_prime, prime_power

from _gen import RINGS


def test_canon_examples():
    assert canon(7, Zmod(4)) == 3
    assert canon(Fraction(1, 3), GF(5)).value == 2
    z = canon(0, QQ)
    assert z.value == 0 and Fraction(z.value).denominator == 1


def test_canon_rejects_bad_denominator():
    with pytest.raises(NonInvertibleDenominator):
        canon(Fraction(1, 2), Zmod(4))
    with pytest.raises(NonInvertibleDenominator):
        canon(Fraction(1, 5), GF(5))


def test_rationals_stored_reduced():
    v = canon(Fraction(6, -4), QQ).value
    assert v == Fraction(-3, 2) and v.denominator > 0


def test_invert_unit_examples():
    assert invert_unit(canon(3, Zmod(4))) == 3
    with pytest.raises(NotAUnit):
        invert_unit(canon(2, Zmod(4)))
    assert invert_unit(canon(Fraction(2, 5), QQ)) == Fraction(5, 2)
    with pytest.raises(NotAUnit):
        invert_unit(canon(0, GF(7)))


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_canon_is_ring_homomorphism(ring):
    rng = random.Random(11)
    for _ in range(200):
        a, b = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        assert canon(a, ring) * canon(b, ring) == canon(a * b, ring)
        assert canon(a, ring) + canon(b, ring) == canon(a + b, ring)
        assert canon(a, ring) - canon(b, ring) == canon(a - b, ring)


@pytest.mark.parametrize("m", [2, 3, 4, 6, 9, 12, 25])
def test_units_exactly_coprime(m):
    ring = Zmod(m)
    for v in range(m):
        a = canon(v, ring)
        if math.gcd(v, m) == 1:
            assert invert_unit(a) * a == 1
        else:
            with pytest.raises(NotAUnit):
                invert_unit(a)


def test_binom_multi_examples():
    assert binom_multi((4, 2), (2, 1), QQ) == 12
    assert binom_multi((4, 2), (2, 1), GF(5)) == 2
    assert binom_multi((3, 0), (4, 0), QQ) == 0


def _lucas(a, b, p):
    out = 1
    while a or b:
        out = out * math.comb(a % p, b % p) % p
        a, b = a // p, b // p
    return out


@pytest.mark.parametrize("p", [2, 3, 5])
def test_binom_multi_matches_lucas(p):
    rng = random.Random(p)
    for _ in range(200):
        n = rng.randint(1, 3)
        alpha = tuple(rng.randrange(10**4) for _ in range(n))
        beta = tuple(rng.randint(0, a) for a in alpha)
        expected = 1
        for a, b in zip(alpha, beta):
            expected = expected * _lucas(a, b, p) % p
        assert binom_multi(alpha, beta, GF(p)) == expected


def test_binom_multi_int_exact():
    assert binom_multi_int((60, 3), (30, 1)) == math.comb(60, 30) * 3


def test_ring_spec_validation_and_json():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        Zmod(1)
    for ring in RINGS + [Zmod(12)]:
        assert RingSpec.from_json(ring.to_json()) == ring
    assert QQ.to_json() == {"type": "Q"}
    assert GF(7).to_json() == {"type": "Fp", "p": 7}
    assert Zmod(4).to_json() == {"type": "Zmod", "m": 4}


def test_characteristic():
    assert QQ.characteristic == 0
    assert Zmod(8).characteristic == (2, 3)
    assert GF(5).characteristic == (5, 1)
    assert Zmod(12).characteristic == "composite(12)"
    assert prime_power(12) is None


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
    assert not is_prime(1) and is_prime(2)


def test_coerce_reduction():
    a = canon(3, Zmod(4))
    assert GF(2).canon(a) == 1
    with pytest.raises(RingMismatch):
        GF(3).canon(a)


def test_element_arithmetic():
    a = RingElement(GF(7), 3)
    assert a ** -1 == 5
    assert (a * 5).value == 1
    assert -a == 4
    assert not RingElement(GF(7), 0)


@given(st.integers(-10**9, 10**9), st.integers(1, 10**6))
def test_rational_canon_mod_p(num, den):
    ring = GF(10007)
    if den % 10007 == 0:
        return
    x = canon(Fraction(num, den), ring)
    assert x * den == num

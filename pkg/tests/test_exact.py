import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvlab.exact import (
    BigFloat,
    GaussianRat,
    LaurentT,
    bernoulli,
    double_factorial,
    laurent_dt,
    pochhammer,
    rat_to_bigfloat,
)

rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=64
)

exponents = st.integers(min_value=-30, max_value=30)


@st.composite
def laurents(draw):
    pairs = draw(st.dictionaries(exponents, rationals, max_size=6))
    return LaurentT({e: c for e, c in pairs.items() if c != 0})


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_recurrence():
    for m in range(1, 41):
        total = sum(math.comb(m + 1, k) * bernoulli(k) for k in range(m + 1))
        assert total == 0, f"recurrence fails at m={m}"


def test_double_factorial():
    assert double_factorial(-3) == -1
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(7) == 105
    assert double_factorial(8) == 384
    with pytest.raises(ValueError):
        double_factorial(-5)


def test_pochhammer():
    assert pochhammer(Fraction(3), 0) == 1
    assert pochhammer(Fraction(1, 2), 3) == Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2)
    assert pochhammer(Fraction(-2), 4) == 0


@given(laurents(), laurents(), laurents())
@settings(max_examples=60)
def test_laurent_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    zero = LaurentT.zero()
    one = LaurentT.monomial(0)
    assert p + zero == p
    assert p * one == p
    assert p - p == zero


@given(laurents(), laurents())
@settings(max_examples=60)
def test_laurent_leibniz(p, q):
    assert laurent_dt(p * q) == laurent_dt(p) * q + p * laurent_dt(q)


def test_laurent_dt_monomial():
    # d/dx of T^e is -e T^(e-2)
    p = LaurentT.monomial(5, Fraction(3))
    assert laurent_dt(p) == LaurentT.monomial(3, Fraction(-15))
    assert laurent_dt(LaurentT.monomial(0)) == LaurentT.zero()


def test_laurent_immutable():
    p = LaurentT.monomial(1)
    with pytest.raises(AttributeError):
        p._c = {}


gaussians = st.builds(GaussianRat, rationals, rationals)


@given(gaussians, gaussians)
@settings(max_examples=60)
def test_gaussian_conjugation(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    prod = a * a.conjugate()
    assert prod.im == 0 and prod.re >= 0


def test_gaussian_arithmetic():
    i = GaussianRat(Fraction(0), Fraction(1))
    assert i * i == GaussianRat.from_rational(Fraction(-1))
    assert (i - i).is_zero()


@given(st.fractions(max_denominator=10**9).filter(lambda q: q != 0))
@settings(max_examples=60)
def test_bigfloat_round_trip(q):
    bf = rat_to_bigfloat(q, 256)
    assert isinstance(bf, BigFloat)
    assert bf.precision_bits == 256
    with mp.workprec(400):
        exact = mp.mpf(q.numerator) / q.denominator
        rel = abs(bf.value - exact) / abs(exact)
        assert rel < mp.mpf(2) ** -250


def test_bigfloat_rejects_low_precision():
    with pytest.raises(ValueError):
        rat_to_bigfloat(Fraction(1, 3), 32)

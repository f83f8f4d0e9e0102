"""Exact arithmetic building blocks.

Rationals are ``fractions.Fraction`` throughout (lowest terms, exact).
This module adds the pieces the rest of the package leans on: Bernoulli
numbers, double factorials, the Pochhammer symbol, Gaussian rationals,
Laurent polynomials in the variable T together with the derivation
D_T = d/dx acting as D_T(T^e) = -e*T^(e-2), and genus blocks that pair a
Laurent part with a log(1/T) coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from mpmath import mpf, workprec

__all__ = [
    "bernoulli",
    "double_factorial",
    "pochhammer",
    "GaussianRat",
    "LaurentT",
    "laurent_dt",
    "GenusBlock",
    "BigFloat",
    "rat_to_bigfloat",
]

Rat = Fraction

_bernoulli_cache: dict[int, Fraction] = {0: Fraction(1)}


def bernoulli(m: int) -> Fraction:
    """Return the Bernoulli number B_m, in the convention B_1 = -1/2.

    Uses the defining recurrence sum(C(m+1, k) * B_k for k in 0..m) = 0
    and memoizes every value computed along the way.
    """
    if m < 0:
        raise ValueError("bernoulli index must be nonnegative")
    if m not in _bernoulli_cache:
        for k in range(1, m + 1):
            if k in _bernoulli_cache:
                continue
            acc = sum(comb(k + 1, j) * _bernoulli_cache[j] for j in range(k))
            _bernoulli_cache[k] = Fraction(-acc, k + 1)
    return _bernoulli_cache[m]


def double_factorial(m: int) -> int:
    """Return m!! for integer m >= -3, with (-1)!! = 1 and (-3)!! = -1."""
    if m < -3:
        raise ValueError("double factorial defined here only for m >= -3")
    if m == -3:
        return -1
    if m in (-2, -1, 0):
        return 1
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def pochhammer(a: Fraction | int, n: int) -> Fraction:
    """Rising product a*(a+1)*...*(a+n-1); equals 1 when n = 0."""
    if n < 0:
        raise ValueError("pochhammer length must be nonnegative")
    a = Fraction(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


@dataclass(frozen=True)
class GaussianRat:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def from_rational(q: Fraction | int) -> "GaussianRat":
        return GaussianRat(Fraction(q), Fraction(0))

    def __add__(self, other: "GaussianRat") -> "GaussianRat":
        return GaussianRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRat") -> "GaussianRat":
        return GaussianRat(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRat":
        return GaussianRat(-self.re, -self.im)

    def __mul__(self, other: "GaussianRat") -> "GaussianRat":
        return GaussianRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scale(self, q: Fraction | int) -> "GaussianRat":
        q = Fraction(q)
        return GaussianRat(self.re * q, self.im * q)

    def conjugate(self) -> "GaussianRat":
        return GaussianRat(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self) -> str:
        return f"({self.re})+({self.im})i"


class LaurentT:
    """Finite Laurent polynomial in T with exact rational coefficients.

    Immutable. Zero coefficients are never stored.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Fraction | int] | None = None):
        clean: dict[int, Fraction] = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Fraction(c)
                if c != 0:
                    clean[int(e)] = c
        object.__setattr__(self, "_c", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentT is immutable")

    @staticmethod
    def monomial(e: int, c: Fraction | int = 1) -> "LaurentT":
        return LaurentT({e: Fraction(c)})

    @staticmethod
    def zero() -> "LaurentT":
        return LaurentT()

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def items(self) -> Iterable[tuple[int, Fraction]]:
        return self._c.items()

    def support(self) -> list[int]:
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentT) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "LaurentT") -> "LaurentT":
        out = dict(self._c)
        for e, c in other._c.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentT.__new__(LaurentT)
        object.__setattr__(res, "_c", out)
        return res

    def __sub__(self, other: "LaurentT") -> "LaurentT":
        return self + (-other)

    def __neg__(self) -> "LaurentT":
        return self.scale(-1)

    def __mul__(self, other: "LaurentT") -> "LaurentT":
        out: dict[int, Fraction] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = LaurentT.__new__(LaurentT)
        object.__setattr__(res, "_c", out)
        return res

    def scale(self, q: Fraction | int) -> "LaurentT":
        q = Fraction(q)
        if q == 0:
            return LaurentT.zero()
        res = LaurentT.__new__(LaurentT)
        object.__setattr__(res, "_c", {e: c * q for e, c in self._c.items()})
        return res

    def eval_at_one(self) -> Fraction:
        """Value at T = 1, i.e. at x = 0."""
        return sum(self._c.values(), Fraction(0))

    def times_x(self) -> "LaurentT":
        """Multiply by x = (1 - T^2)/2."""
        return (self - self * LaurentT.monomial(2)).scale(Fraction(1, 2))

    def __repr__(self) -> str:
        if not self._c:
            return "LaurentT(0)"
        parts = [f"({c})*T^{e}" for e, c in sorted(self._c.items())]
        return "LaurentT(" + " + ".join(parts) + ")"


def laurent_dt(p: LaurentT, k: int = 1) -> LaurentT:
    """Apply the derivation D_T = d/dx k times: D_T(T^e) = -e*T^(e-2)."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    cur = {e: c for e, c in p.items()}
    for _ in range(k):
        nxt: dict[int, Fraction] = {}
        for e, c in cur.items():
            if e == 0:
                continue
            nxt[e - 2] = nxt.get(e - 2, Fraction(0)) - e * c
        cur = {e: c for e, c in nxt.items() if c != 0}
    return LaurentT(cur)


@dataclass(frozen=True)
class GenusBlock:
    """A Laurent polynomial in T plus an optional log(1/T) multiple.

    Only the genus-1 block carries a nonzero log coefficient.
    """

    log_coeff: Fraction
    laurent: LaurentT

    def ddx(self) -> "GenusBlock":
        # d/dx log(1/T) = 1/T^2, so the log part feeds the Laurent part.
        lau = laurent_dt(self.laurent)
        if self.log_coeff:
            lau = lau + LaurentT.monomial(-2, self.log_coeff)
        return GenusBlock(Fraction(0), lau)

    def ddx_n(self, k: int) -> "GenusBlock":
        out = self
        for _ in range(k):
            out = out.ddx()
        return out

    def __add__(self, other: "GenusBlock") -> "GenusBlock":
        return GenusBlock(self.log_coeff + other.log_coeff, self.laurent + other.laurent)

    def is_zero(self) -> bool:
        return self.log_coeff == 0 and self.laurent.is_zero()


@dataclass(frozen=True)
class BigFloat:
    """An mpmath float tagged with the precision it was produced at."""

    value: object
    precision_bits: int


def rat_to_bigfloat(q: Fraction, bits: int = 320) -> BigFloat:
    """Round an exact rational to a float at an explicit precision."""
    if bits < 64:
        raise ValueError("precision below 64 bits is rejected")
    with workprec(bits):
        v = mpf(q.numerator) / mpf(q.denominator)
    return BigFloat(v, bits)
